#include "sumsq/tuned.hpp"

#include <algorithm>

namespace sumsq {

DiscreteDistribution empirical_distribution(
    int bin_size, const std::vector<std::int64_t>& counts_by_size,
    std::int64_t total) {
    if (total < 1) throw EmptyHistory("no items observed yet");
    std::vector<int> sizes;
    std::vector<Rational> probs;
    for (std::size_t s = 1; s < counts_by_size.size(); ++s) {
        if (counts_by_size[s] > 0) {
            sizes.push_back(static_cast<int>(s));
            probs.push_back(ratio(counts_by_size[s], total));
        }
    }
    return DiscreteDistribution(bin_size, std::move(sizes), std::move(probs),
                                "empirical");
}

// ---- SS_F -------------------------------------------------------------------

SsfPacker::SsfPacker(int bin_size, Rational c, CounterRng rng)
    : OnlinePacker("ssf"),
      c_(std::move(c)),
      imaginary_threshold_(CounterRng::threshold(c_ / (1 + c_))),
      rng_(rng),
      buckets_(bin_size, 1) {
    if (c_ < 0) throw std::invalid_argument("c(F) must be >= 0");
    Profile empty(bin_size);
    buckets_.rebuild(empty);
}

void SsfPacker::place_imaginary_unit(Packing& p) {
    int h = buckets_.choose();
    if (h < 0) h = 0;
    p.place_imaginary(h, 1);
    buckets_.apply_placement(p.profile(), h, 1);
}

void SsfPacker::pack(Packing& p, int s) {
    while (rng_.next() < imaginary_threshold_) place_imaginary_unit(p);
    int h = ss_choose(p.profile(), s);
    p.place(h, s);
    buckets_.apply_placement(p.profile(), h, s);
}

// ---- SS** -------------------------------------------------------------------

namespace {

DiscreteDistribution combine_with_gaps(const DiscreteDistribution& dist,
                                       const GapRates& gaps) {
    // Real sizes weighted 1/(1+T), gap sizes delta(B-s)/(1+T).
    int b = dist.bin_size();
    Rational scale = 1 + gaps.total;
    std::vector<Rational> mass(static_cast<std::size_t>(b) + 1, 0);
    for (int j = 0; j < dist.num_sizes(); ++j) {
        mass[static_cast<std::size_t>(dist.size_at(j))] += dist.prob_at(j) / scale;
    }
    for (int h = 1; h < b; ++h) {
        const Rational& d = gaps.delta[static_cast<std::size_t>(h)];
        if (d > 0) mass[static_cast<std::size_t>(b - h)] += d / scale;
    }
    std::vector<int> sizes;
    std::vector<Rational> probs;
    for (int s = 1; s <= b; ++s) {
        if (mass[static_cast<std::size_t>(s)] > 0) {
            sizes.push_back(s);
            probs.push_back(mass[static_cast<std::size_t>(s)]);
        }
    }
    return DiscreteDistribution(b, std::move(sizes), std::move(probs),
                                dist.label() + "+gaps");
}

}  // namespace

SsDoubleStarPacker::SsDoubleStarPacker(const DiscreteDistribution& dist,
                                       const GapRates& gaps, CounterRng rng)
    : OnlinePacker("ss2star"),
      total_(gaps.total),
      imaginary_threshold_(CounterRng::threshold(total_ / (1 + total_))),
      rng_(rng),
      combined_(combine_with_gaps(dist, gaps)) {
    if (total_ > 0) {
        int b = dist.bin_size();
        std::vector<int> sizes;
        std::vector<Rational> probs;
        for (int h = 1; h < b; ++h) {
            const Rational& d = gaps.delta[static_cast<std::size_t>(h)];
            if (d > 0) {
                sizes.push_back(b - h);
                probs.push_back(d / total_);
            }
        }
        std::sort(sizes.begin(), sizes.end());
        // deltas were collected by level h; probabilities follow size order
        std::vector<Rational> ordered(sizes.size());
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            ordered[i] = gaps.delta[static_cast<std::size_t>(b - sizes[i])] / total_;
        }
        imaginary_.emplace(DiscreteDistribution(b, sizes, ordered, "gap-items"));
    }
}

void SsDoubleStarPacker::pack(Packing& p, int s) {
    if (imaginary_) {
        while (rng_.next() < imaginary_threshold_) {
            int size = imaginary_->draw(rng_);
            int h = ss_choose(p.profile(), size);
            p.place_imaginary(h, size);
        }
    }
    p.place(ss_choose(p.profile(), s), s);
}

// ---- SS* --------------------------------------------------------------------

SsStarPacker::SsStarPacker(int bin_size, CounterRng rng)
    : OnlinePacker("ssstar"),
      bin_size_(bin_size),
      rng_(rng),
      counts_(static_cast<std::size_t>(bin_size) + 1, 0),
      seen_mask_(static_cast<std::size_t>(bin_size) + 1, 0),
      forbidden_(static_cast<std::size_t>(bin_size) + 1, 0),
      buckets_(bin_size, 1) {
    Profile empty(bin_size);
    buckets_.rebuild(empty);
}

void SsStarPacker::start_phase(Packing& p, int index, bool sizes_changed) {
    DiscreteDistribution empirical =
        empirical_distribution(bin_size_, counts_, total_seen_);
    Rational c = solve_waste_lp(empirical).objective;
    ++stats_.lp_solves;
    Rational new_rate = c / (1 + c);
    if (sizes_changed || new_rate != rate_) {
        p.close_all_open();
        ++stats_.closures;
        buckets_.set_forbidden(forbidden_);
        buckets_.rebuild(p.profile());
    }
    rate_ = new_rate;
    rate_threshold_ = CounterRng::threshold(rate_);
    budget_ = index == 0 ? 10LL * bin_size_ : 30LL * bin_size_ * (1LL << (2 * (index - 1)));
    packed_in_phase_ = 0;
    stats_.phase_index = index;
    stats_.phase_budget = budget_;
    stats_.rate = rate_;
    started_ = true;
}

void SsStarPacker::place_imaginary_unit(Packing& p) {
    int h = buckets_.choose();
    if (h < 0) h = 0;  // every move forbidden: start a new bin regardless
    p.place_imaginary(h, 1);
    buckets_.apply_placement(p.profile(), h, 1);
}

void SsStarPacker::pack(Packing& p, int s) {
    counts_[static_cast<std::size_t>(s)] += 1;
    ++total_seen_;
    if (!seen_mask_[static_cast<std::size_t>(s)]) {
        seen_mask_[static_cast<std::size_t>(s)] = 1;
        seen_.push_back(s);
        forbidden_ = level_mask(bin_size_, dead_end_levels(bin_size_, seen_));
        start_phase(p, 0, /*sizes_changed=*/true);
    } else if (packed_in_phase_ == budget_) {
        start_phase(p, stats_.phase_index + 1, /*sizes_changed=*/false);
    }
    while (rng_.next() < rate_threshold_) place_imaginary_unit(p);
    int h = ssd_choose(p.profile(), s, forbidden_);
    p.place(h, s);
    buckets_.apply_placement(p.profile(), h, s);
    ++packed_in_phase_;
    stats_.packed_in_phase = packed_in_phase_;
}

}  // namespace sumsq
