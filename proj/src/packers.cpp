#include "sumsq/packers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumsq {

namespace {

// Shared scan: visit occupied levels from B-s down to 1, then level 0, keep
// the first strict improvement so ties resolve to the highest level.
template <typename Score>
int argmin_scan(const Profile& profile, int s, Score&& score,
                const std::vector<char>* forbidden) {
    int b = profile.bin_size();
    bool have = false;
    int best_level = 0;
    auto best = decltype(score(0)){};
    auto consider = [&](int h) {
        int target = h + s;
        if (forbidden && target < b && (*forbidden)[static_cast<std::size_t>(target)]) return;
        auto value = score(h);
        if (!have || value < best) {
            have = true;
            best = value;
            best_level = h;
        }
    };
    for (int h = b - s; h >= 1; --h) {
        if (profile.count(h) > 0) consider(h);
    }
    consider(0);
    return have ? best_level : 0;
}

}  // namespace

int ss_choose(const Profile& profile, int s) {
    return argmin_scan(
        profile, s,
        [&](int h) { return placement_delta(profile, h, s).delta_ss; }, nullptr);
}

int ssd_choose(const Profile& profile, int s, const std::vector<char>& forbidden) {
    return argmin_scan(
        profile, s,
        [&](int h) { return placement_delta(profile, h, s).delta_ss; }, &forbidden);
}

int srs_choose_int(const Profile& profile, int s, int r) {
    if (r < 2) throw std::invalid_argument("integer exponent must be >= 2");
    auto powr = [&](std::int64_t x) {
        Integer v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(x),
                      static_cast<unsigned long>(r));
        return v;
    };
    int b = profile.bin_size();
    auto score = [&](int h) -> Integer {
        if (h == 0 && s == b) return Integer(0);
        Integer change = 0;
        if (h > 0) {
            std::int64_t c = profile.count(h);
            change += powr(c - 1) - powr(c);
        }
        if (h + s < b) {
            std::int64_t c = profile.count(h + s);
            change += powr(c + 1) - powr(c);
        }
        return change;
    };
    return argmin_scan(profile, s, score, nullptr);
}

int srs_choose_real(const Profile& profile, int s, long double r) {
    if (!(r > 1)) throw std::invalid_argument("exponent must be > 1");
    int b = profile.bin_size();
    auto powr = [&](std::int64_t x) {
        return x <= 0 ? 0.0L : powl(static_cast<long double>(x), r);
    };
    bool have = false;
    long double best = 0;
    int best_level = 0;
    auto consider = [&](int h) {
        long double change = 0;
        if (!(h == 0 && s == b)) {
            if (h > 0) {
                std::int64_t c = profile.count(h);
                change += powr(c - 1) - powr(c);
            }
            if (h + s < b) {
                std::int64_t c = profile.count(h + s);
                change += powr(c + 1) - powr(c);
            }
        }
        long double margin =
            1e-12L * std::max({1.0L, fabsl(change), fabsl(best)});
        if (!have || change < best - margin) {
            have = true;
            best = change;
            best_level = h;
        }
    };
    for (int h = b - s; h >= 1; --h) {
        if (profile.count(h) > 0) consider(h);
    }
    consider(0);
    return best_level;
}

int sinfty_choose(const Profile& profile, int s) {
    int b = profile.bin_size();
    // First rule: occupied h with N(h) > N(h+s), maximize N(h).
    std::int64_t best_count = 0;
    int best_level = -1;
    for (int h = b - s; h >= 1; --h) {
        std::int64_t c = profile.count(h);
        if (c > 0 && c > profile.count(h + s) && c > best_count) {
            best_count = c;
            best_level = h;
        }
    }
    if (best_level >= 0) return best_level;
    // Second rule: any legal h, minimize the resulting level's count.
    bool have = false;
    std::int64_t best = 0;
    for (int h = b - s; h >= 1; --h) {
        if (profile.count(h) == 0) continue;
        std::int64_t c = profile.count(h + s);
        if (!have || c < best) {
            have = true;
            best = c;
            best_level = h;
        }
    }
    std::int64_t c0 = profile.count(s);
    if (!have || c0 < best) best_level = 0;
    return best_level;
}

int sminh_choose(const Profile& profile, int s) {
    int b = profile.bin_size();
    bool have = false;
    std::int64_t best = 0;
    int best_level = 0;
    for (int h = b - s; h >= 1; --h) {
        if (profile.count(h) == 0) continue;
        std::int64_t c = profile.count(h + s);
        if (!have || c < best) {
            have = true;
            best = c;
            best_level = h;
        }
    }
    if (!have || profile.count(s) < best) best_level = 0;
    return best_level;
}

int smaxh_choose(const Profile& profile, int s) {
    int b = profile.bin_size();
    std::int64_t best = 0;  // empty-bin count is 0
    int best_level = 0;
    for (int h = b - s; h >= 1; --h) {
        std::int64_t c = profile.count(h);
        if (c > best) {
            best = c;
            best_level = h;
        }
    }
    return best_level;
}

int perfect_ss_choose(const Profile& profile, int s) {
    int h = profile.bin_size() - s;
    if (h >= 1 && profile.count(h) > 0) return h;
    return ss_choose(profile, s);
}

LevelWeight LevelWeight::make(const std::string& id, int bin_size) {
    LevelWeight lw;
    lw.id = id;
    lw.w.assign(static_cast<std::size_t>(bin_size), Rational(1));
    for (int h = 1; h < bin_size; ++h) {
        Rational& wh = lw.w[static_cast<std::size_t>(h)];
        if (id == "unit") {
            wh = 1;
        } else if (id == "gap") {
            wh = bin_size - h;
        } else if (id == "gap2") {
            wh = Rational(bin_size - h) * (bin_size - h);
        } else if (id == "invh") {
            wh = Rational(1, h);
        } else {
            throw std::invalid_argument("unknown weight id: " + id);
        }
    }
    return lw;
}

int weighted_ss_choose(const Profile& profile, int s, const LevelWeight& weight) {
    int b = profile.bin_size();
    auto score = [&](int h) -> Rational {
        if (h == 0 && s == b) return Rational(0);
        Rational change = 0;
        if (h > 0) {
            std::int64_t c = profile.count(h);
            change += weight.at(h) * (1 - 2 * c);
        }
        if (h + s < b) {
            std::int64_t c = profile.count(h + s);
            change += weight.at(h + s) * (2 * c + 1);
        }
        return change;
    };
    return argmin_scan(profile, s, score, nullptr);
}

int best_fit_choose(const Profile& profile, int s) {
    for (int h = profile.bin_size() - s; h >= 1; --h) {
        if (profile.count(h) > 0) return h;
    }
    return 0;
}

int first_fit_choose(const std::vector<int>& bin_levels, int s, int bin_size) {
    for (std::size_t i = 0; i < bin_levels.size(); ++i) {
        if (bin_levels[i] + s <= bin_size) return static_cast<int>(i);
    }
    return -1;
}

std::vector<char> level_mask(int bin_size, const std::vector<int>& levels) {
    std::vector<char> mask(static_cast<std::size_t>(bin_size) + 1, 0);
    for (int h : levels) {
        if (h >= 0 && h <= bin_size) mask[static_cast<std::size_t>(h)] = 1;
    }
    return mask;
}

// ---- SS' ----------------------------------------------------------------

SsPrimePacker::SsPrimePacker(int bin_size)
    : OnlinePacker("ss_prime"),
      bin_size_(bin_size),
      seen_mask_(static_cast<std::size_t>(bin_size) + 1, 0),
      forbidden_(static_cast<std::size_t>(bin_size) + 1, 0) {}

void SsPrimePacker::pack(Packing& p, int s) {
    if (!seen_mask_[static_cast<std::size_t>(s)]) {
        seen_mask_[static_cast<std::size_t>(s)] = 1;
        seen_.push_back(s);
        forbidden_ = level_mask(bin_size_, dead_end_levels(bin_size_, seen_));
    }
    p.place(ssd_choose(p.profile(), s, forbidden_), s);
}

int SsPrimePacker::preview(const Packing& p, int s) const {
    if (!seen_mask_[static_cast<std::size_t>(s)]) {
        std::vector<int> u = seen_;
        u.push_back(s);
        auto mask = level_mask(bin_size_, dead_end_levels(bin_size_, u));
        return ssd_choose(p.profile(), s, mask);
    }
    return ssd_choose(p.profile(), s, forbidden_);
}

// ---- SrS ------------------------------------------------------------------

SrsPacker::SrsPacker(int int_r)
    : OnlinePacker("srs:" + std::to_string(int_r)), integral_(true), int_r_(int_r) {}

SrsPacker::SrsPacker(long double real_r)
    : OnlinePacker("srs:" + std::to_string(static_cast<double>(real_r))),
      integral_(false),
      real_r_(real_r) {}

// ---- First Fit -------------------------------------------------------------

void FirstFitPacker::pack(Packing& p, int s) {
    int b = p.bin_size();
    int index = first_fit_choose(levels_, s, b);
    if (index < 0) {
        p.place(0, s);
        levels_.push_back(s);
    } else {
        p.place(levels_[static_cast<std::size_t>(index)], s);
        levels_[static_cast<std::size_t>(index)] += s;
    }
}

int FirstFitPacker::preview(const Packing& p, int s) const {
    int index = first_fit_choose(levels_, s, p.bin_size());
    return index < 0 ? 0 : levels_[static_cast<std::size_t>(index)];
}

// ---- ApproxSS ---------------------------------------------------------------

ApproxSsPacker::ApproxSsPacker(int bin_size, int t, int num_sizes)
    : OnlinePacker("approx_ss:" + std::to_string(t)),
      bin_size_(bin_size),
      t_(t),
      configured_sizes_(num_sizes),
      ticks_(static_cast<std::size_t>(bin_size) + 1, 1),
      index_of_size_(static_cast<std::size_t>(bin_size) + 1, 0) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (num_sizes < 1) throw std::invalid_argument("size budget must be >= 1");
}

std::int64_t ApproxSsPacker::local_rank(const SizeState& st, int h) const {
    int s = st.size;
    if (h == 0 && s == bin_size_) return 0;
    auto local = [&](int level) -> std::int64_t {
        if (level <= 0 || level >= bin_size_) return 0;
        return st.local[static_cast<std::size_t>(level)];
    };
    std::int64_t d = local(h + s) - local(h);
    return (h == 0 || h == bin_size_ - s) ? 2 * d + 1 : 2 * d + 2;
}

void ApproxSsPacker::repair(SizeState& st, int h) {
    if (h < 0 || h + st.size > bin_size_) return;
    bool member = (h == 0) ||
                  st.local[static_cast<std::size_t>(h)] > staleness_bound();
    std::int64_t rank = member ? local_rank(st, h) : 0;
    auto idx = static_cast<std::size_t>(h);
    if (st.queued[idx]) {
        if (member && st.rank[idx] == rank) return;
        st.queue.erase({st.rank[idx], -h});
        st.queued[idx] = 0;
    }
    if (member) {
        st.queue.insert({rank, -h});
        st.queued[idx] = 1;
        st.rank[idx] = rank;
    }
}

int ApproxSsPacker::size_index(int s) const {
    return index_of_size_[static_cast<std::size_t>(s)];
}

void ApproxSsPacker::register_size(const Packing& p, int s) {
    if (static_cast<int>(states_.size()) >= configured_sizes_) {
        throw std::invalid_argument("more item sizes than configured budget");
    }
    SizeState st;
    st.size = s;
    st.local.assign(static_cast<std::size_t>(bin_size_) + 1, 0);
    for (int h = 1; h < bin_size_; ++h) {
        st.local[static_cast<std::size_t>(h)] = p.profile().count(h);
    }
    st.queued.assign(static_cast<std::size_t>(bin_size_) + 1, 0);
    st.rank.assign(static_cast<std::size_t>(bin_size_) + 1, 0);
    states_.push_back(std::move(st));
    index_of_size_[static_cast<std::size_t>(s)] = static_cast<int>(states_.size());
    SizeState& fresh = states_.back();
    for (int h = 0; h + s <= bin_size_; ++h) repair(fresh, h);
}

void ApproxSsPacker::after_count_change(int level) {
    std::int64_t& tick = ticks_[static_cast<std::size_t>(level)];
    ++tick;
    if (tick == static_cast<std::int64_t>(t_) * configured_sizes_ + 1) tick = 1;
    if (tick % t_ != 0) return;
    auto refresh_index = static_cast<std::size_t>(tick / t_);
    if (refresh_index == 0 || refresh_index > states_.size()) return;
    SizeState& st = states_[refresh_index - 1];
    st.local[static_cast<std::size_t>(level)] = current_profile_->count(level);
    repair(st, level);
    repair(st, level - st.size);
}

void ApproxSsPacker::pack(Packing& p, int s) {
    current_profile_ = &p.profile();
    if (size_index(s) == 0) register_size(p, s);
    SizeState& st = states_[static_cast<std::size_t>(size_index(s) - 1)];
    int h = st.queue.empty() ? 0 : -st.queue.begin()->second;
    p.place(h, s);
    if (h > 0) after_count_change(h);
    if (h + s < bin_size_) after_count_change(h + s);
    current_profile_ = nullptr;
}

std::int64_t ApproxSsPacker::worst_staleness(const Packing& p) const {
    std::int64_t worst = 0;
    for (const SizeState& st : states_) {
        for (int h = 1; h < bin_size_; ++h) {
            std::int64_t diff =
                p.profile().count(h) - st.local[static_cast<std::size_t>(h)];
            worst = std::max(worst, diff < 0 ? -diff : diff);
        }
    }
    return worst;
}

// ---- adaptive wrapper -------------------------------------------------------

AdaptiveApproxSsPacker::AdaptiveApproxSsPacker(int bin_size, int t, int initial_sizes)
    : OnlinePacker("approx_ss_ada:" + std::to_string(t)),
      bin_size_(bin_size),
      t_(t),
      configured_(initial_sizes),
      seen_(static_cast<std::size_t>(bin_size) + 1, 0),
      inner_(std::make_unique<ApproxSsPacker>(bin_size, t, initial_sizes)) {}

void AdaptiveApproxSsPacker::pack(Packing& p, int s) {
    if (!seen_[static_cast<std::size_t>(s)]) {
        seen_[static_cast<std::size_t>(s)] = 1;
        ++seen_count_;
        if (seen_count_ > configured_) {
            p.close_all_open();
            configured_ = seen_count_;
            inner_ = std::make_unique<ApproxSsPacker>(bin_size_, t_, configured_);
            ++restarts_;
        }
    }
    inner_->pack(p, s);
}

}  // namespace sumsq
