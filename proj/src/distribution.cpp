#include "sumsq/distribution.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumsq {

DiscreteDistribution::DiscreteDistribution(int bin_size, std::vector<int> sizes,
                                           std::vector<Rational> probs,
                                           std::string label)
    : bin_size_(bin_size),
      sizes_(std::move(sizes)),
      probs_(std::move(probs)),
      label_(std::move(label)) {
    if (bin_size_ < 1) throw std::invalid_argument("bin size must be >= 1");
    if (sizes_.empty()) throw std::invalid_argument("empty size list");
    if (sizes_.size() != probs_.size()) {
        throw std::invalid_argument("sizes and probs differ in length");
    }
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
        if (sizes_[j] < 1 || sizes_[j] > bin_size_) {
            throw std::invalid_argument("size out of [1, B]");
        }
        if (j > 0 && sizes_[j] <= sizes_[j - 1]) {
            throw std::invalid_argument("sizes must be strictly increasing");
        }
        if (probs_[j] < 0) throw std::invalid_argument("negative probability");
    }
    Rational total = 0;
    for (const Rational& p : probs_) total += p;
    if (total != 1) throw std::invalid_argument("probabilities must sum to 1");
    if (label_.empty()) {
        label_ = "B" + std::to_string(bin_size_) + ":";
        for (std::size_t j = 0; j < sizes_.size(); ++j) {
            if (j > 0) label_ += ",";
            label_ += std::to_string(sizes_[j]);
        }
    }
}

std::vector<int> DiscreteDistribution::support() const {
    std::vector<int> u;
    for (std::size_t j = 0; j < sizes_.size(); ++j) {
        if (probs_[j] > 0) u.push_back(sizes_[j]);
    }
    return u;
}

Rational DiscreteDistribution::expected_size() const {
    Rational es = 0;
    for (std::size_t j = 0; j < sizes_.size(); ++j) es += probs_[j] * sizes_[j];
    return es;
}

DiscreteDistribution uniform_jk(int j, int k) {
    if (j < 1 || j > k) throw std::invalid_argument("uniform_jk needs 1 <= j <= k");
    std::vector<int> sizes(j);
    std::vector<Rational> probs(j, Rational(1, j));
    for (int i = 0; i < j; ++i) sizes[i] = i + 1;
    return DiscreteDistribution(k, std::move(sizes), std::move(probs),
                                "U{" + std::to_string(j) + "," + std::to_string(k) + "}");
}

DiscreteDistribution interval_uniform(int lo, int hi, int bin_size) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("bad interval bounds");
    int count = hi - lo + 1;
    std::vector<int> sizes(count);
    std::vector<Rational> probs(count, Rational(1, count));
    for (int i = 0; i < count; ++i) sizes[i] = lo + i;
    return DiscreteDistribution(bin_size, std::move(sizes), std::move(probs),
                                "U{" + std::to_string(lo) + ".." + std::to_string(hi) +
                                    "," + std::to_string(bin_size) + "}");
}

DiscreteDistribution augment_with_unit(const DiscreteDistribution& f,
                                       const Rational& r) {
    if (r < 0) throw std::invalid_argument("augment rate must be >= 0");
    std::vector<int> sizes = f.sizes();
    std::vector<Rational> probs = f.probs();
    if (sizes.empty() || sizes.front() != 1) {
        sizes.insert(sizes.begin(), 1);
        probs.insert(probs.begin(), Rational(0));
    }
    Rational scale = 1 + r;
    for (Rational& p : probs) p /= scale;
    probs.front() += r / scale;
    return DiscreteDistribution(f.bin_size(), std::move(sizes), std::move(probs),
                                f.label() + "+unit(" + format_rational(r) + ")");
}

DistributionSampler::DistributionSampler(const DiscreteDistribution& dist)
    : sizes_(dist.sizes()) {
    thresholds_.reserve(sizes_.size());
    Rational cum = 0;
    for (int j = 0; j < dist.num_sizes(); ++j) {
        cum += dist.prob_at(j);
        thresholds_.push_back(CounterRng::threshold(cum));
    }
    thresholds_.back() = ~0ULL;
}

int DistributionSampler::draw(CounterRng& rng) const {
    std::uint64_t r = rng.next();
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), r);
    if (it == thresholds_.end()) --it;
    return sizes_[static_cast<std::size_t>(it - thresholds_.begin())];
}

}  // namespace sumsq
