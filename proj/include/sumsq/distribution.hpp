#ifndef SUMSQ_DISTRIBUTION_HPP
#define SUMSQ_DISTRIBUTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sumsq/rational.hpp"
#include "sumsq/rng.hpp"

namespace sumsq {

// Discrete item-size distribution: bin size B, strictly increasing integer
// sizes in [1, B], exact rational probabilities summing to 1. Sizes with
// probability zero are allowed.
class DiscreteDistribution {
  public:
    DiscreteDistribution(int bin_size, std::vector<int> sizes,
                         std::vector<Rational> probs, std::string label = "");

    int bin_size() const { return bin_size_; }
    int num_sizes() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<Rational>& probs() const { return probs_; }
    int size_at(int j) const { return sizes_[j]; }
    const Rational& prob_at(int j) const { return probs_[j]; }

    // Sizes with positive probability.
    std::vector<int> support() const;

    // Expected item size, exact.
    Rational expected_size() const;

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

  private:
    int bin_size_;
    std::vector<int> sizes_;
    std::vector<Rational> probs_;
    std::string label_;
};

// U{j,k}: bin size k, item sizes 1..j, all equally likely.
DiscreteDistribution uniform_jk(int j, int k);

// Sizes lo..hi, all equally likely, bin size B.
DiscreteDistribution interval_uniform(int lo, int hi, int bin_size);

// Shifts probability mass r onto size 1: p1' = (p1+r)/(1+r), pj' = pj/(1+r).
// Size 1 is added to the size list (with prior probability 0) if absent.
DiscreteDistribution augment_with_unit(const DiscreteDistribution& f,
                                       const Rational& r);

// Seeded sampler with precomputed 64-bit cumulative thresholds.
class DistributionSampler {
  public:
    explicit DistributionSampler(const DiscreteDistribution& dist);
    int draw(CounterRng& rng) const;

  private:
    std::vector<int> sizes_;
    std::vector<std::uint64_t> thresholds_;  // cumulative, last = 2^64-1
};

}  // namespace sumsq

#endif
