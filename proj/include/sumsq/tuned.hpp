#ifndef SUMSQ_TUNED_HPP
#define SUMSQ_TUNED_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sumsq/bucket_list.hpp"
#include "sumsq/distribution.hpp"
#include "sumsq/packers.hpp"
#include "sumsq/rng.hpp"
#include "sumsq/waste_lp.hpp"

namespace sumsq {

struct EmptyHistory : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational empirical distribution over the sizes observed so far.
// counts_by_size is indexed by item size (1..B).
DiscreteDistribution empirical_distribution(
    int bin_size, const std::vector<std::int64_t>& counts_by_size,
    std::int64_t total);

// SS tuned to a linear-waste distribution: before each real item, imaginary
// unit items are injected with odds c : 1 so the combined stream is perfectly
// packable. Unit items are placed in O(1) through the delta bucket list;
// their volume is reported as waste.
class SsfPacker final : public OnlinePacker {
  public:
    SsfPacker(int bin_size, Rational c, CounterRng rng);
    void pack(Packing& p, int s) override;

  private:
    void place_imaginary_unit(Packing& p);

    Rational c_;
    std::uint64_t imaginary_threshold_;
    CounterRng rng_;
    DeltaBucketList buckets_;
};

// Fast tuned variant: imaginary items follow the gap distribution of the LP
// optimum (size s with probability delta(B-s)/T, injected at odds T : 1), so
// at most one imaginary item arrives per real item in expectation.
class SsDoubleStarPacker final : public OnlinePacker {
  public:
    SsDoubleStarPacker(const DiscreteDistribution& dist, const GapRates& gaps,
                       CounterRng rng);
    void pack(Packing& p, int s) override;

    // The combined real+imaginary stream distribution.
    const DiscreteDistribution& combined_distribution() const { return combined_; }

  private:
    Rational total_;
    std::uint64_t imaginary_threshold_;
    CounterRng rng_;
    std::optional<DistributionSampler> imaginary_;
    std::vector<int> imaginary_sizes_;
    DiscreteDistribution combined_;
};

// Distribution-free learner: tracks the empirical distribution, re-solves the
// waste LP at phase boundaries for the imaginary-item rate r, avoids dead-end
// levels for the sizes seen, and closes all open bins whenever the seen-size
// set or r changes at a phase start.
class SsStarPacker final : public OnlinePacker {
  public:
    SsStarPacker(int bin_size, CounterRng rng);
    void pack(Packing& p, int s) override;

    struct Stats {
        int phase_index = 0;
        std::int64_t phase_budget = 0;
        std::int64_t packed_in_phase = 0;
        Rational rate = 0;
        int closures = 0;
        std::int64_t lp_solves = 0;
    };
    const Stats& stats() const { return stats_; }
    const std::vector<int>& seen_sizes() const { return seen_; }
    const std::vector<char>& forbidden() const { return forbidden_; }

  private:
    void start_phase(Packing& p, int index, bool sizes_changed);
    void place_imaginary_unit(Packing& p);

    int bin_size_;
    CounterRng rng_;
    std::vector<std::int64_t> counts_;  // per size
    std::int64_t total_seen_ = 0;
    std::vector<char> seen_mask_;
    std::vector<int> seen_;
    std::vector<char> forbidden_;
    Rational rate_ = 0;
    std::uint64_t rate_threshold_ = 0;
    std::int64_t budget_ = 0;
    std::int64_t packed_in_phase_ = 0;
    bool started_ = false;
    DeltaBucketList buckets_;
    Stats stats_;
};

}  // namespace sumsq

#endif
