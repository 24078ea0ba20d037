#ifndef SUMSQ_PACKING_HPP
#define SUMSQ_PACKING_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sumsq/rational.hpp"

namespace sumsq {

struct IllegalPlacement : std::logic_error {
    using std::logic_error::logic_error;
};

// Open-bin counts per level. N(h) is stored for 1 <= h <= B-1; levels 0 and B
// never hold a real count. The +1/2 / -1/2 boundary convention exists only
// inside placement_delta, which returns 2d+1 at the boundaries instead of
// storing fractional counts.
class Profile {
  public:
    explicit Profile(int bin_size)
        : bin_size_(bin_size), counts_(static_cast<std::size_t>(bin_size) + 1, 0) {
        if (bin_size < 1) throw std::invalid_argument("bin size must be >= 1");
    }

    int bin_size() const { return bin_size_; }

    std::int64_t count(int h) const {
        if (h <= 0 || h >= bin_size_) return 0;
        return counts_[static_cast<std::size_t>(h)];
    }

    void add(int h, std::int64_t delta) {
        std::int64_t& c = counts_[static_cast<std::size_t>(h)];
        c += delta;
        if (c < 0) throw IllegalPlacement("negative count at level " + std::to_string(h));
    }

    bool empty() const {
        for (int h = 1; h < bin_size_; ++h) {
            if (counts_[static_cast<std::size_t>(h)] != 0) return false;
        }
        return true;
    }

  private:
    int bin_size_;
    std::vector<std::int64_t> counts_;
};

struct PlacementDelta {
    int level;              // h
    std::int64_t d;         // N(h+s) - N(h), true counts
    std::int64_t delta_ss;  // exact change in ss(P)
};

// Sum of squared counts.
std::int64_t ss_value(const Profile& profile);

// Exact ss change for placing size s at level h. Levels h=0 and h=B-s use the
// 2d+1 form; a placement that both starts and fills a bin (h=0, s=B) leaves
// the profile unchanged. Throws IllegalPlacement if h>0 with N(h)=0 or h+s>B.
PlacementDelta placement_delta(const Profile& profile, int h, int s);

// {0} plus every occupied level h <= B-s.
std::vector<int> legal_levels(const Profile& profile, int s);

// Levels h reachable as a sum of members of u (with repetition) whose
// complement B-h is not reachable. Two reachability passes, O(|u|*B).
std::vector<int> dead_end_levels(int bin_size, const std::vector<int>& u);

// Full packing state: profile plus per-level LIFO stacks of bin ids and
// running totals. The maintained ss value always equals recomputation.
class Packing {
  public:
    explicit Packing(int bin_size);

    int bin_size() const { return bin_size_; }
    const Profile& profile() const { return profile_; }

    // Places one item of size s into a bin at level h (h=0 starts a new bin).
    // The receiving bin is the newest bin at that level; bins reaching level B
    // close and leave the profile.
    void place(int h, int s);

    // Same as place but the item's volume is accounted as imaginary: it fills
    // space yet counts as waste in reported_waste().
    void place_imaginary(int h, int s);

    // Administratively closes every open bin; their gaps are frozen into the
    // closed-gap accumulator and the profile empties.
    void close_all_open();

    // Newest open bin at level h, for tie-break inspection.
    std::uint32_t top_bin(int h) const;
    std::size_t stack_size(int h) const;

    std::int64_t items_placed() const { return items_placed_; }
    std::int64_t real_items() const { return items_placed_ - imaginary_items_; }
    std::int64_t imaginary_items() const { return imaginary_items_; }
    std::int64_t imaginary_volume() const { return imaginary_volume_; }
    std::int64_t total_size() const { return total_size_; }
    std::int64_t open_bins() const { return open_bins_; }
    std::int64_t closed_bins() const { return closed_bins_; }
    std::int64_t bins_used() const { return open_bins_ + closed_bins_; }
    std::int64_t ss() const { return ss_; }

    // Gap units: sum over bins of (B - level), open and closed.
    std::int64_t gap_units() const { return open_gap_units_ + closed_gap_units_; }

    // Exact waste sum_h N(h)(B-h)/B plus closed-bin gaps; equals
    // bins_used - total_size/B.
    Rational waste() const { return ratio(gap_units(), bin_size_); }

    // Waste with imaginary volume counted as waste: bins_used - real_size/B.
    Rational reported_waste() const {
        return ratio(gap_units() + imaginary_volume_, bin_size_);
    }

  private:
    void place_common(int h, int s);

    int bin_size_;
    Profile profile_;
    std::vector<std::vector<std::uint32_t>> stacks_;
    std::int64_t items_placed_ = 0;
    std::int64_t imaginary_items_ = 0;
    std::int64_t imaginary_volume_ = 0;
    std::int64_t total_size_ = 0;
    std::int64_t open_bins_ = 0;
    std::int64_t closed_bins_ = 0;
    std::int64_t open_gap_units_ = 0;
    std::int64_t closed_gap_units_ = 0;
    std::int64_t ss_ = 0;
    std::uint32_t next_bin_id_ = 0;
};

}  // namespace sumsq

#endif
