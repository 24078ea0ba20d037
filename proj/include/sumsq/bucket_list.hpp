#ifndef SUMSQ_BUCKET_LIST_HPP
#define SUMSQ_BUCKET_LIST_HPP

#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sumsq/packing.hpp"

namespace sumsq {

// Ordered list of buckets over delta_h = N(h+step) - N(h) under the +1/2 /
// -1/2 boundary convention (stored doubled so everything stays integral).
// Holds every occupied level h <= B-step plus the level-0 surrogate, so the
// head of the first bucket is a minimum-delta placement for an item of size
// `step` in O(1). An optional forbidden-level mask (dead-end avoidance)
// filters levels whose resulting level would be forbidden.
class DeltaBucketList {
  public:
    DeltaBucketList(int bin_size, int step);

    void set_forbidden(std::vector<char> forbidden_levels);
    void rebuild(const Profile& profile);

    // Minimum-delta level, ties resolved by bucket order; -1 when no valid
    // placement exists (possible only under a forbidden mask).
    int choose() const;

    // Adjusts entries after an item of size placed_size went to level h; the
    // profile must already reflect the placement. At most four levels move.
    void apply_placement(const Profile& profile, int h, int placed_size);

    // Bucket contents keyed by doubled delta, for equivalence checks.
    std::map<std::int64_t, std::set<int>> contents() const;

    int step() const { return step_; }

  private:
    struct Bucket {
        std::int64_t d2;
        std::list<int> members;
    };
    using BucketIter = std::list<Bucket>::iterator;
    using MemberIter = std::list<int>::iterator;

    bool is_member(const Profile& profile, int h) const;
    std::int64_t doubled_delta(const Profile& profile, int h) const;
    void remove_level(int h);
    void insert_level(int h, std::int64_t d2);
    void refresh_level(const Profile& profile, int h);

    int bin_size_;
    int step_;
    std::vector<char> forbidden_;
    std::list<Bucket> buckets_;
    std::vector<std::optional<std::pair<BucketIter, MemberIter>>> handles_;
};

}  // namespace sumsq

#endif
