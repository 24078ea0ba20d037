#ifndef SUMSQ_ORACLE_HPP
#define SUMSQ_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sumsq/rational.hpp"

namespace sumsq {

struct SizeLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact minimum bin count by branch and bound over maximal bin completions,
// memoized on the remaining multiset. Intended for validation (small n);
// throws SizeLimitExceeded once the node budget is spent.
int exact_opt(std::vector<int> items, int bin_size,
              std::int64_t node_budget = 4'000'000);

struct ConfigEnumeration {
    // Each config counts items per size (aligned with the input size list)
    // summing exactly to the bin size. Lexicographically sorted.
    std::vector<std::vector<int>> configs;
    bool complete = true;  // false when the cap stopped enumeration
};

ConfigEnumeration perfect_configs(int bin_size, const std::vector<int>& sizes,
                                  std::size_t cap = 1'000'000);

// Exact feasibility of probs = sum alpha_i * config_i with alpha >= 0.
bool cone_membership(const std::vector<Rational>& probs,
                     const std::vector<std::vector<int>>& configs);

}  // namespace sumsq

#endif
