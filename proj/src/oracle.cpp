#include "sumsq/oracle.hpp"

#include <algorithm>
#include <map>

#include "sumsq/simplex.hpp"

namespace sumsq {

namespace {

// Remaining items as (size desc, count) groups.
using Groups = std::vector<std::pair<int, int>>;

struct OptSearch {
    int bin_size;
    std::int64_t budget;
    std::map<Groups, int> memo;

    int solve(Groups groups) {
        groups.erase(std::remove_if(groups.begin(), groups.end(),
                                    [](const auto& g) { return g.second == 0; }),
                     groups.end());
        if (groups.empty()) return 0;
        if (--budget <= 0) throw SizeLimitExceeded("exact_opt node budget exceeded");
        auto it = memo.find(groups);
        if (it != memo.end()) return it->second;

        // The largest item opens a bin; only inclusion-maximal completions of
        // that bin need to be explored.
        Groups after_first = groups;
        --after_first[0].second;
        int space = bin_size - groups[0].first;

        int best = static_cast<int>(1e9);
        std::vector<int> take(after_first.size(), 0);
        enumerate(after_first, 0, space, take, best);
        memo.emplace(std::move(groups), best);
        return best;
    }

    void enumerate(const Groups& pool, std::size_t idx, int space,
                   std::vector<int>& take, int& best) {
        if (idx == pool.size()) {
            for (std::size_t g = 0; g < pool.size(); ++g) {
                if (take[g] < pool[g].second && pool[g].first <= space) return;  // not maximal
            }
            Groups rest = pool;
            for (std::size_t g = 0; g < pool.size(); ++g) rest[g].second -= take[g];
            best = std::min(best, 1 + solve(std::move(rest)));
            return;
        }
        int max_take = std::min(pool[idx].second, space / pool[idx].first);
        for (int k = max_take; k >= 0; --k) {
            take[idx] = k;
            enumerate(pool, idx + 1, space - k * pool[idx].first, take, best);
        }
        take[idx] = 0;
    }
};

}  // namespace

int exact_opt(std::vector<int> items, int bin_size, std::int64_t node_budget) {
    if (bin_size < 1) throw std::invalid_argument("bin size must be >= 1");
    for (int s : items) {
        if (s < 1 || s > bin_size) throw std::invalid_argument("item size out of (0, B]");
    }
    std::sort(items.begin(), items.end(), std::greater<int>());
    Groups groups;
    for (int s : items) {
        if (!groups.empty() && groups.back().first == s) {
            ++groups.back().second;
        } else {
            groups.emplace_back(s, 1);
        }
    }
    OptSearch search{bin_size, node_budget, {}};
    return search.solve(std::move(groups));
}

namespace {

void config_dfs(int bin_size, const std::vector<int>& sizes, std::size_t idx,
                int remaining, std::vector<int>& counts, ConfigEnumeration& out,
                std::size_t cap) {
    if (!out.complete) return;
    if (remaining == 0) {
        // pad the tail with zeros
        std::vector<int> config = counts;
        config.resize(sizes.size(), 0);
        if (out.configs.size() >= cap) {
            out.complete = false;
            return;
        }
        out.configs.push_back(std::move(config));
        return;
    }
    if (idx == sizes.size()) return;
    int max_count = remaining / sizes[idx];
    for (int k = 0; k <= max_count; ++k) {
        counts[idx] = k;
        config_dfs(bin_size, sizes, idx + 1, remaining - k * sizes[idx], counts, out, cap);
        if (!out.complete) break;
    }
    counts[idx] = 0;
}

}  // namespace

ConfigEnumeration perfect_configs(int bin_size, const std::vector<int>& sizes,
                                  std::size_t cap) {
    if (sizes.empty()) throw std::invalid_argument("empty size list");
    ConfigEnumeration out;
    std::vector<int> counts(sizes.size(), 0);
    config_dfs(bin_size, sizes, 0, bin_size, counts, out, cap);
    std::sort(out.configs.begin(), out.configs.end());
    return out;
}

bool cone_membership(const std::vector<Rational>& probs,
                     const std::vector<std::vector<int>>& configs) {
    if (configs.empty()) {
        for (const Rational& p : probs) {
            if (p != 0) return false;
        }
        return true;
    }
    LinearProgram lp;
    lp.num_vars = static_cast<int>(configs.size());
    lp.objective.assign(configs.size(), 0);
    for (std::size_t j = 0; j < probs.size(); ++j) {
        LpRow row;
        row.rel = RowRelation::Eq;
        row.rhs = probs[j];
        for (std::size_t i = 0; i < configs.size(); ++i) {
            if (configs[i][j] != 0) {
                row.coeffs.emplace_back(static_cast<int>(i), configs[i][j]);
            }
        }
        lp.rows.push_back(std::move(row));
    }
    return solve_lp(lp).status == LpStatus::Optimal;
}

}  // namespace sumsq
