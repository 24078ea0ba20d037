#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "sumsq/oracle.hpp"
#include "sumsq/packers.hpp"
#include "sumsq/packing.hpp"
#include "sumsq/rng.hpp"

using namespace sumsq;

namespace {

// Exhaustive optimum by trying every assignment of items to at most k bins.
int brute_force_opt(const std::vector<int>& items, int bin_size) {
    int n = static_cast<int>(items.size());
    for (int k = 1; k <= n; ++k) {
        std::vector<int> loads(static_cast<std::size_t>(k), 0);
        std::vector<int> choice(static_cast<std::size_t>(n), -1);
        int depth = 0;
        while (depth >= 0) {
            if (depth == n) return k;
            int& c = choice[static_cast<std::size_t>(depth)];
            if (c >= 0) loads[static_cast<std::size_t>(c)] -= items[static_cast<std::size_t>(depth)];
            ++c;
            bool advanced = false;
            while (c < k) {
                // symmetry break: never open bin j before bin j-1 is nonempty
                if (c > 0 && loads[static_cast<std::size_t>(c - 1)] == 0) break;
                if (loads[static_cast<std::size_t>(c)] + items[static_cast<std::size_t>(depth)] <= bin_size) {
                    loads[static_cast<std::size_t>(c)] += items[static_cast<std::size_t>(depth)];
                    advanced = true;
                    break;
                }
                ++c;
            }
            if (advanced) {
                ++depth;
                if (depth < n) choice[static_cast<std::size_t>(depth)] = -1;
            } else {
                --depth;
            }
        }
    }
    return n;
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("exact_opt examples") {
    CHECK(exact_opt({2, 2, 2, 2, 2}, 11) == 1);
    CHECK(exact_opt({8, 1, 1, 4, 3, 3, 5, 5}, 10) == 3);
    CHECK(exact_opt({6, 6, 6}, 11) == 3);
    CHECK(exact_opt({}, 7) == 0);
}

TEST_CASE("exact_opt errors") {
    CHECK_THROWS_AS(exact_opt({12}, 10), std::invalid_argument);
    CHECK_THROWS_AS(exact_opt({0}, 10), std::invalid_argument);
    // a tiny node budget trips the limit on a nontrivial instance
    CHECK_THROWS_AS(exact_opt({7, 6, 5, 4, 3, 2, 9, 8, 1, 5, 6, 7}, 17, 3),
                    SizeLimitExceeded);
}

TEST_CASE("exact_opt agrees with assignment brute force") {
    CounterRng rng(2718, 1);
    for (int round = 0; round < 120; ++round) {
        int b = 4 + static_cast<int>(rng.below(12));
        int n = 1 + static_cast<int>(rng.below(9));
        std::vector<int> items;
        for (int i = 0; i < n; ++i) {
            items.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(b))));
        }
        CHECK(exact_opt(items, b) == brute_force_opt(items, b));
    }
}

TEST_CASE("exact_opt monotone and lower-bounded") {
    CounterRng rng(333, 4);
    for (int round = 0; round < 60; ++round) {
        int b = 5 + static_cast<int>(rng.below(10));
        std::vector<int> items;
        int n = 2 + static_cast<int>(rng.below(10));
        std::int64_t total = 0;
        for (int i = 0; i < n; ++i) {
            items.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(b))));
            total += items.back();
        }
        int full = exact_opt(items, b);
        CHECK(full >= (total + b - 1) / b);
        std::vector<int> fewer(items.begin(), items.end() - 1);
        CHECK(exact_opt(fewer, b) <= full);
    }
}

TEST_CASE("every packer uses at least exact_opt bins") {
    CounterRng rng(11, 11);
    for (int round = 0; round < 40; ++round) {
        int b = 4 + static_cast<int>(rng.below(10));
        int n = 3 + static_cast<int>(rng.below(14));
        std::vector<int> items;
        for (int i = 0; i < n; ++i) {
            items.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(b))));
        }
        int opt = exact_opt(items, b);
        SsPacker ss;
        BestFitPacker bf;
        FirstFitPacker ff;
        for (OnlinePacker* packer :
             {static_cast<OnlinePacker*>(&ss), static_cast<OnlinePacker*>(&bf),
              static_cast<OnlinePacker*>(&ff)}) {
            Packing packing(b);
            for (int s : items) packer->pack(packing, s);
            CHECK(packing.bins_used() >= opt);
        }
    }
}

TEST_CASE("perfect_configs examples") {
    ConfigEnumeration six = perfect_configs(6, {2, 3});
    REQUIRE(six.complete);
    CHECK(six.configs == std::vector<std::vector<int>>{{0, 2}, {3, 0}});

    ConfigEnumeration ten = perfect_configs(10, {1, 3, 4, 5, 8});
    REQUIRE(ten.complete);
    auto contains = [&](std::vector<int> config) {
        return std::find(ten.configs.begin(), ten.configs.end(), config) !=
               ten.configs.end();
    };
    CHECK(contains({2, 0, 0, 0, 1}));
    CHECK(contains({0, 2, 1, 0, 0}));
    CHECK(contains({0, 0, 0, 2, 0}));

    CHECK(perfect_configs(5, {2}).configs.empty());
}

TEST_CASE("perfect_configs respects the cap") {
    ConfigEnumeration capped = perfect_configs(30, {1, 2, 3}, 5);
    CHECK_FALSE(capped.complete);
    CHECK(capped.configs.size() == 5);
}

TEST_CASE("cone_membership examples") {
    ConfigEnumeration nine = perfect_configs(9, {2, 3});
    CHECK(cone_membership({Rational(1, 2), Rational(1, 2)}, nine.configs));

    // no perfect config at all: only the zero vector is in the cone
    ConfigEnumeration none = perfect_configs(3, {2});
    CHECK_FALSE(cone_membership({Rational(1)}, none.configs));

    ConfigEnumeration u24 = perfect_configs(4, {1, 2});
    CHECK(cone_membership({Rational(1, 2), Rational(1, 2)}, u24.configs));
}

TEST_SUITE_END();
