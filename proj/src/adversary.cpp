#include "sumsq/adversary.hpp"

#include <stdexcept>

namespace sumsq {

AdversaryPolicy::AdversaryPolicy(std::string id,
                                 std::vector<DiscreteDistribution> family)
    : id_(std::move(id)), family_(std::move(family)) {
    if (family_.empty()) throw std::invalid_argument("empty adversary family");
    for (const DiscreteDistribution& f : family_) {
        if (f.bin_size() != family_.front().bin_size()) {
            throw std::invalid_argument("family members must share the bin size");
        }
    }
}

Rational GreedySsIncreaseAdversary::expected_increase(
    const DiscreteDistribution& dist, const Packing& packing,
    const OnlinePacker& packer) {
    Rational expectation = 0;
    for (int j = 0; j < dist.num_sizes(); ++j) {
        if (dist.prob_at(j) == 0) continue;
        int s = dist.size_at(j);
        int h = packer.preview(packing, s);
        expectation +=
            dist.prob_at(j) * placement_delta(packing.profile(), h, s).delta_ss;
    }
    return expectation;
}

int GreedySsIncreaseAdversary::select(const std::vector<int>&,
                                      const Packing& packing,
                                      const OnlinePacker& packer) {
    int best = 0;
    Rational best_value = expected_increase(family_[0], packing, packer);
    for (std::size_t m = 1; m < family_.size(); ++m) {
        Rational value = expected_increase(family_[m], packing, packer);
        if (value > best_value) {
            best_value = value;
            best = static_cast<int>(m);
        }
    }
    return best;
}

int SwitchOnceAdversary::select(const std::vector<int>& history, const Packing&,
                                const OnlinePacker&) {
    if (static_cast<std::int64_t>(history.size()) < prefix_) return 0;
    return family_.size() > 1 ? 1 : 0;
}

int RoundRobinAdversary::select(const std::vector<int>& history, const Packing&,
                                const OnlinePacker&) {
    return static_cast<int>(history.size() % family_.size());
}

std::unique_ptr<AdversaryPolicy> make_adversary(
    const std::string& id, std::vector<DiscreteDistribution> family) {
    if (id == "greedy_ss_increase") {
        return std::make_unique<GreedySsIncreaseAdversary>(std::move(family));
    }
    if (id == "round_robin") {
        return std::make_unique<RoundRobinAdversary>(std::move(family));
    }
    if (id.rfind("switch_once", 0) == 0) {
        std::int64_t prefix = 1;
        auto colon = id.find(':');
        if (colon != std::string::npos) prefix = std::stoll(id.substr(colon + 1));
        return std::make_unique<SwitchOnceAdversary>(std::move(family), prefix);
    }
    throw std::invalid_argument("unknown adversary policy: " + id);
}

std::vector<int> run_adversarial(AdversaryPolicy& policy, OnlinePacker& packer,
                                 Packing& packing, std::int64_t n,
                                 CounterRng& rng) {
    std::vector<DistributionSampler> samplers;
    samplers.reserve(policy.family().size());
    for (const DiscreteDistribution& f : policy.family()) samplers.emplace_back(f);

    std::vector<int> history;
    history.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        int member = policy.select(history, packing, packer);
        int size = samplers[static_cast<std::size_t>(member)].draw(rng);
        packer.pack(packing, size);
        history.push_back(size);
    }
    return history;
}

}  // namespace sumsq
