#ifndef SUMSQ_ADVERSARY_HPP
#define SUMSQ_ADVERSARY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sumsq/distribution.hpp"
#include "sumsq/packers.hpp"
#include "sumsq/rng.hpp"

namespace sumsq {

// Per-step choice of a family member, given the emitted history and the exact
// profile of the packer under test. The adversary never sees bin identities.
class AdversaryPolicy {
  public:
    AdversaryPolicy(std::string id, std::vector<DiscreteDistribution> family);
    virtual ~AdversaryPolicy() = default;

    const std::string& id() const { return id_; }
    const std::vector<DiscreteDistribution>& family() const { return family_; }
    int bin_size() const { return family_.front().bin_size(); }

    virtual int select(const std::vector<int>& history, const Packing& packing,
                       const OnlinePacker& packer) = 0;

  protected:
    std::string id_;
    std::vector<DiscreteDistribution> family_;
};

// Picks the member maximizing the exact expected one-step ss increase against
// the packer's own anticipated response.
class GreedySsIncreaseAdversary final : public AdversaryPolicy {
  public:
    explicit GreedySsIncreaseAdversary(std::vector<DiscreteDistribution> family)
        : AdversaryPolicy("greedy_ss_increase", std::move(family)) {}
    int select(const std::vector<int>& history, const Packing& packing,
               const OnlinePacker& packer) override;

    // Exposed for the enumeration oracle in tests.
    static Rational expected_increase(const DiscreteDistribution& dist,
                                      const Packing& packing,
                                      const OnlinePacker& packer);
};

// Member 0 for a fixed prefix, then member 1 forever.
class SwitchOnceAdversary final : public AdversaryPolicy {
  public:
    SwitchOnceAdversary(std::vector<DiscreteDistribution> family,
                        std::int64_t prefix)
        : AdversaryPolicy("switch_once", std::move(family)), prefix_(prefix) {}
    int select(const std::vector<int>& history, const Packing& packing,
               const OnlinePacker& packer) override;

  private:
    std::int64_t prefix_;
};

class RoundRobinAdversary final : public AdversaryPolicy {
  public:
    explicit RoundRobinAdversary(std::vector<DiscreteDistribution> family)
        : AdversaryPolicy("round_robin", std::move(family)) {}
    int select(const std::vector<int>& history, const Packing& packing,
               const OnlinePacker& packer) override;
};

// id forms: greedy_ss_increase | switch_once[:prefix] | round_robin
std::unique_ptr<AdversaryPolicy> make_adversary(
    const std::string& id, std::vector<DiscreteDistribution> family);

// Interleaves selection, sampling and packing; returns the emitted sizes.
std::vector<int> run_adversarial(AdversaryPolicy& policy, OnlinePacker& packer,
                                 Packing& packing, std::int64_t n,
                                 CounterRng& rng);

}  // namespace sumsq

#endif
