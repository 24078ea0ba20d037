#ifndef SUMSQ_IO_HPP
#define SUMSQ_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "sumsq/distribution.hpp"

namespace sumsq {

// Accepted forms:
//   {"bin_size": B, "sizes": [s...], "probs": ["num/den"...]}
//   {"uniform_jk": {"j": j, "k": k}}
//   {"interval_uniform": {"lo": lo, "hi": hi, "bin": B}}
// Probabilities may be "num/den" strings or integers; floats are rejected to
// keep the arithmetic exact.
DiscreteDistribution dist_from_json(const nlohmann::json& spec);

DiscreteDistribution load_distribution(const std::string& path);

// A JSON array of distribution objects sharing one bin size.
std::vector<DiscreteDistribution> load_family(const std::string& path);

}  // namespace sumsq

#endif
