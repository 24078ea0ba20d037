#include "sumsq/io.hpp"

#include <fstream>
#include <stdexcept>

namespace sumsq {

namespace {

Rational prob_from_json(const nlohmann::json& value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
    throw std::invalid_argument(
        "probabilities must be \"num/den\" strings or integers");
}

}  // namespace

DiscreteDistribution dist_from_json(const nlohmann::json& spec) {
    if (spec.contains("uniform_jk")) {
        const auto& u = spec.at("uniform_jk");
        return uniform_jk(u.at("j").get<int>(), u.at("k").get<int>());
    }
    if (spec.contains("interval_uniform")) {
        const auto& u = spec.at("interval_uniform");
        return interval_uniform(u.at("lo").get<int>(), u.at("hi").get<int>(),
                                u.at("bin").get<int>());
    }
    int bin_size = spec.at("bin_size").get<int>();
    std::vector<int> sizes = spec.at("sizes").get<std::vector<int>>();
    std::vector<Rational> probs;
    for (const auto& p : spec.at("probs")) probs.push_back(prob_from_json(p));
    return DiscreteDistribution(bin_size, std::move(sizes), std::move(probs));
}

namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open: " + path);
    return nlohmann::json::parse(in);
}

}  // namespace

DiscreteDistribution load_distribution(const std::string& path) {
    return dist_from_json(parse_file(path));
}

std::vector<DiscreteDistribution> load_family(const std::string& path) {
    nlohmann::json doc = parse_file(path);
    if (!doc.is_array() || doc.empty()) {
        throw std::invalid_argument("family file must be a non-empty JSON array");
    }
    std::vector<DiscreteDistribution> family;
    for (const auto& spec : doc) family.push_back(dist_from_json(spec));
    return family;
}

}  // namespace sumsq
