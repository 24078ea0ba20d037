// Command-line front end: classification, packing experiments, adversarial
// runs and the exact oracles, all seeded and reproducible.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumsq/harness.hpp"
#include "sumsq/io.hpp"
#include "sumsq/oracle.hpp"
#include "sumsq/tuned.hpp"
#include "sumsq/waste_lp.hpp"

namespace {

using nlohmann::json;

int exit_config_error(const std::string& message) {
    std::cerr << "config error: " << message << "\n";
    return 2;
}

std::vector<std::int64_t> parse_checkpoints(const std::string& spec, std::int64_t n) {
    if (spec.empty() || spec == "geo") return {};
    std::vector<std::int64_t> points;
    std::stringstream stream(spec);
    std::string token;
    while (std::getline(stream, token, ',')) points.push_back(std::stoll(token));
    (void)n;
    return points;
}

json template_to_json(const sumsq::PackingTemplate& tpl) {
    json instructions = json::array();
    for (const auto& ins : tpl.instructions) {
        instructions.push_back({{"size", ins.size},
                                {"level", ins.level},
                                {"count", ins.count.get_str()}});
    }
    return json{{"scale", tpl.scale.get_str()},
                {"bins", tpl.bins.get_str()},
                {"gap_units", tpl.gap_units.get_str()},
                {"instructions", instructions}};
}

int run_classify(const std::string& dist_path, bool interior,
                 const std::string& template_path) {
    sumsq::DiscreteDistribution dist = sumsq::load_distribution(dist_path);
    sumsq::Classification result = sumsq::classify(dist, interior);
    json out;
    out["c"] = sumsq::format_rational(result.c);
    out["class"] = sumsq::waste_class_name(result.cls);
    if (interior) {
        json ci = json::array();
        for (const auto& value : result.interior) {
            if (!value) {
                ci.push_back(nullptr);
            } else if (value->unbounded) {
                ci.push_back("inf");
            } else {
                ci.push_back(sumsq::format_rational(value->value));
            }
        }
        out["c_i"] = ci;
    }
    out["dead_end_levels"] = sumsq::dead_end_levels(dist.bin_size(), dist.support());
    if (!template_path.empty()) {
        sumsq::LpSolution solution = sumsq::solve_waste_lp(dist);
        std::ofstream file(template_path);
        if (!file) return exit_config_error("cannot open " + template_path);
        file << template_to_json(sumsq::ideal_packing_template(dist, solution)).dump(2)
             << "\n";
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct RunOptions {
    std::string dist_path;
    std::string family_path;
    std::string policy;
    std::string alg = "ss";
    std::int64_t n = 1000;
    std::uint64_t seed = 1;
    int trials = 1;
    std::string checkpoints = "geo";
    std::string out_path;
    std::string format = "csv";
    bool timings = false;
    bool check_family = false;
};

int run_packing(const RunOptions& options, bool sweep, bool adversarial) {
    sumsq::ExperimentConfig config;
    config.alg = options.alg;
    config.n = options.n;
    config.seed = options.seed;
    config.trials = options.trials;
    config.timings = options.timings;
    if (adversarial) {
        config.adversary = sumsq::AdversarySpec{
            options.policy, sumsq::load_family(options.family_path)};
        if (options.check_family) {
            // A finite family of bounded-waste members admits the epsilon
            // margin that keeps ss waste flat under adversarial choice.
            for (const auto& member : config.adversary->family) {
                if (sumsq::classify(member).cls != sumsq::WasteClass::BoundedWaste) {
                    std::cerr << "warning: family member " << member.label()
                              << " is not a bounded-waste distribution; the "
                                 "flat-waste guarantee does not apply\n";
                }
            }
        }
    } else {
        config.dist = sumsq::load_distribution(options.dist_path);
    }
    if (sweep) {
        config.checkpoints = parse_checkpoints(options.checkpoints, options.n);
    } else {
        config.checkpoints = {options.n};
    }

    sumsq::RunResult result = sumsq::run_experiment(config);
    sumsq::OutputFormat format = options.format == "json"
                                     ? sumsq::OutputFormat::Json
                                     : sumsq::OutputFormat::Csv;
    if (!options.out_path.empty()) {
        sumsq::write_output(result, options.out_path, format);
    } else if (format == sumsq::OutputFormat::Csv) {
        sumsq::emit_csv(std::cout, result);
    } else {
        sumsq::emit_json(std::cout, result);
    }

    if (sweep) {
        try {
            sumsq::GrowthFit fit = sumsq::fit_growth(result.mean_waste());
            std::cerr << "growth: " << sumsq::growth_class_name(fit.cls)
                      << " exponent=" << fit.exponent << "\n";
        } catch (const sumsq::InsufficientData& e) {
            std::cerr << "growth: not fitted (" << e.what() << ")\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sum-of-squares online bin packing toolkit"};
    app.require_subcommand(1);

    // classify
    std::string dist_path, template_path;
    bool interior = false;
    CLI::App* classify = app.add_subcommand("classify", "Classify a distribution");
    classify->add_option("--dist", dist_path, "distribution JSON file")->required();
    classify->add_flag("--interior", interior, "compute every interior value");
    classify->add_option("--emit-template", template_path,
                         "write the ideal packing recipe to this file");

    // pack / sweep / adversary
    RunOptions pack_options, sweep_options, adv_options;
    CLI::App* pack = app.add_subcommand("pack", "Pack one stream, report totals");
    pack->add_option("--dist", pack_options.dist_path)->required();
    pack->add_option("--alg", pack_options.alg);
    pack->add_option("-n", pack_options.n);
    pack->add_option("--seed", pack_options.seed);
    pack->add_option("--trials", pack_options.trials);
    pack->add_option("--out", pack_options.out_path);
    pack->add_option("--format", pack_options.format)
        ->check(CLI::IsMember({"csv", "json"}));
    pack->add_flag("--timings", pack_options.timings);

    CLI::App* sweep = app.add_subcommand("sweep", "Checkpointed growth experiment");
    sweep->add_option("--dist", sweep_options.dist_path)->required();
    sweep->add_option("--alg", sweep_options.alg);
    sweep->add_option("-n", sweep_options.n);
    sweep->add_option("--seed", sweep_options.seed);
    sweep->add_option("--trials", sweep_options.trials);
    sweep->add_option("--checkpoints", sweep_options.checkpoints,
                      "'geo' or comma-separated list");
    sweep->add_option("--out", sweep_options.out_path);
    sweep->add_option("--format", sweep_options.format)
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--timings", sweep_options.timings);

    CLI::App* adversary = app.add_subcommand("adversary", "Adversarial stream run");
    adversary->add_option("--family", adv_options.family_path)->required();
    adversary->add_option("--policy", adv_options.policy)->required();
    adversary->add_option("--alg", adv_options.alg);
    adversary->add_option("-n", adv_options.n);
    adversary->add_option("--seed", adv_options.seed);
    adversary->add_option("--trials", adv_options.trials);
    adversary->add_option("--checkpoints", adv_options.checkpoints);
    adversary->add_option("--out", adv_options.out_path);
    adversary->add_option("--format", adv_options.format)
        ->check(CLI::IsMember({"csv", "json"}));
    adversary->add_flag("--timings", adv_options.timings);
    adversary->add_flag("--check-family", adv_options.check_family,
                        "classify members; warn unless all are bounded-waste");

    // opt
    std::string items_text;
    int opt_bin = 0;
    std::int64_t opt_budget = 4'000'000;
    CLI::App* opt = app.add_subcommand("opt", "Exact minimum bin count");
    opt->add_option("--items", items_text, "comma-separated sizes")->required();
    opt->add_option("--bin", opt_bin, "bin size")->required();
    opt->add_option("--budget", opt_budget, "search node budget");

    // configs
    std::string configs_dist;
    CLI::App* configs = app.add_subcommand("configs", "Perfect packing configurations");
    configs->add_option("--dist", configs_dist)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (classify->parsed()) {
            return run_classify(dist_path, interior, template_path);
        }
        if (pack->parsed()) return run_packing(pack_options, false, false);
        if (sweep->parsed()) return run_packing(sweep_options, true, false);
        if (adversary->parsed()) return run_packing(adv_options, true, true);
        if (opt->parsed()) {
            std::vector<int> items;
            std::stringstream stream(items_text);
            std::string token;
            while (std::getline(stream, token, ',')) items.push_back(std::stoi(token));
            std::cout << sumsq::exact_opt(items, opt_bin, opt_budget) << "\n";
            return 0;
        }
        if (configs->parsed()) {
            sumsq::DiscreteDistribution dist = sumsq::load_distribution(configs_dist);
            sumsq::ConfigEnumeration result =
                sumsq::perfect_configs(dist.bin_size(), dist.sizes());
            json out;
            out["sizes"] = dist.sizes();
            out["complete"] = result.complete;
            out["configs"] = result.configs;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const sumsq::SizeLimitExceeded& e) {
        std::cerr << "oracle budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const sumsq::ConfigError& e) {
        return exit_config_error(e.what());
    } catch (const std::exception& e) {
        return exit_config_error(e.what());
    }
    return 0;
}
