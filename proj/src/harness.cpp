#include "sumsq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "sumsq/tuned.hpp"
#include "sumsq/waste_lp.hpp"

namespace sumsq {

std::vector<std::int64_t> geometric_checkpoints(std::int64_t n) {
    std::vector<std::int64_t> points;
    for (int k = 11; k >= 0; --k) {
        std::int64_t v = (n + (1LL << k) - 1) >> k;  // ceil(n / 2^k)
        if (v < 1) v = 1;
        if (points.empty() || v > points.back()) points.push_back(v);
    }
    return points;
}

std::unique_ptr<OnlinePacker> make_packer(const std::string& alg, int bin_size,
                                          const DiscreteDistribution* dist,
                                          CounterRng rng) {
    auto need_dist = [&]() -> const DiscreteDistribution& {
        if (!dist) throw ConfigError("policy '" + alg + "' needs a distribution");
        return *dist;
    };
    auto suffix_after = [&](const std::string& prefix) {
        return alg.substr(prefix.size());
    };
    if (alg == "ss") return std::make_unique<SsPacker>();
    if (alg == "ss_d") {
        auto dead = dead_end_levels(bin_size, need_dist().support());
        return std::make_unique<SsdPacker>(bin_size, dead);
    }
    if (alg == "ss_prime") return std::make_unique<SsPrimePacker>(bin_size);
    if (alg.rfind("srs:", 0) == 0) {
        std::string r = suffix_after("srs:");
        if (r.find('.') == std::string::npos) {
            return std::make_unique<SrsPacker>(std::stoi(r));
        }
        return std::make_unique<SrsPacker>(std::strtold(r.c_str(), nullptr));
    }
    if (alg == "sinf") return std::make_unique<SinfPacker>();
    if (alg == "sminh") return std::make_unique<SminhPacker>();
    if (alg == "smaxh") return std::make_unique<SmaxhPacker>();
    if (alg == "perfect_ss") return std::make_unique<PerfectSsPacker>();
    if (alg.rfind("wss:", 0) == 0) {
        return std::make_unique<WeightedSsPacker>(
            LevelWeight::make(suffix_after("wss:"), bin_size));
    }
    if (alg.rfind("approx_ss_ada:", 0) == 0) {
        return std::make_unique<AdaptiveApproxSsPacker>(
            bin_size, std::stoi(suffix_after("approx_ss_ada:")));
    }
    if (alg.rfind("approx_ss:", 0) == 0) {
        return std::make_unique<ApproxSsPacker>(
            bin_size, std::stoi(suffix_after("approx_ss:")), need_dist().num_sizes());
    }
    if (alg == "bf") return std::make_unique<BestFitPacker>();
    if (alg == "ff") return std::make_unique<FirstFitPacker>();
    if (alg == "ssf") {
        Rational c = solve_waste_lp(need_dist()).objective;
        return std::make_unique<SsfPacker>(bin_size, c, rng);
    }
    if (alg == "ss2star") {
        const DiscreteDistribution& f = need_dist();
        LpSolution solution = solve_waste_lp(f);
        return std::make_unique<SsDoubleStarPacker>(f, gap_rates(f, solution), rng);
    }
    if (alg == "ssstar") return std::make_unique<SsStarPacker>(bin_size, rng);
    throw ConfigError("unknown policy id: " + alg);
}

namespace {

void validate(const ExperimentConfig& config) {
    if (config.n < 1) throw ConfigError("n must be >= 1");
    if (config.trials < 1) throw ConfigError("trials must be >= 1");
    if (!config.dist && !config.adversary) {
        throw ConfigError("experiment needs a distribution or adversary");
    }
    for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
        if (config.checkpoints[i] < 1 || config.checkpoints[i] > config.n) {
            throw ConfigError("checkpoints must lie in [1, n]");
        }
        if (i > 0 && config.checkpoints[i] <= config.checkpoints[i - 1]) {
            throw ConfigError("checkpoints must be strictly increasing");
        }
    }
}

TrialRecord run_trial(const ExperimentConfig& config,
                      const std::vector<std::int64_t>& checkpoints, int trial) {
    int bin_size = config.dist ? config.dist->bin_size()
                               : config.adversary->family.front().bin_size();
    CounterRng item_rng(config.seed, 2 * static_cast<std::uint64_t>(trial));
    CounterRng packer_rng(config.seed, 2 * static_cast<std::uint64_t>(trial) + 1);
    const DiscreteDistribution* dist = config.dist ? &*config.dist : nullptr;
    auto packer = make_packer(config.alg, bin_size, dist, packer_rng);

    std::optional<DistributionSampler> sampler;
    std::unique_ptr<AdversaryPolicy> adversary;
    std::vector<DistributionSampler> family_samplers;
    std::vector<int> history;
    if (config.adversary) {
        adversary = make_adversary(config.adversary->policy_id, config.adversary->family);
        for (const DiscreteDistribution& f : adversary->family()) {
            family_samplers.emplace_back(f);
        }
    } else {
        sampler.emplace(*dist);
    }

    Packing packing(bin_size);
    TrialRecord record;
    record.trial = trial;
    auto started = std::chrono::steady_clock::now();
    std::size_t next_checkpoint = 0;
    for (std::int64_t i = 1; i <= config.n; ++i) {
        int size;
        if (adversary) {
            int member = adversary->select(history, packing, *packer);
            size = family_samplers[static_cast<std::size_t>(member)].draw(item_rng);
            history.push_back(size);
        } else {
            size = sampler->draw(item_rng);
        }
        packer->pack(packing, size);
        if (next_checkpoint < checkpoints.size() && i == checkpoints[next_checkpoint]) {
            Checkpoint point;
            point.n = i;
            point.bins = packing.bins_used();
            point.waste = packing.reported_waste();
            point.waste_float = to_double(point.waste);
            point.ss = packing.ss();
            if (config.timings) {
                point.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - started)
                                       .count();
            }
            record.points.push_back(std::move(point));
            ++next_checkpoint;
        }
    }
    return record;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
    validate(config);
    std::vector<std::int64_t> checkpoints =
        config.checkpoints.empty() ? geometric_checkpoints(config.n) : config.checkpoints;

    RunResult result;
    result.alg = config.alg;
    result.dist_label = config.dist
                            ? config.dist->label()
                            : "adv:" + config.adversary->policy_id + "(" +
                                  std::to_string(config.adversary->family.size()) + ")";
    result.seed = config.seed;
    result.trials.resize(static_cast<std::size_t>(config.trials));

    unsigned workers = config.max_workers == 0 ? std::thread::hardware_concurrency()
                                               : config.max_workers;
    workers = std::min(workers, static_cast<unsigned>(config.trials));
    if (workers <= 1) {
        for (int t = 0; t < config.trials; ++t) {
            result.trials[static_cast<std::size_t>(t)] = run_trial(config, checkpoints, t);
        }
        return result;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1)) {
                result.trials[static_cast<std::size_t>(t)] = run_trial(config, checkpoints, t);
            }
        });
    }
    for (std::thread& thread : pool) thread.join();
    return result;
}

std::vector<std::pair<std::int64_t, double>> RunResult::mean_waste() const {
    std::vector<std::pair<std::int64_t, double>> series;
    if (trials.empty()) return series;
    std::size_t points = trials.front().points.size();
    for (std::size_t p = 0; p < points; ++p) {
        double sum = 0;
        for (const TrialRecord& trial : trials) sum += trial.points[p].waste_float;
        series.emplace_back(trials.front().points[p].n,
                            sum / static_cast<double>(trials.size()));
    }
    return series;
}

std::string growth_class_name(GrowthClass cls) {
    switch (cls) {
        case GrowthClass::Bounded: return "bounded";
        case GrowthClass::Log: return "log";
        case GrowthClass::Sqrt: return "sqrt";
        case GrowthClass::Linear: return "linear";
        case GrowthClass::Indeterminate: return "indeterminate";
    }
    return "?";
}

GrowthFit fit_growth(const std::vector<std::pair<std::int64_t, double>>& series) {
    if (series.size() < 5) throw InsufficientData("need at least 5 checkpoints");
    if (series.back().first < 100 * series.front().first) {
        throw InsufficientData("checkpoints must span at least 2 decades");
    }
    std::size_t from = series.size() / 2;
    std::size_t k = series.size() - from;

    // slope of log W vs log n on the upper half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = from; i < series.size(); ++i) {
        double x = std::log(static_cast<double>(series[i].first));
        double y = std::log(std::max(series[i].second, 1e-9));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = static_cast<double>(k) * sxx - sx * sx;
    GrowthFit fit;
    fit.exponent = denom == 0 ? 0 : (static_cast<double>(k) * sxy - sx * sy) / denom;

    // Bounded-vs-Log residuals need the longest possible log-n lever, so the
    // const and a + b*log n fits use every checkpoint.
    std::size_t all = series.size();
    double mean = 0;
    for (std::size_t i = 0; i < all; ++i) mean += series[i].second;
    mean /= static_cast<double>(all);
    double lx = 0, ly = 0, lxx = 0, lxy = 0;
    for (std::size_t i = 0; i < all; ++i) {
        double x = std::log(static_cast<double>(series[i].first));
        double y = series[i].second;
        lx += x;
        ly += y;
        lxx += x * x;
        lxy += x * y;
    }
    double ldenom = static_cast<double>(all) * lxx - lx * lx;
    double b = ldenom == 0 ? 0 : (static_cast<double>(all) * lxy - lx * ly) / ldenom;
    double a = (ly - b * lx) / static_cast<double>(all);
    for (std::size_t i = 0; i < all; ++i) {
        double x = std::log(static_cast<double>(series[i].first));
        double y = series[i].second;
        fit.const_sse += (y - mean) * (y - mean);
        fit.log_sse += (y - a - b * x) * (y - a - b * x);
    }

    if (fit.exponent > 0.85) {
        fit.cls = GrowthClass::Linear;
    } else if (fit.exponent >= 0.35 && fit.exponent <= 0.65) {
        fit.cls = GrowthClass::Sqrt;
    } else if (fit.exponent < 0.35) {
        // The log model nests the constant one, so demand a clear margin.
        bool log_wins = b > 0 && fit.const_sse > 1e-12 * static_cast<double>(all) &&
                        fit.log_sse < 0.6 * fit.const_sse;
        fit.cls = log_wins ? GrowthClass::Log : GrowthClass::Bounded;
    } else {
        fit.cls = GrowthClass::Indeterminate;
    }
    return fit;
}

namespace {

std::string format_double(double v) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, ptr);
}

}  // namespace

void emit_csv(std::ostream& out, const RunResult& result) {
    out << "alg,dist,seed,trial,n,bins,waste_num,waste_den,waste_float,ss_value,"
           "elapsed_ms\n";
    for (const TrialRecord& trial : result.trials) {
        for (const Checkpoint& p : trial.points) {
            out << result.alg << ',' << result.dist_label << ',' << result.seed << ','
                << trial.trial << ',' << p.n << ',' << p.bins << ','
                << p.waste.get_num().get_str() << ',' << p.waste.get_den().get_str()
                << ',' << format_double(p.waste_float) << ',' << p.ss << ','
                << p.elapsed_ms << '\n';
        }
    }
}

void emit_json(std::ostream& out, const RunResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TrialRecord& trial : result.trials) {
        for (const Checkpoint& p : trial.points) {
            rows.push_back({{"alg", result.alg},
                            {"dist", result.dist_label},
                            {"seed", result.seed},
                            {"trial", trial.trial},
                            {"n", p.n},
                            {"bins", p.bins},
                            {"waste_num", p.waste.get_num().get_str()},
                            {"waste_den", p.waste.get_den().get_str()},
                            {"waste_float", p.waste_float},
                            {"ss_value", p.ss},
                            {"elapsed_ms", p.elapsed_ms}});
        }
    }
    out << rows.dump(2) << '\n';
}

void write_output(const RunResult& result, const std::string& path,
                  OutputFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    if (format == OutputFormat::Csv) {
        emit_csv(out, result);
    } else {
        emit_json(out, result);
    }
}

}  // namespace sumsq
