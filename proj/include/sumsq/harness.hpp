#ifndef SUMSQ_HARNESS_HPP
#define SUMSQ_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sumsq/adversary.hpp"
#include "sumsq/distribution.hpp"
#include "sumsq/packers.hpp"
#include "sumsq/rational.hpp"

namespace sumsq {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AdversarySpec {
    std::string policy_id;
    std::vector<DiscreteDistribution> family;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::string alg = "ss";
    std::optional<DiscreteDistribution> dist;
    std::optional<AdversarySpec> adversary;
    std::int64_t n = 1;
    std::vector<std::int64_t> checkpoints;  // empty: geometric default
    int trials = 1;
    std::uint64_t seed = 1;
    // Wall-clock column is zeroed unless enabled, keeping reruns byte-identical.
    bool timings = false;
    // 0 = one worker per hardware thread (capped by trials).
    unsigned max_workers = 0;
};

struct Checkpoint {
    std::int64_t n = 0;
    std::int64_t bins = 0;
    Rational waste;  // imaginary volume counts as waste for tuned packers
    double waste_float = 0;
    std::int64_t ss = 0;
    std::int64_t elapsed_ms = 0;
};

struct TrialRecord {
    int trial = 0;
    std::vector<Checkpoint> points;
};

struct RunResult {
    std::string alg;
    std::string dist_label;
    std::uint64_t seed = 0;
    std::vector<TrialRecord> trials;

    // Mean waste per checkpoint across trials, for growth fitting.
    std::vector<std::pair<std::int64_t, double>> mean_waste() const;
};

// Twelve doubling points ending at n.
std::vector<std::int64_t> geometric_checkpoints(std::int64_t n);

// Instantiates a policy by id: ss, ss_d, ss_prime, srs:<r>, sinf, sminh,
// smaxh, perfect_ss, wss:<weight-id>, approx_ss:<t>, approx_ss_ada:<t>, bf,
// ff, ssf, ss2star, ssstar. Ids that need the distribution (ss_d, approx_ss,
// ssf, ss2star) reject a null dist.
std::unique_ptr<OnlinePacker> make_packer(const std::string& alg, int bin_size,
                                          const DiscreteDistribution* dist,
                                          CounterRng rng);

// Runs all trials (concurrently when hardware allows); trial t draws items
// from stream (seed, 2t) and packer randomness from stream (seed, 2t+1), so
// results do not depend on scheduling.
RunResult run_experiment(const ExperimentConfig& config);

enum class GrowthClass { Bounded, Log, Sqrt, Linear, Indeterminate };

struct GrowthFit {
    GrowthClass cls = GrowthClass::Indeterminate;
    double exponent = 0;        // log-log slope on the upper half
    double log_sse = 0;         // residuals of the a + b*log n fit
    double const_sse = 0;       // residuals of the constant fit
};

std::string growth_class_name(GrowthClass cls);

// Least-squares slope of log W vs log n over the upper half of the series.
// alpha > 0.85: Linear; alpha in [0.35, 0.65]: Sqrt; alpha < 0.35: Log iff the
// log fit beats the constant fit by the documented margin, else Bounded;
// otherwise Indeterminate. Requires >= 5 points spanning >= 2 decades.
GrowthFit fit_growth(const std::vector<std::pair<std::int64_t, double>>& series);

// CSV columns: alg,dist,seed,trial,n,bins,waste_num,waste_den,waste_float,
// ss_value,elapsed_ms. JSON mirrors the rows.
void emit_csv(std::ostream& out, const RunResult& result);
void emit_json(std::ostream& out, const RunResult& result);
void write_output(const RunResult& result, const std::string& path,
                  OutputFormat format);

}  // namespace sumsq

#endif
