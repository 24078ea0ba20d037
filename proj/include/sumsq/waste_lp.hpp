#ifndef SUMSQ_WASTE_LP_HPP
#define SUMSQ_WASTE_LP_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumsq/distribution.hpp"
#include "sumsq/rational.hpp"
#include "sumsq/simplex.hpp"

namespace sumsq {

struct NotPerfectlyPackable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The flow LP whose optimum c(F) is B times the asymptotic optimal waste per
// item: variables v(j,h) are the rates at which size s_j enters bins of level
// h, levels must be created at least as fast as they disappear, and the
// objective charges each net level surplus its gap B-h. Probabilities are
// scaled to integers by their common denominator before solving and results
// are scaled back, so the tableau starts integral.
class WasteLp {
  public:
    explicit WasteLp(const DiscreteDistribution& dist);

    const DiscreteDistribution& dist() const { return dist_; }
    const LinearProgram& lp() const { return lp_; }
    // Column of v(j,h), or -1 where the variable is fixed to zero (s_j > B-h).
    int var(int j, int h) const { return var_index_[static_cast<std::size_t>(j)][static_cast<std::size_t>(h)]; }
    const Integer& denominator() const { return denominator_; }
    int num_flux_rows() const { return dist_.bin_size() - 1; }

  private:
    DiscreteDistribution dist_;
    LinearProgram lp_;
    std::vector<std::vector<int>> var_index_;
    Integer denominator_;
};

struct LpSolution {
    Rational objective;                         // c(F)
    std::vector<std::vector<Rational>> values;  // v[j][h], J x B, fixed vars 0
};

// Surplus rate of bins stuck at level h, and their total.
struct GapRates {
    std::vector<Rational> delta;  // index 1..B-1 (index 0 unused)
    Rational total;               // T
};

struct InteriorValue {
    bool unbounded = false;
    Rational value = 0;  // c_i(F) when bounded

    bool positive() const { return unbounded || value > 0; }
};

enum class WasteClass { BoundedWaste, SqrtWaste, LinearWaste };

struct Classification {
    WasteClass cls;
    Rational c;
    // c_i(F) per size index; entries are missing when classification
    // stopped at the first boundary witness.
    std::vector<std::optional<InteriorValue>> interior;
};

std::string waste_class_name(WasteClass cls);

LpSolution solve_waste_lp(const WasteLp& lp);
LpSolution solve_waste_lp(const DiscreteDistribution& dist);

// c_i(F) for one size index (0-based); requires c(F) = 0.
InteriorValue interior_value(const WasteLp& lp, int i);

// All J interior values. Throws NotPerfectlyPackable when c(F) > 0.
std::vector<InteriorValue> interior_values(const DiscreteDistribution& dist);

GapRates gap_rates(const WasteLp& lp, const LpSolution& solution);
GapRates gap_rates(const DiscreteDistribution& dist, const LpSolution& solution);

// LinearWaste iff c > 0; otherwise BoundedWaste iff every c_i > 0. With
// all_interior the full c_i vector is computed even after a zero is found.
Classification classify(const DiscreteDistribution& dist, bool all_interior = false);

// Integer-scaled packing recipe read off an optimal solution: scale N is the
// lcm of the value denominators; following the instructions level by level
// packs N items into `bins` bins with exactly gap_units = N*c(F) empty space.
struct PackingTemplate {
    struct Instruction {
        int size;
        int level;
        Integer count;
    };
    Integer scale;
    std::vector<Instruction> instructions;
    Integer bins;
    Integer gap_units;
};

PackingTemplate ideal_packing_template(const DiscreteDistribution& dist,
                                       const LpSolution& solution);

}  // namespace sumsq

#endif
