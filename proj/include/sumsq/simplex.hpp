#ifndef SUMSQ_SIMPLEX_HPP
#define SUMSQ_SIMPLEX_HPP

#include <utility>
#include <vector>

#include "sumsq/rational.hpp"

namespace sumsq {

enum class RowRelation { LessEq, Eq };

struct LpRow {
    std::vector<std::pair<int, Rational>> coeffs;  // (variable, coefficient)
    RowRelation rel = RowRelation::LessEq;
    Rational rhs = 0;
};

// min (or max) c.x subject to rows and x >= 0.
struct LinearProgram {
    int num_vars = 0;
    bool maximize = false;
    std::vector<Rational> objective;
    std::vector<LpRow> rows;
    // Optional starting basis, one entry per row: a structural variable index,
    // or -1 for the row's own slack. Ignored (with a phase-1 start instead)
    // unless it forms a feasible basis.
    std::vector<int> basis_hint;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational objective = 0;
    std::vector<Rational> solution;
};

// Revised simplex with a dense basis inverse, in exact rational arithmetic.
// Pricing is most-negative reduced cost; a persistent degenerate stall
// switches to Bland's rule until the objective moves again, so termination is
// guaranteed without perturbation.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace sumsq

#endif
