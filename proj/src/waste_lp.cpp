#include "sumsq/waste_lp.hpp"

#include <algorithm>

namespace sumsq {

WasteLp::WasteLp(const DiscreteDistribution& dist) : dist_(dist) {
    int b = dist.bin_size();
    int num_sizes = dist.num_sizes();

    denominator_ = 1;
    for (const Rational& p : dist.probs()) {
        mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(),
                p.get_den().get_mpz_t());
    }

    var_index_.assign(static_cast<std::size_t>(num_sizes),
                      std::vector<int>(static_cast<std::size_t>(b), -1));
    int next = 0;
    for (int j = 0; j < num_sizes; ++j) {
        for (int h = 0; h + dist.size_at(j) <= b; ++h) {
            var_index_[static_cast<std::size_t>(j)][static_cast<std::size_t>(h)] = next++;
        }
    }
    lp_.num_vars = next;
    lp_.maximize = false;
    lp_.objective.assign(static_cast<std::size_t>(next), 0);
    for (int j = 0; j < num_sizes; ++j) {
        int s = dist.size_at(j);
        for (int h = 0; h + s <= b; ++h) {
            lp_.objective[static_cast<std::size_t>(var(j, h))] = h == 0 ? b - s : -s;
        }
    }

    // One equality per size: everything gets packed.
    for (int j = 0; j < num_sizes; ++j) {
        LpRow row;
        row.rel = RowRelation::Eq;
        row.rhs = Rational(denominator_) * dist.prob_at(j);
        for (int h = 0; h + dist.size_at(j) <= b; ++h) {
            row.coeffs.emplace_back(var(j, h), 1);
        }
        lp_.rows.push_back(std::move(row));
    }
    // One inequality per level: outflow at most inflow.
    for (int h = 1; h < b; ++h) {
        LpRow row;
        row.rel = RowRelation::LessEq;
        row.rhs = 0;
        for (int j = 0; j < num_sizes; ++j) {
            if (var(j, h) >= 0) row.coeffs.emplace_back(var(j, h), 1);
            int source = h - dist.size_at(j);
            if (source >= 0) row.coeffs.emplace_back(var(j, source), -1);
        }
        lp_.rows.push_back(std::move(row));
    }

    // Feasible start: route every size into empty bins, slack on each level.
    for (int j = 0; j < num_sizes; ++j) lp_.basis_hint.push_back(var(j, 0));
    for (int h = 1; h < b; ++h) lp_.basis_hint.push_back(-1);
}

namespace {

LpSolution unpack_solution(const WasteLp& lp, const LpResult& result) {
    const DiscreteDistribution& dist = lp.dist();
    LpSolution out;
    Rational d(lp.denominator());
    out.objective = result.objective / d;
    out.values.assign(static_cast<std::size_t>(dist.num_sizes()),
                      std::vector<Rational>(static_cast<std::size_t>(dist.bin_size()), 0));
    for (int j = 0; j < dist.num_sizes(); ++j) {
        for (int h = 0; h < dist.bin_size(); ++h) {
            int col = lp.var(j, h);
            if (col >= 0) {
                out.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(h)] =
                    result.solution[static_cast<std::size_t>(col)] / d;
            }
        }
    }
    return out;
}

}  // namespace

LpSolution solve_waste_lp(const WasteLp& lp) {
    LpResult result = solve_lp(lp.lp());
    if (result.status != LpStatus::Optimal) {
        throw std::logic_error("waste LP must be solvable");
    }
    LpSolution solution = unpack_solution(lp, result);
    int b = lp.dist().bin_size();
    if (solution.objective < 0 ||
        (b > 1 && solution.objective >= b - 1) ||
        (b == 1 && solution.objective != 0)) {
        throw std::logic_error("optimal waste rate out of [0, B-1)");
    }
    return solution;
}

LpSolution solve_waste_lp(const DiscreteDistribution& dist) {
    return solve_waste_lp(WasteLp(dist));
}

InteriorValue interior_value(const WasteLp& base, int i) {
    const DiscreteDistribution& dist = base.dist();
    LinearProgram lp = base.lp();
    // Flux inequalities become equalities; size row i gains slack x_i; the
    // goal flips to pushing as much extra mass of size i as possible.
    for (std::size_t r = static_cast<std::size_t>(dist.num_sizes()); r < lp.rows.size(); ++r) {
        lp.rows[r].rel = RowRelation::Eq;
    }
    int x = lp.num_vars++;
    lp.rows[static_cast<std::size_t>(i)].coeffs.emplace_back(x, -1);
    lp.objective.assign(static_cast<std::size_t>(lp.num_vars), 0);
    lp.objective[static_cast<std::size_t>(x)] = 1;
    lp.maximize = true;

    LpResult result = solve_lp(lp);
    if (result.status == LpStatus::Unbounded) return InteriorValue{true, 0};
    if (result.status == LpStatus::Infeasible) {
        // Cannot happen for c(F) = 0: x_i = 0 with the optimal flow is feasible.
        throw std::logic_error("interior LP infeasible with c(F) = 0");
    }
    return InteriorValue{false, result.objective / Rational(base.denominator())};
}

std::vector<InteriorValue> interior_values(const DiscreteDistribution& dist) {
    WasteLp lp(dist);
    if (solve_waste_lp(lp).objective > 0) {
        throw NotPerfectlyPackable("c(F) > 0, interior values undefined");
    }
    std::vector<InteriorValue> out;
    for (int i = 0; i < dist.num_sizes(); ++i) out.push_back(interior_value(lp, i));
    return out;
}

GapRates gap_rates(const WasteLp& lp, const LpSolution& solution) {
    return gap_rates(lp.dist(), solution);
}

GapRates gap_rates(const DiscreteDistribution& dist, const LpSolution& solution) {
    int b = dist.bin_size();
    GapRates rates;
    rates.delta.assign(static_cast<std::size_t>(b), 0);
    rates.total = 0;
    for (int h = 1; h < b; ++h) {
        Rational d = 0;
        for (int j = 0; j < dist.num_sizes(); ++j) {
            int source = h - dist.size_at(j);
            if (source >= 0) d += solution.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(source)];
            d -= solution.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(h)];
        }
        rates.delta[static_cast<std::size_t>(h)] = d;
        rates.total += d;
    }
    return rates;
}

std::string waste_class_name(WasteClass cls) {
    switch (cls) {
        case WasteClass::BoundedWaste: return "bounded";
        case WasteClass::SqrtWaste: return "sqrt";
        case WasteClass::LinearWaste: return "linear";
    }
    return "?";
}

Classification classify(const DiscreteDistribution& dist, bool all_interior) {
    WasteLp lp(dist);
    LpSolution solution = solve_waste_lp(lp);
    Classification result;
    result.c = solution.objective;
    result.interior.assign(static_cast<std::size_t>(dist.num_sizes()), std::nullopt);
    if (result.c > 0) {
        result.cls = WasteClass::LinearWaste;
        return result;
    }
    bool boundary = false;
    // Largest sizes are the likeliest boundary witnesses; probing them first
    // lets the common SqrtWaste case stop after one interior solve.
    for (int i = dist.num_sizes() - 1; i >= 0; --i) {
        InteriorValue v = interior_value(lp, i);
        result.interior[static_cast<std::size_t>(i)] = v;
        if (!v.positive()) {
            boundary = true;
            if (!all_interior) break;
        }
    }
    result.cls = boundary ? WasteClass::SqrtWaste : WasteClass::BoundedWaste;
    return result;
}

PackingTemplate ideal_packing_template(const DiscreteDistribution& dist,
                                       const LpSolution& solution) {
    int b = dist.bin_size();
    PackingTemplate tpl;
    tpl.scale = 1;
    for (const auto& row : solution.values) {
        for (const Rational& v : row) {
            mpz_lcm(tpl.scale.get_mpz_t(), tpl.scale.get_mpz_t(),
                    v.get_den().get_mpz_t());
        }
    }
    Integer started = 0;
    for (int h = 0; h < b; ++h) {
        for (int j = 0; j < dist.num_sizes(); ++j) {
            Rational scaled = Rational(tpl.scale) *
                              solution.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(h)];
            Integer count = scaled.get_num();  // denominator is 1 by scale choice
            if (count == 0) continue;
            tpl.instructions.push_back({dist.size_at(j), h, count});
            if (h == 0) started += count;
        }
    }
    tpl.bins = started;
    Rational gap = Rational(tpl.scale) * solution.objective;
    tpl.gap_units = gap.get_num();
    return tpl;
}

}  // namespace sumsq
