#include "sumsq/simplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumsq {

namespace {

using Column = std::vector<std::pair<int, Rational>>;  // (row, coeff)

class RevisedSimplex {
  public:
    explicit RevisedSimplex(const LinearProgram& lp)
        : m_(lp.rows.size()), num_structural_(lp.num_vars) {
        cols_.resize(static_cast<std::size_t>(num_structural_));
        cost_.assign(static_cast<std::size_t>(num_structural_), 0);
        for (int j = 0; j < num_structural_; ++j) {
            cost_[static_cast<std::size_t>(j)] =
                lp.maximize ? -lp.objective[static_cast<std::size_t>(j)]
                            : lp.objective[static_cast<std::size_t>(j)];
        }

        b_.assign(m_, 0);
        slack_col_.assign(m_, -1);
        std::vector<bool> flipped(m_, false);
        for (std::size_t i = 0; i < m_; ++i) {
            const LpRow& row = lp.rows[i];
            bool flip = row.rhs < 0;
            flipped[i] = flip;
            b_[i] = flip ? -row.rhs : row.rhs;
            for (const auto& [var, coeff] : row.coeffs) {
                if (var < 0 || var >= num_structural_) {
                    throw std::invalid_argument("bad var index in LP row");
                }
                cols_[static_cast<std::size_t>(var)].emplace_back(
                    static_cast<int>(i), flip ? -coeff : coeff);
            }
        }
        for (std::size_t j = 0; j < cols_.size(); ++j) compress(cols_[j]);

        // slack columns for LE rows (surplus when the row was flipped)
        for (std::size_t i = 0; i < m_; ++i) {
            if (lp.rows[i].rel != RowRelation::LessEq) continue;
            slack_col_[i] = static_cast<int>(cols_.size());
            cols_.push_back({{static_cast<int>(i), flipped[i] ? Rational(-1) : Rational(1)}});
            cost_.push_back(0);
        }
        first_artificial_ = static_cast<int>(cols_.size());

        basis_.assign(m_, -1);
        if (try_hint(lp)) return;

        // default start: slacks where usable, artificials elsewhere
        binv_identity();
        xb_ = b_;
        for (std::size_t i = 0; i < m_; ++i) {
            if (lp.rows[i].rel == RowRelation::LessEq && !flipped[i]) {
                basis_[i] = slack_col_[i];
            } else {
                basis_[i] = static_cast<int>(cols_.size());
                cols_.push_back({{static_cast<int>(i), Rational(1)}});
                cost_.push_back(0);
            }
        }
    }

    LpStatus run() {
        bool have_artificial = false;
        for (std::size_t i = 0; i < m_; ++i) have_artificial |= is_artificial(basis_[i]);
        if (have_artificial) {
            std::vector<Rational> phase1_cost(cols_.size(), 0);
            for (std::size_t j = static_cast<std::size_t>(first_artificial_);
                 j < cols_.size(); ++j) {
                phase1_cost[j] = 1;
            }
            if (!iterate(phase1_cost, /*phase1=*/true)) {
                throw std::logic_error("phase 1 cannot be unbounded");
            }
            if (objective_of(phase1_cost) != 0) return LpStatus::Infeasible;
        }
        cost_.resize(cols_.size(), Rational(0));
        return iterate(cost_, /*phase1=*/false) ? LpStatus::Optimal : LpStatus::Unbounded;
    }

    Rational objective_value(bool maximize) const {
        Rational v = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < static_cast<int>(cost_.size())) {
                v += cost_[static_cast<std::size_t>(basis_[i])] * xb_[i];
            }
        }
        return maximize ? -v : v;
    }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(static_cast<std::size_t>(num_structural_), 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= 0 && basis_[i] < num_structural_) {
                x[static_cast<std::size_t>(basis_[i])] = xb_[i];
            }
        }
        return x;
    }

  private:
    static void compress(Column& col) {
        // merge duplicate row entries, drop zeros
        Column merged;
        for (auto& [row, coeff] : col) {
            bool found = false;
            for (auto& [mrow, mcoeff] : merged) {
                if (mrow == row) {
                    mcoeff += coeff;
                    found = true;
                    break;
                }
            }
            if (!found) merged.emplace_back(row, coeff);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& e) { return e.second == 0; }),
                     merged.end());
        col = std::move(merged);
    }

    bool is_artificial(int col) const { return col >= first_artificial_; }

    void binv_identity() {
        binv_.assign(m_, std::vector<Rational>(m_, 0));
        for (std::size_t i = 0; i < m_; ++i) binv_[i][i] = 1;
    }

    // Builds the inverse of the hinted basis by Gauss-Jordan; returns false if
    // the hint is malformed, singular or infeasible.
    bool try_hint(const LinearProgram& lp) {
        if (lp.basis_hint.size() != m_) return false;
        std::vector<int> hint(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            int c = lp.basis_hint[i];
            if (c == -1) {
                if (slack_col_[i] < 0) return false;
                hint[i] = slack_col_[i];
            } else if (c >= 0 && c < num_structural_) {
                hint[i] = c;
            } else {
                return false;
            }
        }
        std::vector<std::vector<Rational>> mat(m_, std::vector<Rational>(m_, 0));
        for (std::size_t i = 0; i < m_; ++i) {
            for (const auto& [row, coeff] : cols_[static_cast<std::size_t>(hint[i])]) {
                mat[static_cast<std::size_t>(row)][i] = coeff;
            }
        }
        binv_identity();
        for (std::size_t k = 0; k < m_; ++k) {
            std::size_t pivot = k;
            while (pivot < m_ && mat[pivot][k] == 0) ++pivot;
            if (pivot == m_) return false;
            std::swap(mat[pivot], mat[k]);
            std::swap(binv_[pivot], binv_[k]);
            Rational inv = mat[k][k];
            if (inv != 1) {
                for (std::size_t j = 0; j < m_; ++j) {
                    if (mat[k][j] != 0) mat[k][j] /= inv;
                    if (binv_[k][j] != 0) binv_[k][j] /= inv;
                }
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == k || mat[i][k] == 0) continue;
                Rational factor = mat[i][k];
                for (std::size_t j = 0; j < m_; ++j) {
                    if (mat[k][j] != 0) mat[i][j] -= factor * mat[k][j];
                    if (binv_[k][j] != 0) binv_[i][j] -= factor * binv_[k][j];
                }
            }
        }
        std::vector<Rational> xb(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t r = 0; r < m_; ++r) {
                if (binv_[i][r] != 0 && b_[r] != 0) xb[i] += binv_[i][r] * b_[r];
            }
            if (xb[i] < 0) return false;
        }
        // hinted basis maps row i to hint[i]
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = hint[i];
        xb_ = std::move(xb);
        return true;
    }

    Rational objective_of(const std::vector<Rational>& cost) const {
        Rational v = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            v += cost[static_cast<std::size_t>(basis_[i])] * xb_[i];
        }
        return v;
    }

    // One simplex phase; returns false on unboundedness.
    bool iterate(const std::vector<Rational>& cost, bool phase1) {
        const long stall_limit = 4L * static_cast<long>(cols_.size() + m_);
        long stall = 0;
        bool bland = false;
        Rational last_value = objective_of(cost);
        std::vector<Rational> y(m_), w(m_);
        std::vector<char> in_basis(cols_.size(), 0);
        for (std::size_t i = 0; i < m_; ++i) in_basis[static_cast<std::size_t>(basis_[i])] = 1;
        // an artificial that leaves the basis has served its purpose
        std::vector<char> banned(cols_.size(), 0);

        for (long iter = 0;; ++iter) {
            if (iter > 2000000L) throw std::runtime_error("simplex iteration cap");

            // y = c_B B^-1
            for (std::size_t r = 0; r < m_; ++r) y[r] = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                const Rational& cb = cost[static_cast<std::size_t>(basis_[i])];
                if (cb == 0) continue;
                for (std::size_t r = 0; r < m_; ++r) {
                    if (binv_[i][r] != 0) y[r] += cb * binv_[i][r];
                }
            }

            int entering = -1;
            Rational best_reduced = 0;
            std::size_t scan_limit = phase1 ? cols_.size()
                                            : static_cast<std::size_t>(first_artificial_);
            for (std::size_t j = 0; j < scan_limit; ++j) {
                if (in_basis[j] || banned[j]) continue;
                Rational reduced = cost[j];
                for (const auto& [row, coeff] : cols_[j]) {
                    if (y[static_cast<std::size_t>(row)] != 0) {
                        reduced -= y[static_cast<std::size_t>(row)] * coeff;
                    }
                }
                if (reduced < 0 && (entering < 0 || reduced < best_reduced)) {
                    entering = static_cast<int>(j);
                    best_reduced = reduced;
                    if (bland) break;  // first eligible index
                }
            }
            if (entering < 0) return true;

            // w = B^-1 a_q
            for (std::size_t i = 0; i < m_; ++i) w[i] = 0;
            for (const auto& [row, coeff] : cols_[static_cast<std::size_t>(entering)]) {
                for (std::size_t i = 0; i < m_; ++i) {
                    if (binv_[i][static_cast<std::size_t>(row)] != 0) {
                        w[i] += binv_[i][static_cast<std::size_t>(row)] * coeff;
                    }
                }
            }

            // leaving row: drive basic artificials out first (theta = 0 swap
            // keeps them at zero), otherwise the usual min-ratio rule
            std::size_t leaving = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (is_artificial(basis_[i]) && w[i] != 0 && xb_[i] == 0) {
                    leaving = i;
                    break;
                }
            }
            if (leaving == m_) {
                Rational best_ratio;
                for (std::size_t i = 0; i < m_; ++i) {
                    if (w[i] <= 0) continue;
                    Rational ratio_i = xb_[i] / w[i];
                    bool better;
                    if (leaving == m_ || ratio_i < best_ratio) {
                        better = true;
                    } else if (ratio_i > best_ratio) {
                        better = false;
                    } else if (bland) {
                        better = basis_[i] < basis_[leaving];
                    } else {
                        // among ties prefer the largest pivot element; it
                        // noticeably reduces degenerate churn on flow LPs
                        better = w[i] > w[leaving] ||
                                 (w[i] == w[leaving] && basis_[i] < basis_[leaving]);
                    }
                    if (better) {
                        leaving = i;
                        best_ratio = ratio_i;
                    }
                }
            }
            if (leaving == m_) return false;  // unbounded

            // pivot: update x_B, B^-1 and the basis
            Rational pivot = w[leaving];
            Rational theta = xb_[leaving] / pivot;
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == leaving) continue;
                if (w[i] != 0) xb_[i] -= theta * w[i];
            }
            xb_[leaving] = theta;
            if (pivot != 1) {
                for (std::size_t r = 0; r < m_; ++r) {
                    if (binv_[leaving][r] != 0) binv_[leaving][r] /= pivot;
                }
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == leaving || w[i] == 0) continue;
                const Rational& factor = w[i];
                for (std::size_t r = 0; r < m_; ++r) {
                    if (binv_[leaving][r] != 0) binv_[i][r] -= factor * binv_[leaving][r];
                }
            }
            in_basis[static_cast<std::size_t>(basis_[leaving])] = 0;
            if (is_artificial(basis_[leaving])) {
                banned[static_cast<std::size_t>(basis_[leaving])] = 1;
            }
            in_basis[static_cast<std::size_t>(entering)] = 1;
            basis_[leaving] = entering;

            Rational value = objective_of(cost);
            if (value != last_value) {
                last_value = value;
                stall = 0;
                bland = false;
            } else if (++stall > stall_limit) {
                bland = true;
            }
        }
    }

    std::size_t m_;
    int num_structural_;
    int first_artificial_ = 0;
    std::vector<Column> cols_;
    std::vector<Rational> cost_;
    std::vector<Rational> b_;
    std::vector<int> slack_col_;
    std::vector<int> basis_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<Rational> xb_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    if (lp.objective.size() != static_cast<std::size_t>(lp.num_vars)) {
        throw std::invalid_argument("objective length mismatch");
    }
    RevisedSimplex simplex(lp);
    LpResult result;
    result.status = simplex.run();
    if (result.status == LpStatus::Optimal) {
        result.objective = simplex.objective_value(lp.maximize);
        result.solution = simplex.solution();
    }
    return result;
}

}  // namespace sumsq
