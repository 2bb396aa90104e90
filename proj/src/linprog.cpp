#include "ewg/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace ewg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDualTol = 1e-9;

enum class VarState : char { Basic, AtLower, AtUpper };

// Bounded-variable primal simplex on the equality system [A | slacks] x = b.
// Artificial columns carry phase 1; they are fixed to zero afterwards.
class Simplex {
public:
    explicit Simplex(const LinearProgram& p) : prog_(p) { build(); }

    LpSolution run() {
        LpSolution sol;
        for (int j = 0; j < total_; ++j) {
            if (lower_[j] > upper_[j]) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
        }
        if (m_ > 0) {
            phase_ = 1;
            if (!iterate()) throw MalformedProgram("simplex failed to terminate in phase 1");
            if (phase1_objective() > 1e-7 * (1.0 + rhs_scale_)) {
                sol.status = LpStatus::Infeasible;
                sol.iterations = iterations_;
                return sol;
            }
            retire_artificials();
        }
        phase_ = 2;
        if (!iterate()) throw MalformedProgram("simplex failed to terminate in phase 2");
        if (unbounded_) {
            sol.status = LpStatus::Unbounded;
            sol.iterations = iterations_;
            return sol;
        }
        sol.status = LpStatus::Optimal;
        sol.iterations = iterations_;
        sol.values.assign(x_.begin(), x_.begin() + prog_.n_vars);
        double obj = prog_.objective_offset;
        for (int j = 0; j < prog_.n_vars; ++j) obj += prog_.objective[j] * x_[j];
        sol.objective_value = obj;
        return sol;
    }

private:
    const LinearProgram& prog_;
    int n_ = 0;       // structural
    int m_ = 0;       // rows
    int slack0_ = 0;  // first slack column
    int art0_ = 0;    // first artificial column
    int total_ = 0;
    int phase_ = 1;
    bool unbounded_ = false;
    bool bland_ = false;
    int iterations_ = 0;
    int stalled_ = 0;
    double rhs_scale_ = 0.0;

    std::vector<std::vector<double>> cols_;  // dense columns of [A | I_slack]
    std::vector<double> rhs_;
    std::vector<double> lower_, upper_;
    std::vector<double> cost_;  // phase-2 cost, zero on slacks/artificials
    std::vector<double> x_;
    std::vector<VarState> state_;
    std::vector<int> basis_;                 // column index per row
    std::vector<std::vector<double>> binv_;  // dense basis inverse
    std::vector<int> art_sign_;

    void build() {
        n_ = prog_.n_vars;
        m_ = static_cast<int>(prog_.constraints.size());
        if (static_cast<int>(prog_.objective.size()) != n_ ||
            static_cast<int>(prog_.lower.size()) != n_ ||
            static_cast<int>(prog_.upper.size()) != n_) {
            throw MalformedProgram("objective or bound vector length does not match n_vars");
        }
        slack0_ = n_;
        art0_ = n_ + m_;
        total_ = n_ + 2 * m_;

        cols_.assign(n_ + m_, std::vector<double>(m_, 0.0));
        rhs_.assign(m_, 0.0);
        lower_.assign(total_, 0.0);
        upper_.assign(total_, kInf);
        cost_.assign(total_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (!std::isfinite(prog_.lower[j]))
                throw MalformedProgram("variable lower bounds must be finite");
            lower_[j] = prog_.lower[j];
            upper_[j] = prog_.upper[j];
            cost_[j] = prog_.objective[j];
        }
        for (int i = 0; i < m_; ++i) {
            const Constraint& c = prog_.constraints[i];
            if (static_cast<int>(c.coeffs.size()) != n_)
                throw MalformedProgram("constraint row length does not match n_vars");
            if (!std::isfinite(c.rhs)) throw MalformedProgram("constraint rhs must be finite");
            // Normalize >= rows to <= by negation; every row then takes a
            // slack in [0, inf) or [0, 0] for equalities.
            double sign = (c.rel == Relation::GreaterEq) ? -1.0 : 1.0;
            for (int j = 0; j < n_; ++j) cols_[j][i] = sign * c.coeffs[j];
            rhs_[i] = sign * c.rhs;
            cols_[slack0_ + i][i] = 1.0;
            if (c.rel == Relation::Equal) upper_[slack0_ + i] = 0.0;
            rhs_scale_ = std::max(rhs_scale_, std::abs(rhs_[i]));
        }

        // Start: structural and slack columns nonbasic at a finite bound,
        // artificials basic at the absolute residual.
        x_.assign(total_, 0.0);
        state_.assign(total_, VarState::AtLower);
        for (int j = 0; j < n_ + m_; ++j) x_[j] = lower_[j];

        std::vector<double> resid = rhs_;
        for (int j = 0; j < n_ + m_; ++j) {
            if (x_[j] != 0.0)
                for (int i = 0; i < m_; ++i) resid[i] -= cols_[j][i] * x_[j];
        }
        basis_.resize(m_);
        art_sign_.resize(m_);
        binv_.assign(m_, std::vector<double>(m_, 0.0));
        for (int i = 0; i < m_; ++i) {
            art_sign_[i] = resid[i] >= 0.0 ? 1 : -1;
            basis_[i] = art0_ + i;
            state_[art0_ + i] = VarState::Basic;
            x_[art0_ + i] = std::abs(resid[i]);
            binv_[i][i] = static_cast<double>(art_sign_[i]);
        }
    }

    double column(int j, int i) const {
        if (j >= art0_) return (j - art0_ == i) ? static_cast<double>(art_sign_[i]) : 0.0;
        return cols_[j][i];
    }

    double reduced_cost(int j, const std::vector<double>& y) const {
        double d = phase_ == 1 ? (j >= art0_ ? 1.0 : 0.0) : cost_[j];
        if (j >= art0_) {
            d -= y[j - art0_] * static_cast<double>(art_sign_[j - art0_]);
        } else {
            const std::vector<double>& col = cols_[j];
            for (int i = 0; i < m_; ++i) d -= y[i] * col[i];
        }
        return d;
    }

    double phase1_objective() const {
        double v = 0.0;
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= art0_) v += x_[basis_[i]];
        return v;
    }

    void compute_duals(std::vector<double>& y) const {
        y.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            int b = basis_[i];
            double cb = phase_ == 1 ? (b >= art0_ ? 1.0 : 0.0) : cost_[b];
            if (cb == 0.0) continue;
            for (int k = 0; k < m_; ++k) y[k] += cb * binv_[i][k];
        }
    }

    // Returns false only on iteration-cap blowout (treated as a caller bug).
    bool iterate() {
        const long max_iter = 20000L + 200L * static_cast<long>(n_ + m_) * (n_ + m_);
        std::vector<double> y, w;
        long local = 0;
        while (true) {
            if (++local > max_iter) return false;
            compute_duals(y);

            int entering = -1;
            double best = 0.0;
            double sigma = 1.0;
            for (int j = 0; j < n_ + m_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (lower_[j] == upper_[j]) continue;  // fixed
                double d = reduced_cost(j, y);
                if (state_[j] == VarState::AtLower && d < -kDualTol) {
                    double score = bland_ ? 1.0 : -d;
                    if (entering < 0 || score > best + kPivotTol) {
                        entering = j;
                        best = score;
                        sigma = 1.0;
                        if (bland_) break;
                    }
                } else if (state_[j] == VarState::AtUpper && d > kDualTol) {
                    double score = bland_ ? 1.0 : d;
                    if (entering < 0 || score > best + kPivotTol) {
                        entering = j;
                        best = score;
                        sigma = -1.0;
                        if (bland_) break;
                    }
                }
            }
            if (entering < 0) return true;  // optimal for this phase

            // w = Binv * A_entering
            w.assign(m_, 0.0);
            for (int i = 0; i < m_; ++i) {
                double acc = 0.0;
                for (int k = 0; k < m_; ++k) acc += binv_[i][k] * column(entering, k);
                w[i] = acc;
            }

            // Ratio test: basic variables move by -sigma * w per unit step.
            double t_max = kInf;
            int leave_row = -1;
            double leave_bound = 0.0;  // bound the leaving variable hits
            for (int i = 0; i < m_; ++i) {
                double delta = -sigma * w[i];
                int b = basis_[i];
                double limit = kInf, hit = 0.0;
                if (delta > kPivotTol) {
                    if (std::isfinite(upper_[b])) {
                        limit = (upper_[b] - x_[b]) / delta;
                        hit = upper_[b];
                    }
                } else if (delta < -kPivotTol) {
                    limit = (x_[b] - lower_[b]) / (-delta);
                    hit = lower_[b];
                } else {
                    continue;
                }
                limit = std::max(limit, 0.0);
                if (limit < t_max - kPivotTol ||
                    (limit < t_max + kPivotTol && (leave_row < 0 || b < basis_[leave_row]))) {
                    t_max = limit;
                    leave_row = i;
                    leave_bound = hit;
                }
            }
            // The entering variable may hit its own opposite bound first.
            double span = upper_[entering] - lower_[entering];  // may be inf
            bool bound_flip = std::isfinite(span) && (leave_row < 0 || span < t_max - kPivotTol);
            if (!bound_flip && leave_row < 0) {
                if (phase_ == 1) return false;  // phase 1 is bounded below
                unbounded_ = true;
                return true;
            }
            if (bound_flip) t_max = span;

            ++iterations_;
            if (t_max <= kPivotTol) {
                if (++stalled_ > 2 * (n_ + m_)) bland_ = true;
            } else {
                stalled_ = 0;
            }

            // Apply the step.
            for (int i = 0; i < m_; ++i) x_[basis_[i]] += -sigma * w[i] * t_max;
            x_[entering] += sigma * t_max;

            if (bound_flip) {
                state_[entering] =
                    state_[entering] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
                x_[entering] = state_[entering] == VarState::AtLower ? lower_[entering]
                                                                     : upper_[entering];
                continue;
            }

            int leaving = basis_[leave_row];
            x_[leaving] = leave_bound;
            state_[leaving] =
                leave_bound == lower_[leaving] ? VarState::AtLower : VarState::AtUpper;
            state_[entering] = VarState::Basic;
            basis_[leave_row] = entering;
            pivot_update(leave_row, w);
            if (iterations_ % 128 == 0) refactorize();
        }
    }

    void pivot_update(int r, const std::vector<double>& w) {
        double piv = w[r];
        std::vector<double>& row_r = binv_[r];
        for (int k = 0; k < m_; ++k) row_r[k] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == r || std::abs(w[i]) < 1e-14) continue;
            double f = w[i];
            std::vector<double>& row_i = binv_[i];
            for (int k = 0; k < m_; ++k) row_i[k] -= f * row_r[k];
        }
    }

    void refactorize() {
        // Gauss-Jordan on the basis matrix with partial pivoting.
        std::vector<std::vector<double>> mat(m_, std::vector<double>(m_, 0.0));
        for (int i = 0; i < m_; ++i)
            for (int c = 0; c < m_; ++c) mat[i][c] = column(basis_[c], i);
        std::vector<std::vector<double>> inv(m_, std::vector<double>(m_, 0.0));
        for (int i = 0; i < m_; ++i) inv[i][i] = 1.0;
        for (int c = 0; c < m_; ++c) {
            int piv = c;
            for (int i = c + 1; i < m_; ++i)
                if (std::abs(mat[i][c]) > std::abs(mat[piv][c])) piv = i;
            if (std::abs(mat[piv][c]) < 1e-12) return;  // keep updated inverse
            std::swap(mat[piv], mat[c]);
            std::swap(inv[piv], inv[c]);
            double d = mat[c][c];
            for (int k = 0; k < m_; ++k) {
                mat[c][k] /= d;
                inv[c][k] /= d;
            }
            for (int i = 0; i < m_; ++i) {
                if (i == c) continue;
                double f = mat[i][c];
                if (f == 0.0) continue;
                for (int k = 0; k < m_; ++k) {
                    mat[i][k] -= f * mat[c][k];
                    inv[i][k] -= f * inv[c][k];
                }
            }
        }
        // Rows of the inverse are permuted per column order of the basis; the
        // elimination above kept basis column c in position c, so inv maps
        // directly.
        binv_ = inv;
        recompute_basic_values();
    }

    void recompute_basic_values() {
        std::vector<double> resid = rhs_;
        for (int j = 0; j < total_; ++j) {
            if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
            for (int i = 0; i < m_; ++i) resid[i] -= column(j, i) * x_[j];
        }
        for (int i = 0; i < m_; ++i) {
            double acc = 0.0;
            for (int k = 0; k < m_; ++k) acc += binv_[i][k] * resid[k];
            x_[basis_[i]] = acc;
        }
    }

    void retire_artificials() {
        // Pivot zero-valued artificials out of the basis where a usable
        // column exists; leftover rows are redundant.
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < art0_) continue;
            int replacement = -1;
            double best = 0.0;
            for (int j = 0; j < n_ + m_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                double acc = 0.0;
                for (int k = 0; k < m_; ++k) acc += binv_[i][k] * cols_[j][k];
                if (std::abs(acc) > std::max(best, 1e-7)) {
                    best = std::abs(acc);
                    replacement = j;
                }
            }
            if (replacement < 0) continue;
            std::vector<double> w(m_, 0.0);
            for (int r = 0; r < m_; ++r) {
                double acc = 0.0;
                for (int k = 0; k < m_; ++k) acc += binv_[r][k] * cols_[replacement][k];
                w[r] = acc;
            }
            int art = basis_[i];
            state_[art] = VarState::AtLower;
            x_[art] = 0.0;
            state_[replacement] = VarState::Basic;
            basis_[i] = replacement;
            pivot_update(i, w);
            recompute_basic_values();
        }
        // No artificial may move again.
        for (int i = 0; i < m_; ++i) upper_[art0_ + i] = 0.0;
    }
};

}  // namespace

void LinearProgram::resize(int n) {
    n_vars = n;
    objective.assign(n, 0.0);
    lower.assign(n, 0.0);
    upper.assign(n, std::numeric_limits<double>::infinity());
    is_integer.assign(n, 0);
}

void LinearProgram::add_constraint(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back(Constraint{std::move(coeffs), rel, rhs});
}

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

LpSolution solve_lp(const LinearProgram& p) {
    Simplex solver(p);
    return solver.run();
}

ResidualReport check_solution(const LinearProgram& p, const LpSolution& sol) {
    ResidualReport r;
    if (static_cast<int>(sol.values.size()) != p.n_vars)
        throw MalformedProgram("solution vector length does not match program");
    for (const Constraint& c : p.constraints) {
        double lhs = 0.0;
        for (int j = 0; j < p.n_vars; ++j) lhs += c.coeffs[j] * sol.values[j];
        double viol = 0.0;
        switch (c.rel) {
            case Relation::LessEq: viol = lhs - c.rhs; break;
            case Relation::GreaterEq: viol = c.rhs - lhs; break;
            case Relation::Equal: viol = std::abs(lhs - c.rhs); break;
        }
        r.max_constraint_residual = std::max(r.max_constraint_residual, viol);
    }
    for (int j = 0; j < p.n_vars; ++j) {
        r.max_bound_violation = std::max(r.max_bound_violation, p.lower[j] - sol.values[j]);
        r.max_bound_violation = std::max(r.max_bound_violation, sol.values[j] - p.upper[j]);
    }
    r.max_constraint_residual = std::max(r.max_constraint_residual, 0.0);
    r.max_bound_violation = std::max(r.max_bound_violation, 0.0);
    double obj = p.objective_offset;
    for (int j = 0; j < p.n_vars; ++j) obj += p.objective[j] * sol.values[j];
    r.objective_delta = std::abs(obj - sol.objective_value);
    return r;
}

void dump_program(const LinearProgram& p, std::ostream& out) {
    out << "minimize";
    for (int j = 0; j < p.n_vars; ++j) out << " " << p.objective[j] << "*x" << j;
    if (p.objective_offset != 0.0) out << " + " << p.objective_offset;
    out << "\n";
    for (const Constraint& c : p.constraints) {
        for (int j = 0; j < p.n_vars; ++j) out << c.coeffs[j] << " ";
        out << (c.rel == Relation::LessEq ? "<=" : c.rel == Relation::Equal ? "==" : ">=");
        out << " " << c.rhs << "\n";
    }
    for (int j = 0; j < p.n_vars; ++j) {
        out << "x" << j << " in [" << p.lower[j] << ", " << p.upper[j] << "]"
            << (p.is_integer[j] ? " integer" : "") << "\n";
    }
}

}  // namespace ewg
