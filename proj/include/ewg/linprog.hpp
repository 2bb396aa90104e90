#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewg {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

// Dense LP in minimization form. Integrality marks are carried here but only
// honored by solve_milp; solve_lp treats every variable as continuous.
struct LinearProgram {
    int n_vars = 0;
    std::vector<double> objective;
    double objective_offset = 0.0;
    std::vector<Constraint> constraints;
    std::vector<double> lower;  // finite
    std::vector<double> upper;  // may be +inf
    std::vector<char> is_integer;

    void resize(int n);
    void add_constraint(std::vector<double> coeffs, Relation rel, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective_value = 0.0;
    std::vector<double> values;
    int iterations = 0;
};

struct MalformedProgram : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bounded-variable primal simplex (two-phase, dense). Deterministic: Dantzig
// pricing with lowest-index tie-breaks, switching to Bland's rule after a
// stall to guarantee termination.
LpSolution solve_lp(const LinearProgram& p);

struct ResidualReport {
    double max_constraint_residual = 0.0;
    double max_bound_violation = 0.0;
    double objective_delta = 0.0;
};

ResidualReport check_solution(const LinearProgram& p, const LpSolution& sol);

// Feasibility tolerance used by check_solution and the solver contract,
// relative to 1 + |rhs|.
inline constexpr double kFeasTol = 1e-7;

// Plain-text listing of the program, one constraint per line, for diffing.
void dump_program(const LinearProgram& p, std::ostream& out);

}  // namespace ewg
