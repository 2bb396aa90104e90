#pragma once

#include <iosfwd>
#include <stdexcept>

#include "ewg/linprog.hpp"

namespace ewg {

struct UnboundedRelaxation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MilpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective_value = 0.0;
    std::vector<double> values;  // integer-marked entries reported rounded
    long nodes_explored = 0;
    double best_bound = 0.0;
};

inline constexpr double kIntTol = 1e-6;

// Branch and bound over solve_lp. Depth-first, most-fractional branching with
// lowest-index ties; deterministic node order. Every integer-marked variable
// must have finite bounds.
MilpSolution solve_milp(const LinearProgram& p, std::ostream* node_log = nullptr);

}  // namespace ewg
