#include "ewg/milp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace ewg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
    std::vector<double> lower, upper;
    int depth = 0;
    double parent_bound = -kInf;
};

int most_fractional(const LinearProgram& p, const std::vector<double>& values) {
    int pick = -1;
    double best = kIntTol;
    for (int j = 0; j < p.n_vars; ++j) {
        if (!p.is_integer[j]) continue;
        double frac = values[j] - std::floor(values[j]);
        double dist = std::min(frac, 1.0 - frac);
        if (dist > best + 1e-12) {
            best = dist;
            pick = j;
        }
    }
    return pick;
}

}  // namespace

MilpSolution solve_milp(const LinearProgram& p, std::ostream* node_log) {
    for (int j = 0; j < p.n_vars; ++j) {
        if (p.is_integer[j] && !(std::isfinite(p.lower[j]) && std::isfinite(p.upper[j])))
            throw MalformedProgram("integer variables must have finite bounds");
    }

    MilpSolution best;
    best.status = LpStatus::Infeasible;
    best.objective_value = kInf;
    best.best_bound = kInf;

    // Depth-first stack; re-sorted by bound every 64 nodes so the most
    // promising subtrees surface without losing determinism.
    std::vector<Node> stack;
    stack.push_back(Node{p.lower, p.upper, 0, -kInf});
    LinearProgram sub = p;
    double global_lower = kInf;
    bool root = true;

    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (node.parent_bound >= best.objective_value - 1e-9 * (1.0 + std::abs(best.objective_value)))
            continue;

        sub.lower = node.lower;
        sub.upper = node.upper;
        LpSolution relax = solve_lp(sub);
        ++best.nodes_explored;
        if (relax.status == LpStatus::Unbounded) {
            if (best.nodes_explored == 1)
                throw UnboundedRelaxation("LP relaxation is unbounded");
            continue;
        }
        if (relax.status == LpStatus::Infeasible) {
            if (node_log)
                (*node_log) << "node " << best.nodes_explored << " depth " << node.depth
                            << " infeasible\n";
            continue;
        }
        if (root) {
            global_lower = relax.objective_value;
            root = false;
        }
        if (relax.objective_value >=
            best.objective_value - 1e-9 * (1.0 + std::abs(best.objective_value)))
            continue;

        int branch = most_fractional(p, relax.values);
        if (node_log)
            (*node_log) << "node " << best.nodes_explored << " depth " << node.depth << " bound "
                        << relax.objective_value << " branch "
                        << (branch < 0 ? -1 : branch) << "\n";
        if (branch < 0) {
            // Integer feasible.
            best.status = LpStatus::Optimal;
            best.objective_value = relax.objective_value;
            best.values = relax.values;
            for (int j = 0; j < p.n_vars; ++j)
                if (p.is_integer[j]) best.values[j] = std::round(best.values[j]);
            continue;
        }

        double v = relax.values[branch];
        double floor_v = std::floor(v);
        Node down{node.lower, node.upper, node.depth + 1, relax.objective_value};
        down.upper[branch] = floor_v;
        Node up{node.lower, node.upper, node.depth + 1, relax.objective_value};
        up.lower[branch] = floor_v + 1.0;
        // Push "up" last when the fractional part is high so the nearer
        // integer is explored first; ties go down-first.
        if (v - floor_v > 0.5) {
            stack.push_back(std::move(down));
            stack.push_back(std::move(up));
        } else {
            stack.push_back(std::move(up));
            stack.push_back(std::move(down));
        }

        if (best.nodes_explored % 64 == 0) {
            std::stable_sort(stack.begin(), stack.end(),
                             [](const Node& a, const Node& b) {
                                 return a.parent_bound > b.parent_bound;
                             });
        }
    }

    if (best.status == LpStatus::Optimal) {
        best.best_bound = std::min(global_lower, best.objective_value);
    }
    return best;
}

}  // namespace ewg
