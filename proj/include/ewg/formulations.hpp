#pragma once

#include <stdexcept>
#include <vector>

#include "ewg/linprog.hpp"
#include "ewg/scenario.hpp"

namespace ewg {

// Raised when a builder can prove infeasibility from the scenario data alone.
struct InfeasibleModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VariableLayout {
    struct Range {
        int begin = 0;
        int count = 0;
        bool empty() const { return count == 0; }
        int operator[](int i) const { return begin + i; }
    };
    Range water_flow;  // Q_w(t), t = 0..n-1
    Range gas_flow;    // Q_g(t)
    Range transport;   // m(t)
    Range lambda;      // interpolation weights, n_breakpoints per timestep
    int lambda_breakpoints = 0;
    int n_vars = 0;

    int lambda_index(int t, int k) const { return lambda.begin + t * lambda_breakpoints + k; }
};

struct BuiltProgram {
    LinearProgram program;
    VariableLayout layout;
};

// Secant approximation of the quadratic generation cost: equally spaced
// breakpoints over [0, gen_cap] with exact curve values.
struct PiecewiseCurve {
    std::vector<double> breakpoints;  // kW
    std::vector<double> values;       // $

    double interpolate(double p) const;  // piecewise-linear value at p
    double max_segment_error() const;    // c1 * width^2 / 4 for the widest segment
};

PiecewiseCurve linearize_quadratic(const PowerParams& power);

// Independent water problem: flow variables only, storage eliminated by
// prefix-sum substitution, cyclic end state, electric cost at `rate`.
BuiltProgram build_water_lp(const Scenario& s, double rate);

// Independent gas problem: continuous flows plus integer transport decisions,
// tank and pipe balances by substitution, both storages cyclic.
BuiltProgram build_gas_milp(const Scenario& s, double rate);

// Joint problem: water and gas constraints without their electric cost terms,
// generation cost through interpolation weights coupled to total load.
BuiltProgram build_joint_milp(const Scenario& s);

struct Schedules {
    DispatchSchedule water;
    DispatchSchedule gas;
    std::vector<double> total_power;  // kW, length n_steps
};

// Rebuild storage trajectories, pressures, and electric loads from a solved
// variable vector. Ranges absent from the layout yield zero-flow schedules.
Schedules extract_schedules(const Scenario& s, const VariableLayout& layout,
                            const std::vector<double>& values);

}  // namespace ewg
