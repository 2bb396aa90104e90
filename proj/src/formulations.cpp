#include "ewg/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ewg {

namespace {

std::vector<double> cumulative(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::partial_sum(v.begin(), v.end(), out.begin());
    return out;
}

void require_deliverable(double total_load, double capacity, const char* subsystem) {
    if (total_load > capacity + 1e-9) {
        throw InfeasibleModel(std::string(subsystem) +
                              " horizon infeasible: demand exceeds deliverable volume");
    }
}

}  // namespace

double PiecewiseCurve::interpolate(double p) const {
    const auto& a = breakpoints;
    if (p <= a.front()) return values.front();
    if (p >= a.back()) return values.back();
    auto it = std::upper_bound(a.begin(), a.end(), p);
    size_t hi = static_cast<size_t>(it - a.begin());
    size_t lo = hi - 1;
    double w = (p - a[lo]) / (a[hi] - a[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

double PiecewiseCurve::max_segment_error() const {
    double worst = 0.0;
    for (size_t i = 1; i < breakpoints.size(); ++i)
        worst = std::max(worst, breakpoints[i] - breakpoints[i - 1]);
    // For a quadratic, the secant overshoot peaks mid-segment at c1*w^2/4;
    // recover c1 from the stored values to avoid carrying PowerParams here.
    if (breakpoints.size() < 3) return 0.0;
    double w1 = breakpoints[1] - breakpoints[0];
    double w2 = breakpoints[2] - breakpoints[1];
    // Second difference of an exact quadratic sample: b'' = 2*c1 on equal
    // spacing; general spacing handled via divided differences.
    double d1 = (values[1] - values[0]) / w1;
    double d2 = (values[2] - values[1]) / w2;
    double c1 = (d2 - d1) / (w1 + w2);
    return c1 * worst * worst / 4.0;
}

PiecewiseCurve linearize_quadratic(const PowerParams& power) {
    PiecewiseCurve curve;
    int n = std::max(power.n_breakpoints, 2);
    curve.breakpoints.resize(n);
    curve.values.resize(n);
    for (int i = 0; i < n; ++i) {
        double a = power.gen_cap * static_cast<double>(i) / static_cast<double>(n - 1);
        curve.breakpoints[i] = a;
        curve.values[i] = power.c1 * a * a + power.c2 * a + power.c3;
    }
    return curve;
}

namespace {

// Emit storage-range and cyclic rows for the water subsystem, and add its
// O&M objective terms. `col` maps local flow index -> program column.
void add_water_block(const Scenario& s, LinearProgram& lp, int col0, bool include_electric,
                     double rate) {
    const int n = s.horizon.n_steps;
    const double T = s.horizon.step_hours;
    const auto& w = s.water;
    const auto cumL = cumulative(s.loads.water);

    require_deliverable(cumL.back() * T, n * w.flow_max * T, "water");

    for (int t = 0; t < n; ++t) {
        std::vector<double> row(lp.n_vars, 0.0);
        for (int k = 0; k <= t; ++k) row[col0 + k] = T;
        double base = T * cumL[t] - w.storage_init;
        lp.add_constraint(row, Relation::GreaterEq, w.storage_min + base);
        lp.add_constraint(std::move(row), Relation::LessEq, w.storage_max + base);
    }
    {
        std::vector<double> row(lp.n_vars, 0.0);
        for (int k = 0; k < n; ++k) row[col0 + k] = T;
        lp.add_constraint(std::move(row), Relation::Equal, T * cumL.back());
    }
    double cum_sum = std::accumulate(cumL.begin(), cumL.end(), 0.0);
    for (int k = 0; k < n; ++k) {
        lp.lower[col0 + k] = 0.0;
        lp.upper[col0 + k] = w.flow_max;
        lp.objective[col0 + k] += w.storage_om_rate * T * static_cast<double>(n - k);
        if (include_electric) lp.objective[col0 + k] += rate * w.power_coeff * T;
    }
    lp.objective_offset += w.storage_om_rate * (n * w.storage_init - T * cum_sum);
}

// Gas subsystem rows: tank and pipe ranges, both cyclic, integer transport.
void add_gas_block(const Scenario& s, LinearProgram& lp, int flow0, int trans0,
                   bool include_electric, double rate) {
    const int n = s.horizon.n_steps;
    const double T = s.horizon.step_hours;
    const auto& g = s.gas;
    const auto cumL = cumulative(s.loads.gas);
    const int cap = effective_transport_cap(s);
    const double pressure_per_volume = g.pressure_ref / g.pipe_storage_ref;

    require_deliverable(cumL.back() * T, n * g.flow_max * T, "gas");
    require_deliverable(cumL.back() * T, static_cast<double>(n) * cap * g.unit_volume, "gas");

    for (int t = 0; t < n; ++t) {
        // Tank: S_g(t) = tank_init + T * sum(V_g*m - Q).
        std::vector<double> tank(lp.n_vars, 0.0);
        for (int k = 0; k <= t; ++k) {
            tank[flow0 + k] = -T;
            tank[trans0 + k] = T * g.unit_volume;
        }
        double tank_base = -g.tank_init;
        lp.add_constraint(tank, Relation::GreaterEq, g.tank_min + tank_base);
        lp.add_constraint(std::move(tank), Relation::LessEq, g.tank_max + tank_base);

        // Pipe: S_p(t) = pipe_init + T * sum(Q - L).
        std::vector<double> pipe(lp.n_vars, 0.0);
        for (int k = 0; k <= t; ++k) pipe[flow0 + k] = T;
        double pipe_base = T * cumL[t] - g.pipe_init;
        lp.add_constraint(pipe, Relation::GreaterEq, g.pipe_min + pipe_base);
        lp.add_constraint(std::move(pipe), Relation::LessEq, g.pipe_max + pipe_base);
    }
    {
        std::vector<double> row(lp.n_vars, 0.0);
        for (int k = 0; k < n; ++k) {
            row[flow0 + k] = -T;
            row[trans0 + k] = T * g.unit_volume;
        }
        lp.add_constraint(std::move(row), Relation::Equal, 0.0);  // tank cyclic
    }
    {
        std::vector<double> row(lp.n_vars, 0.0);
        for (int k = 0; k < n; ++k) row[flow0 + k] = T;
        lp.add_constraint(std::move(row), Relation::Equal, T * cumL.back());  // pipe cyclic
    }

    double cum_sum = std::accumulate(cumL.begin(), cumL.end(), 0.0);
    for (int k = 0; k < n; ++k) {
        double reach = static_cast<double>(n - k);  // timesteps whose storage sees Q_k
        lp.lower[flow0 + k] = 0.0;
        lp.upper[flow0 + k] = g.flow_max;
        lp.objective[flow0 + k] +=
            T * reach * (pressure_per_volume * g.pipe_om_rate - g.tank_om_rate);
        if (include_electric) lp.objective[flow0 + k] += rate * g.power_coeff * T;

        lp.lower[trans0 + k] = 0.0;
        lp.upper[trans0 + k] = static_cast<double>(cap);
        lp.is_integer[trans0 + k] = 1;
        lp.objective[trans0 + k] +=
            g.transport_unit_cost + g.tank_om_rate * g.unit_volume * T * reach;
    }
    lp.objective_offset += g.tank_om_rate * n * g.tank_init;
    lp.objective_offset +=
        g.pipe_om_rate * pressure_per_volume * (n * g.pipe_init - T * cum_sum);
}

}  // namespace

BuiltProgram build_water_lp(const Scenario& s, double rate) {
    const int n = s.horizon.n_steps;
    BuiltProgram bp;
    bp.layout.water_flow = {0, n};
    bp.layout.n_vars = n;
    bp.program.resize(n);
    add_water_block(s, bp.program, 0, /*include_electric=*/true, rate);
    return bp;
}

BuiltProgram build_gas_milp(const Scenario& s, double rate) {
    const int n = s.horizon.n_steps;
    BuiltProgram bp;
    bp.layout.gas_flow = {0, n};
    bp.layout.transport = {n, n};
    bp.layout.n_vars = 2 * n;
    bp.program.resize(2 * n);
    add_gas_block(s, bp.program, 0, n, /*include_electric=*/true, rate);
    return bp;
}

BuiltProgram build_joint_milp(const Scenario& s) {
    const int n = s.horizon.n_steps;
    const int ns = std::max(s.power.n_breakpoints, 2);
    BuiltProgram bp;
    VariableLayout& L = bp.layout;
    L.water_flow = {0, n};
    L.gas_flow = {n, n};
    L.transport = {2 * n, n};
    L.lambda = {3 * n, ns * n};
    L.lambda_breakpoints = ns;
    L.n_vars = 3 * n + ns * n;

    for (int t = 0; t < n; ++t) {
        if (s.loads.residential[t] > s.power.gen_cap + 1e-9)
            throw InfeasibleModel(
                "power horizon infeasible: residential load alone exceeds generation capacity");
    }

    LinearProgram& lp = bp.program;
    lp.resize(L.n_vars);
    add_water_block(s, lp, L.water_flow.begin, /*include_electric=*/false, 0.0);
    add_gas_block(s, lp, L.gas_flow.begin, L.transport.begin, /*include_electric=*/false, 0.0);

    const PiecewiseCurve curve = linearize_quadratic(s.power);
    for (int t = 0; t < n; ++t) {
        // Convex-combination weights select a point on the cost curve.
        std::vector<double> convexity(lp.n_vars, 0.0);
        std::vector<double> coupling(lp.n_vars, 0.0);
        for (int k = 0; k < ns; ++k) {
            int j = L.lambda_index(t, k);
            convexity[j] = 1.0;
            coupling[j] = curve.breakpoints[k];
            lp.lower[j] = 0.0;
            lp.upper[j] = 1.0;
            lp.objective[j] += curve.values[k];
        }
        coupling[L.water_flow[t]] = -s.water.power_coeff;
        coupling[L.gas_flow[t]] = -s.gas.power_coeff;
        lp.add_constraint(std::move(convexity), Relation::Equal, 1.0);
        lp.add_constraint(std::move(coupling), Relation::Equal, s.loads.residential[t]);
    }
    return bp;
}

Schedules extract_schedules(const Scenario& s, const VariableLayout& layout,
                            const std::vector<double>& values) {
    const int n = s.horizon.n_steps;
    const double T = s.horizon.step_hours;
    Schedules out;

    // Water.
    out.water.flows.assign(n, 0.0);
    if (!layout.water_flow.empty())
        for (int t = 0; t < n; ++t) out.water.flows[t] = values[layout.water_flow[t]];
    std::vector<double> sw(n + 1, s.water.storage_init);
    for (int t = 0; t < n; ++t)
        sw[t + 1] = sw[t] + (out.water.flows[t] - s.loads.water[t]) * T;
    out.water.storages = {sw};
    out.water.electric_load.resize(n);
    for (int t = 0; t < n; ++t)
        out.water.electric_load[t] = s.water.power_coeff * out.water.flows[t];

    // Gas.
    out.gas.flows.assign(n, 0.0);
    out.gas.transport_units.assign(n, 0);
    if (!layout.gas_flow.empty())
        for (int t = 0; t < n; ++t) out.gas.flows[t] = values[layout.gas_flow[t]];
    if (!layout.transport.empty())
        for (int t = 0; t < n; ++t)
            out.gas.transport_units[t] =
                static_cast<long long>(std::llround(values[layout.transport[t]]));
    std::vector<double> sg(n + 1, s.gas.tank_init), sp(n + 1, s.gas.pipe_init);
    for (int t = 0; t < n; ++t) {
        sg[t + 1] = sg[t] +
                    (static_cast<double>(out.gas.transport_units[t]) * s.gas.unit_volume -
                     out.gas.flows[t]) * T;
        sp[t + 1] = sp[t] + (out.gas.flows[t] - s.loads.gas[t]) * T;
    }
    out.gas.storages = {sg, sp};
    out.gas.pressures.resize(n + 1);
    for (int t = 0; t <= n; ++t)
        out.gas.pressures[t] = sp[t] * s.gas.pressure_ref / s.gas.pipe_storage_ref;
    out.gas.electric_load.resize(n);
    for (int t = 0; t < n; ++t)
        out.gas.electric_load[t] = s.gas.power_coeff * out.gas.flows[t];

    out.total_power.resize(n);
    for (int t = 0; t < n; ++t)
        out.total_power[t] = out.water.electric_load[t] + out.gas.electric_load[t] +
                             s.loads.residential[t];
    return out;
}

}  // namespace ewg
