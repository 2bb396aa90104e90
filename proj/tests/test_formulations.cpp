#include <doctest.h>

#include <cmath>

#include "ewg/formulations.hpp"
#include "ewg/milp.hpp"
#include "ewg/scenario_io.hpp"
#include "oracles.hpp"

using namespace ewg;

namespace {

const std::string kDataDir = EWG_DATA_DIR;

Scenario load(const char* name) {
    return scenario_from_file(kDataDir + "/" + std::string(name) + ".scenario");
}

double balance_residual(const Scenario& s, const Schedules& sched) {
    const double T = s.horizon.step_hours;
    double worst = 0.0;
    auto track = [&](const std::vector<double>& storage, auto inflow) {
        for (int t = 0; t < s.horizon.n_steps; ++t) {
            double expect = storage[t] + inflow(t) * T;
            worst = std::max(worst, std::abs(storage[t + 1] - expect));
        }
    };
    track(sched.water.storages[0],
          [&](int t) { return sched.water.flows[t] - s.loads.water[t]; });
    track(sched.gas.storages[0], [&](int t) {
        return static_cast<double>(sched.gas.transport_units[t]) * s.gas.unit_volume -
               sched.gas.flows[t];
    });
    track(sched.gas.storages[1], [&](int t) { return sched.gas.flows[t] - s.loads.gas[t]; });
    return worst;
}

}  // namespace

TEST_CASE("tiny2 water optimum is just-in-time delivery") {
    Scenario s = load("tiny2");
    BuiltProgram bp = build_water_lp(s, s.pseudo_rate);
    LpSolution sol = solve_lp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    // Cyclicity forces Q1+Q2 = 2 and the storage O&M term pins Q1 = 1.
    CHECK(sol.values[0] == doctest::Approx(1.0));
    CHECK(sol.values[1] == doctest::Approx(1.0));
    CHECK(sol.objective_value ==
          doctest::Approx(s.pseudo_rate * s.water.power_coeff * 2.0));

    Schedules sched = extract_schedules(s, bp.layout, sol.values);
    CHECK(sched.water.storages[0][1] == doctest::Approx(0.0));
    CHECK(sched.water.storages[0][2] == doctest::Approx(0.0));
    CHECK(sched.water.electric_load[0] == doctest::Approx(2.0));
}

TEST_CASE("zero water load keeps the storage parked") {
    Scenario s = load("tiny2");
    s.loads.water = {0.0, 0.0};
    BuiltProgram bp = build_water_lp(s, s.pseudo_rate);
    LpSolution sol = solve_lp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.values[0] == doctest::Approx(0.0));
    CHECK(sol.values[1] == doctest::Approx(0.0));
    // S_w(0) = storage_min = 0, so the O&M term vanishes too.
    CHECK(sol.objective_value == doctest::Approx(0.0));
}

TEST_CASE("with zero storage O&M the electric cost telescopes") {
    Scenario s = load("tiny3");
    s.water.storage_om_rate = 0.0;
    BuiltProgram bp = build_water_lp(s, 0.3);
    LpSolution sol = solve_lp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    double demand = s.loads.water[0] + s.loads.water[1] + s.loads.water[2];
    CHECK(sol.objective_value ==
          doctest::Approx(0.3 * s.water.power_coeff * s.horizon.step_hours * demand));
}

TEST_CASE("water builder rejects demand above deliverable volume") {
    Scenario s = load("tiny2");
    s.loads.water = {100.0, 100.0};  // flow_max is 10
    CHECK_THROWS_AS(build_water_lp(s, s.pseudo_rate), InfeasibleModel);
}

TEST_CASE("tiny3 gas MILP matches exhaustive transport enumeration") {
    Scenario s = load("tiny3");
    BuiltProgram bp = build_gas_milp(s, s.pseudo_rate);
    MilpSolution sol = solve_milp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    auto oracle = testing::integer_enumeration_min(bp.program);
    REQUIRE(oracle.has_value());
    CHECK(sol.objective_value == doctest::Approx(*oracle).epsilon(1e-6));

    Schedules sched = extract_schedules(s, bp.layout, sol.values);
    CHECK(balance_residual(s, sched) <= 1e-6);
    // Both storages return to their anchors.
    CHECK(sched.gas.storages[0].back() == doctest::Approx(s.gas.tank_init));
    CHECK(sched.gas.storages[1].back() == doctest::Approx(s.gas.pipe_init));
    // Delivered volume equals horizon demand.
    long long units = 0;
    for (long long m : sched.gas.transport_units) units += m;
    CHECK(static_cast<double>(units) * s.gas.unit_volume == doctest::Approx(400.0));
}

TEST_CASE("zero gas demand with storages at minimum stays idle") {
    Scenario s = load("tiny3");
    s.loads.gas = {0.0, 0.0, 0.0};
    s.gas.tank_init = s.gas.tank_min;
    s.gas.pipe_init = s.gas.pipe_min;
    BuiltProgram bp = build_gas_milp(s, s.pseudo_rate);
    MilpSolution sol = solve_milp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    for (int t = 0; t < 3; ++t) {
        CHECK(sol.values[bp.layout.gas_flow[t]] == doctest::Approx(0.0));
        CHECK(sol.values[bp.layout.transport[t]] == doctest::Approx(0.0));
    }
}

TEST_CASE("pipe pressure is proportional to pipe storage") {
    Scenario s = load("tiny3");
    BuiltProgram bp = build_gas_milp(s, s.pseudo_rate);
    // Hold the pipe exactly at reference: flows equal to loads.
    std::vector<double> values(bp.layout.n_vars, 0.0);
    for (int t = 0; t < 3; ++t) values[bp.layout.gas_flow[t]] = s.loads.gas[t];
    Schedules sched = extract_schedules(s, bp.layout, values);
    for (double p : sched.gas.pressures) CHECK(p == doctest::Approx(s.gas.pressure_ref));

    // Half-reference storage reports half-reference pressure.
    Scenario half = s;
    half.gas.pipe_init = s.gas.pipe_storage_ref / 2.0;
    std::vector<double> idle(bp.layout.n_vars, 0.0);
    half.loads.gas = {0.0, 0.0, 0.0};
    Schedules still = extract_schedules(half, bp.layout, idle);
    CHECK(still.gas.pressures[0] == doctest::Approx(s.gas.pressure_ref / 2.0));
}

TEST_CASE("breakpoint placement and curve values") {
    PowerParams p{1.0, 0.0, 0.0, 2.0, 3};
    PiecewiseCurve c = linearize_quadratic(p);
    CHECK(c.breakpoints == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(c.values == std::vector<double>{0.0, 1.0, 4.0});

    PowerParams q{0.001, 0.1, 1.0, 100.0, 2};
    PiecewiseCurve d = linearize_quadratic(q);
    CHECK(d.values.back() == doctest::Approx(21.0));
}

TEST_CASE("secant error is bounded by c1 * width^2 / 4 and attained") {
    PowerParams p{0.002, 0.3, 2.0, 900.0, 7};
    PiecewiseCurve c = linearize_quadratic(p);
    double width = c.breakpoints[1] - c.breakpoints[0];
    double bound = p.c1 * width * width / 4.0;
    double worst = 0.0;
    for (int i = 0; i <= 6000; ++i) {
        double x = 900.0 * i / 6000.0;
        double truth = p.c1 * x * x + p.c2 * x + p.c3;
        double gap = c.interpolate(x) - truth;
        CHECK(gap >= -1e-9);  // surrogate dominates the quadratic
        worst = std::max(worst, gap);
    }
    CHECK(worst <= bound + 1e-9);
    CHECK(worst == doctest::Approx(bound).epsilon(1e-3));  // attained mid-segment
    CHECK(c.max_segment_error() == doctest::Approx(bound));
}

TEST_CASE("joint optimum matches enumeration on tiny2") {
    Scenario s = load("tiny2");
    BuiltProgram bp = build_joint_milp(s);
    MilpSolution sol = solve_milp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    auto oracle = testing::integer_enumeration_min(bp.program);
    REQUIRE(oracle.has_value());
    CHECK(sol.objective_value == doctest::Approx(*oracle).epsilon(1e-6));

    // The coupling row ties interpolated power to the physical loads.
    const VariableLayout& L = bp.layout;
    for (int t = 0; t < s.horizon.n_steps; ++t) {
        double interp = 0.0;
        PiecewiseCurve curve = linearize_quadratic(s.power);
        for (int k = 0; k < L.lambda_breakpoints; ++k)
            interp += curve.breakpoints[k] * sol.values[L.lambda_index(t, k)];
        double physical = s.water.power_coeff * sol.values[L.water_flow[t]] +
                          s.gas.power_coeff * sol.values[L.gas_flow[t]] +
                          s.loads.residential[t];
        CHECK(interp == doctest::Approx(physical).epsilon(1e-6));
    }
}

TEST_CASE("lambda support stays on an adjacent breakpoint pair") {
    Scenario s = load("tiny3");
    BuiltProgram bp = build_joint_milp(s);
    MilpSolution sol = solve_milp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    const VariableLayout& L = bp.layout;
    for (int t = 0; t < s.horizon.n_steps; ++t) {
        int lo = -1, hi = -1;
        for (int k = 0; k < L.lambda_breakpoints; ++k) {
            if (sol.values[L.lambda_index(t, k)] > 1e-6) {
                if (lo < 0) lo = k;
                hi = k;
            }
        }
        REQUIRE(lo >= 0);
        CHECK(hi - lo <= 1);
    }
}

TEST_CASE("decoupled joint problem reduces to residential piecewise cost") {
    Scenario s = load("tiny3");
    s.water.power_coeff = 0.0;
    s.gas.power_coeff = 0.0;
    s.water.storage_om_rate = 0.0;
    s.gas.tank_om_rate = 0.0;
    s.gas.pipe_om_rate = 0.0;
    s.gas.transport_unit_cost = 0.0;
    BuiltProgram bp = build_joint_milp(s);
    MilpSolution sol = solve_milp(bp.program);
    REQUIRE(sol.status == LpStatus::Optimal);
    PiecewiseCurve curve = linearize_quadratic(s.power);
    double expected = 0.0;
    for (double lr : s.loads.residential) expected += curve.interpolate(lr);
    CHECK(sol.objective_value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("joint builder rejects residential load above capacity") {
    Scenario s = load("tiny2");
    s.loads.residential[1] = s.power.gen_cap + 1.0;
    CHECK_THROWS_AS(build_joint_milp(s), InfeasibleModel);
}

TEST_CASE("doubling breakpoints never worsens the joint objective") {
    Scenario s = load("tiny3");
    double prev = std::numeric_limits<double>::infinity();
    for (int ns : {6, 11, 21}) {
        s.power.n_breakpoints = ns;
        MilpSolution sol = solve_milp(build_joint_milp(s).program);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective_value <= prev + 1e-9);
        prev = sol.objective_value;
    }
}

TEST_CASE("zero flows reproduce the residential curve") {
    Scenario s = load("tiny3");
    BuiltProgram bp = build_joint_milp(s);
    std::vector<double> values(bp.layout.n_vars, 0.0);
    Schedules sched = extract_schedules(s, bp.layout, values);
    CHECK(sched.total_power == s.loads.residential);
}
