#include "ewg/workflows.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ewg/milp.hpp"

namespace ewg {

namespace {

double dot_time(const std::vector<double>& v, double T) {
    return std::accumulate(v.begin(), v.end(), 0.0) * T;
}

double storage_om(const std::vector<double>& trajectory, double rate) {
    // End-of-step states only; index 0 is the anchored initial state.
    double sum = 0.0;
    for (size_t t = 1; t < trajectory.size(); ++t) sum += trajectory[t];
    return rate * sum;
}

CostReport make_report(const Scenario& s, const DispatchSchedule& water,
                       const DispatchSchedule& gas, double rate) {
    const double T = s.horizon.step_hours;
    CostReport r;
    r.water_om = storage_om(water.storages[0], s.water.storage_om_rate);
    double transport = 0.0;
    for (long long m : gas.transport_units) transport += static_cast<double>(m);
    r.gas_om = s.gas.transport_unit_cost * transport +
               storage_om(gas.storages[0], s.gas.tank_om_rate) +
               storage_om(gas.pressures, s.gas.pipe_om_rate);
    r.water_electric = rate * dot_time(water.electric_load, T);
    r.gas_electric = rate * dot_time(gas.electric_load, T);
    r.residential_electric = rate * dot_time(s.loads.residential, T);
    r.total = r.water_om + r.gas_om + r.water_electric + r.gas_electric + r.residential_electric;
    r.final_rate = rate;
    return r;
}

CaseResult finish_case(const Scenario& s, Schedules&& sched) {
    CaseResult result;
    result.water = std::move(sched.water);
    result.gas = std::move(sched.gas);
    result.total_power = std::move(sched.total_power);
    result.electric_cost_total = quadratic_cost(s.power, result.total_power);
    double energy = dot_time(result.total_power, s.horizon.step_hours);
    result.final_rate = energy > 0.0 ? result.electric_cost_total / energy : 0.0;
    result.report =
        make_report(s, result.water, result.gas, result.final_rate);
    return result;
}

}  // namespace

double quadratic_cost(const PowerParams& power, const std::vector<double>& total_power) {
    double z = 0.0;
    for (double p : total_power) z += power.c1 * p * p + power.c2 * p + power.c3;
    return z;
}

CaseResult run_case1(const Scenario& s) {
    BuiltProgram water = build_water_lp(s, s.pseudo_rate);
    LpSolution water_sol = solve_lp(water.program);
    if (water_sol.status != LpStatus::Optimal)
        throw InfeasibleModel(std::string("water subsystem: LP ") + to_string(water_sol.status));

    BuiltProgram gas = build_gas_milp(s, s.pseudo_rate);
    MilpSolution gas_sol = solve_milp(gas.program);
    if (gas_sol.status != LpStatus::Optimal)
        throw InfeasibleModel(std::string("gas subsystem: MILP ") + to_string(gas_sol.status));

    Schedules merged;
    Schedules from_water = extract_schedules(s, water.layout, water_sol.values);
    Schedules from_gas = extract_schedules(s, gas.layout, gas_sol.values);
    merged.water = std::move(from_water.water);
    merged.gas = std::move(from_gas.gas);
    const int n = s.horizon.n_steps;
    merged.total_power.resize(n);
    for (int t = 0; t < n; ++t)
        merged.total_power[t] = merged.water.electric_load[t] + merged.gas.electric_load[t] +
                                s.loads.residential[t];
    return finish_case(s, std::move(merged));
}

CaseResult run_case2(const Scenario& s) {
    BuiltProgram joint = build_joint_milp(s);
    MilpSolution sol = solve_milp(joint.program);
    if (sol.status != LpStatus::Optimal)
        throw InfeasibleModel(std::string("joint problem: MILP ") + to_string(sol.status));
    return finish_case(s, extract_schedules(s, joint.layout, sol.values));
}

namespace {

double pct_change(double a, double b) { return a == 0.0 ? 0.0 : (b - a) / a * 100.0; }

}  // namespace

CaseComparison compare_cases(const CaseResult& a, const CaseResult& b) {
    CaseComparison c;
    c.case1 = a.report;
    c.case2 = b.report;
    auto row = [&](const char* label, double x, double y) {
        c.rows.push_back(ComparisonRow{label, x, y, pct_change(x, y)});
    };
    row("Water O&M cost (A1)", a.report.water_om, b.report.water_om);
    row("Gas O&M cost (A2)", a.report.gas_om, b.report.gas_om);
    row("Water electric cost (B1)", a.report.water_electric, b.report.water_electric);
    row("Gas electric cost (B2)", a.report.gas_electric, b.report.gas_electric);
    row("Residential electric cost (B3)", a.report.residential_electric,
        b.report.residential_electric);
    row("Total EWG cost", a.report.total, b.report.total);
    row("Final electric rate", a.report.final_rate, b.report.final_rate);
    return c;
}

PeakMetrics peak_metrics(const CaseResult& result) {
    PeakMetrics m;
    if (result.total_power.empty()) return m;
    m.peak = *std::max_element(result.total_power.begin(), result.total_power.end());
    m.valley = *std::min_element(result.total_power.begin(), result.total_power.end());
    m.peak_to_valley = m.valley > 0.0 ? m.peak / m.valley : 0.0;
    return m;
}

namespace {

nlohmann::ordered_json report_json(const CostReport& r) {
    nlohmann::ordered_json j;
    j["water_om"] = r.water_om;
    j["gas_om"] = r.gas_om;
    j["water_electric"] = r.water_electric;
    j["gas_electric"] = r.gas_electric;
    j["residential_electric"] = r.residential_electric;
    j["total"] = r.total;
    j["final_rate"] = r.final_rate;
    return j;
}

std::string fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

}  // namespace

std::string report_to_json(const CostReport& r) { return report_json(r).dump(2) + "\n"; }

std::string comparison_to_json(const CaseComparison& c) {
    nlohmann::ordered_json j;
    j["case1"] = report_json(c.case1);
    j["case2"] = report_json(c.case2);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ComparisonRow& r : c.rows) {
        nlohmann::ordered_json jr;
        jr["label"] = r.label;
        jr["case1"] = r.case1;
        jr["case2"] = r.case2;
        jr["change_pct"] = r.change_pct;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string comparison_to_text(const CaseComparison& c) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-32s %14s %14s %9s\n", "Line item", "Case 1", "Case 2",
                  "Change");
    out << line;
    for (const ComparisonRow& r : c.rows) {
        bool is_rate = r.label == "Final electric rate";
        std::string v1 = is_rate ? fixed(r.case1, 3) : "$" + fixed(r.case1, 2);
        std::string v2 = is_rate ? fixed(r.case2, 3) : "$" + fixed(r.case2, 2);
        std::snprintf(line, sizeof(line), "%-32s %14s %14s %8s%%\n", r.label.c_str(), v1.c_str(),
                      v2.c_str(), fixed(r.change_pct, 1).c_str());
        out << line;
    }
    return out.str();
}

std::string case_to_csv(const Scenario& s, const CaseResult& r) {
    std::ostringstream out;
    out << "t,P_e,P_w,P_g,S_w,S_g,S_p,p_p,m\n";
    for (int t = 0; t < s.horizon.n_steps; ++t) {
        out << (t + 1) << "," << fixed(r.total_power[t], 6) << ","
            << fixed(r.water.electric_load[t], 6) << "," << fixed(r.gas.electric_load[t], 6) << ","
            << fixed(r.water.storages[0][t + 1], 6) << "," << fixed(r.gas.storages[0][t + 1], 6)
            << "," << fixed(r.gas.storages[1][t + 1], 6) << "," << fixed(r.gas.pressures[t + 1], 6)
            << "," << r.gas.transport_units[t] << "\n";
    }
    return out.str();
}

}  // namespace ewg
