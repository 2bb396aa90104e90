// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ewg/milp.hpp"
#include "ewg/scenario_io.hpp"
#include "ewg/workflows.hpp"
#include "oracles.hpp"

using namespace ewg;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = EWG_DATA_DIR;
const std::string kCliPath = EWG_CLI_PATH;

int failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

Scenario load(const char* name) {
    return scenario_from_file(kDataDir + "/" + std::string(name) + ".scenario");
}

LinearProgram random_program(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 6), md(0, 6), coeff(-3, 3), rhsd(-5, 5), reld(0, 2);
    LinearProgram p;
    int n = nd(rng);
    p.resize(n);
    for (int j = 0; j < n; ++j) {
        p.objective[j] = std::uniform_int_distribution<int>(-4, 4)(rng);
        p.lower[j] = -std::uniform_int_distribution<int>(0, 4)(rng);
        p.upper[j] = std::uniform_int_distribution<int>(0, 4)(rng);
    }
    int m = md(rng);
    for (int i = 0; i < m; ++i) {
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j) row[j] = coeff(rng);
        p.add_constraint(std::move(row), static_cast<Relation>(reld(rng)), rhsd(rng));
    }
    return p;
}

double max_balance_residual(const Scenario& s, const CaseResult& r) {
    const double T = s.horizon.step_hours;
    double worst = 0.0;
    for (int t = 0; t < s.horizon.n_steps; ++t) {
        double w = r.water.storages[0][t + 1] - r.water.storages[0][t] -
                   (r.water.flows[t] - s.loads.water[t]) * T;
        double g = r.gas.storages[0][t + 1] - r.gas.storages[0][t] -
                   (static_cast<double>(r.gas.transport_units[t]) * s.gas.unit_volume -
                    r.gas.flows[t]) * T;
        double p = r.gas.storages[1][t + 1] - r.gas.storages[1][t] -
                   (r.gas.flows[t] - s.loads.gas[t]) * T;
        worst = std::max({worst, std::abs(w), std::abs(g), std::abs(p)});
    }
    worst = std::max(worst, std::abs(r.water.storages[0].back() - s.water.storage_init));
    worst = std::max(worst, std::abs(r.gas.storages[0].back() - s.gas.tank_init));
    worst = std::max(worst, std::abs(r.gas.storages[1].back() - s.gas.pipe_init));
    return worst;
}

double mean_tail(const std::vector<double>& v) {
    double sum = 0.0;
    for (size_t i = 1; i < v.size(); ++i) sum += v[i];
    return sum / static_cast<double>(v.size() - 1);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;

    // 1. Solver oracles.
    {
        auto start = clock::now();
        bool ok = true;
        std::string detail;
        std::mt19937 rng(424242);
        int optimal = 0;
        for (int iter = 0; iter < 120 && optimal < 50; ++iter) {
            LinearProgram p = random_program(rng);
            LpSolution sol = solve_lp(p);
            auto oracle = testing::vertex_enumeration_min(p);
            if (sol.status == LpStatus::Optimal) {
                ++optimal;
                if (!oracle || std::abs(sol.objective_value - *oracle) > 1e-6) {
                    ok = false;
                    detail = "LP mismatch against vertex enumeration";
                    break;
                }
            } else if (oracle) {
                ok = false;
                detail = "solver reported infeasible but a vertex exists";
                break;
            }
        }
        if (ok && optimal < 50) {
            ok = false;
            detail = "fewer than 50 optimal random LPs";
        }
        for (const char* name : {"tiny2", "tiny3"}) {
            if (!ok) break;
            Scenario s = load(name);
            BuiltProgram gas = build_gas_milp(s, s.pseudo_rate);
            MilpSolution sol = solve_milp(gas.program);
            auto oracle = testing::integer_enumeration_min(gas.program);
            if (sol.status != LpStatus::Optimal || !oracle ||
                std::abs(sol.objective_value - *oracle) > 1e-6) {
                ok = false;
                detail = std::string("gas MILP mismatch on ") + name;
            }
            BuiltProgram joint = build_joint_milp(s);
            MilpSolution jsol = solve_milp(joint.program);
            auto joracle = testing::integer_enumeration_min(joint.program);
            if (jsol.status != LpStatus::Optimal || !joracle ||
                std::abs(jsol.objective_value - *joracle) > 1e-6) {
                ok = false;
                detail = std::string("joint MILP mismatch on ") + name;
            }
        }
        double secs = std::chrono::duration<double>(clock::now() - start).count();
        if (ok && secs >= 10.0) {
            ok = false;
            detail = "oracle suite exceeded 10 s";
        }
        report(1, "solver oracle equivalence", ok, detail);
    }

    Scenario def = load("default");
    auto case_start = clock::now();
    CaseResult case1 = run_case1(def);
    CaseResult case2 = run_case2(def);
    double case_secs = std::chrono::duration<double>(clock::now() - case_start).count();

    // 2. Balance and cyclicity on every produced schedule.
    {
        double worst = std::max(max_balance_residual(def, case1),
                                max_balance_residual(def, case2));
        for (const char* name : {"tiny2", "tiny3"}) {
            Scenario s = load(name);
            worst = std::max(worst, max_balance_residual(s, run_case1(s)));
            worst = std::max(worst, max_balance_residual(s, run_case2(s)));
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "max residual %.3g", worst);
        report(2, "storage balances and cyclic end states", worst <= 1e-6, buf);
    }

    // 3. Piecewise dominance with the exact bound; adjacent lambda support.
    {
        PiecewiseCurve curve = linearize_quadratic(def.power);
        double width = curve.breakpoints[1] - curve.breakpoints[0];
        double bound = def.power.c1 * width * width / 4.0;
        bool ok = true;
        for (int i = 0; i < 1000 && ok; ++i) {
            double x = def.power.gen_cap * i / 999.0;
            double truth = def.power.c1 * x * x + def.power.c2 * x + def.power.c3;
            double gap = curve.interpolate(x) - truth;
            if (gap < -1e-9 || gap > bound + 1e-9) ok = false;
        }
        BuiltProgram joint = build_joint_milp(def);
        MilpSolution sol = solve_milp(joint.program);
        if (sol.status != LpStatus::Optimal) ok = false;
        const VariableLayout& L = joint.layout;
        for (int t = 0; ok && t < def.horizon.n_steps; ++t) {
            int lo = -1, hi = -1;
            for (int k = 0; k < L.lambda_breakpoints; ++k) {
                if (sol.values[L.lambda_index(t, k)] > 1e-6) {
                    if (lo < 0) lo = k;
                    hi = k;
                }
            }
            if (lo < 0 || hi - lo > 1) ok = false;
        }
        report(3, "piecewise bound and adjacent support", ok);
    }

    // 4. Cost dominance on the calibrated scenario.
    {
        double reduction = (case1.report.total - case2.report.total) / case1.report.total * 100.0;
        bool ok = case2.report.total < case1.report.total &&
                  case2.final_rate < case1.final_rate && reduction >= 5.0 && reduction <= 15.0 &&
                  case_secs < 30.0;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "total %.2f -> %.2f (-%.1f%%), rate %.3f -> %.3f, %.1f s",
                      case1.report.total, case2.report.total, reduction, case1.final_rate,
                      case2.final_rate, case_secs);
        report(4, "joint optimization reduces total cost 5-15%", ok, buf);
    }

    // 5. Load-shifting direction.
    {
        PeakMetrics m1 = peak_metrics(case1), m2 = peak_metrics(case2);
        bool ok = m2.peak_to_valley < m1.peak_to_valley;
        ok = ok && mean_tail(case2.water.storages[0]) > mean_tail(case1.water.storages[0]);
        ok = ok && mean_tail(case2.gas.storages[1]) > mean_tail(case1.gas.storages[1]);
        ok = ok && case2.report.water_om > case1.report.water_om;
        ok = ok && case2.report.gas_om > case1.report.gas_om;
        ok = ok && case2.report.water_electric < case1.report.water_electric;
        ok = ok && case2.report.gas_electric < case1.report.gas_electric;
        ok = ok && case2.report.residential_electric < case1.report.residential_electric;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "ratio %.3f -> %.3f, mean S_w %.1f -> %.1f",
                      m1.peak_to_valley, m2.peak_to_valley, mean_tail(case1.water.storages[0]),
                      mean_tail(case2.water.storages[0]));
        report(5, "peak shaving and storage utilization signs", ok, buf);
    }

    // 6. Monotone refinement of the surrogate.
    {
        Scenario s = def;
        double prev = std::numeric_limits<double>::infinity();
        bool ok = true;
        std::ostringstream detail;
        for (int ns : {6, 11, 21}) {
            s.power.n_breakpoints = ns;
            MilpSolution sol = solve_milp(build_joint_milp(s).program);
            if (sol.status != LpStatus::Optimal || sol.objective_value > prev + 1e-9) ok = false;
            detail << (ns == 6 ? "" : " >= ") << sol.objective_value;
            prev = sol.objective_value;
        }
        report(6, "finer breakpoints never increase the joint objective", ok, detail.str());
    }

    // 7. Allocation closure and rate identity.
    {
        bool ok = true;
        for (const CaseResult* r : {&case1, &case2}) {
            double alloc = r->report.water_electric + r->report.gas_electric +
                           r->report.residential_electric;
            double energy = 0.0;
            for (double p : r->total_power) energy += p * def.horizon.step_hours;
            double z = r->electric_cost_total;
            if (std::abs(alloc - z) > 1e-9 * (1.0 + std::abs(z))) ok = false;
            if (std::abs(r->final_rate * energy - z) > 1e-9 * (1.0 + std::abs(z))) ok = false;
        }
        report(7, "B1+B2+B3 = Z_e and r_e * energy = Z_e", ok);
    }

    // 8. Byte-identical compare runs through the CLI.
    {
        fs::path base = fs::temp_directory_path() / "ewg_acceptance";
        fs::remove_all(base);
        bool ok = true;
        std::string detail;
        for (int run = 1; run <= 2 && ok; ++run) {
            std::ostringstream cmd;
            cmd << '"' << kCliPath << '"' << " compare --scenario " << kDataDir
                << "/default.scenario --out " << (base / std::to_string(run)).string()
                << " > /dev/null";
            if (std::system(cmd.str().c_str()) != 0) {
                ok = false;
                detail = "CLI run failed";
            }
        }
        for (const char* f : {"report.json", "report.txt", "case1.csv", "case2.csv"}) {
            if (!ok) break;
            if (read_file(base / "1" / f) != read_file(base / "2" / f)) {
                ok = false;
                detail = std::string(f) + " differs between runs";
            }
        }
        report(8, "repeated compare runs are byte-identical", ok, detail);
    }

    std::printf("%s (%d failure%s)\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}
