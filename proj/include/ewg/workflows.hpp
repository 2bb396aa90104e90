#pragma once

#include <string>
#include <vector>

#include "ewg/formulations.hpp"
#include "ewg/scenario.hpp"

namespace ewg {

struct CaseResult {
    DispatchSchedule water;
    DispatchSchedule gas;
    std::vector<double> total_power;  // kW
    double electric_cost_total = 0.0; // $ from the true quadratic curve
    double final_rate = 0.0;          // $/kWh
    CostReport report;
};

// Independent operation: water LP and gas MILP at the pseudo rate, then one
// substitution pass pricing everything at the finalized rate.
CaseResult run_case1(const Scenario& s);

// Joint co-optimization over the piecewise surrogate; reported electric cost
// recomputed from the true quadratic so the two cases are comparable.
CaseResult run_case2(const Scenario& s);

struct ComparisonRow {
    std::string label;
    double case1 = 0.0;
    double case2 = 0.0;
    double change_pct = 0.0;  // (case2 - case1) / case1 * 100
};

struct CaseComparison {
    CostReport case1;
    CostReport case2;
    std::vector<ComparisonRow> rows;  // A1, A2, B1, B2, B3, total, rate
};

CaseComparison compare_cases(const CaseResult& a, const CaseResult& b);

struct PeakMetrics {
    double peak = 0.0;
    double valley = 0.0;
    double peak_to_valley = 0.0;
};

PeakMetrics peak_metrics(const CaseResult& result);

// True quadratic generation cost over a load curve, c3 charged once per step.
double quadratic_cost(const PowerParams& power, const std::vector<double>& total_power);

// Deterministic serializations: fixed key order, fixed decimal precision.
std::string report_to_json(const CostReport& r);
std::string comparison_to_json(const CaseComparison& c);
std::string comparison_to_text(const CaseComparison& c);
std::string case_to_csv(const Scenario& s, const CaseResult& r);

}  // namespace ewg
