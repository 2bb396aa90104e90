from ._ewg import (  # noqa: F401
    CaseComparison,
    CaseResult,
    CostReport,
    DispatchSchedule,
    GasParams,
    Horizon,
    InfeasibleModel,
    LoadProfiles,
    PeakMetrics,
    PowerParams,
    Scenario,
    ScenarioParseError,
    WaterParams,
    case_to_csv,
    compare_cases,
    peak_metrics,
    run_case1,
    run_case2,
    scenario_from_file,
    scenario_from_string,
    scenario_to_string,
    validate_scenario,
)

__all__ = [
    "CaseComparison",
    "CaseResult",
    "CostReport",
    "DispatchSchedule",
    "GasParams",
    "Horizon",
    "InfeasibleModel",
    "LoadProfiles",
    "PeakMetrics",
    "PowerParams",
    "Scenario",
    "ScenarioParseError",
    "WaterParams",
    "case_to_csv",
    "compare_cases",
    "peak_metrics",
    "run_case1",
    "run_case2",
    "scenario_from_file",
    "scenario_from_string",
    "scenario_to_string",
    "validate_scenario",
]
