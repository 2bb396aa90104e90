#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ewg/milp.hpp"
#include "ewg/scenario_io.hpp"
#include "ewg/workflows.hpp"

namespace py = pybind11;
using namespace ewg;

PYBIND11_MODULE(_ewg, m) {
    m.doc() = "Electricity-water-gas joint scheduling core";

    py::class_<Horizon>(m, "Horizon")
        .def(py::init<>())
        .def_readwrite("n_steps", &Horizon::n_steps)
        .def_readwrite("step_hours", &Horizon::step_hours);

    py::class_<LoadProfiles>(m, "LoadProfiles")
        .def(py::init<>())
        .def_readwrite("water", &LoadProfiles::water)
        .def_readwrite("gas", &LoadProfiles::gas)
        .def_readwrite("residential", &LoadProfiles::residential);

    py::class_<WaterParams>(m, "WaterParams")
        .def(py::init<>())
        .def_readwrite("power_coeff", &WaterParams::power_coeff)
        .def_readwrite("storage_om_rate", &WaterParams::storage_om_rate)
        .def_readwrite("storage_init", &WaterParams::storage_init)
        .def_readwrite("storage_min", &WaterParams::storage_min)
        .def_readwrite("storage_max", &WaterParams::storage_max)
        .def_readwrite("flow_max", &WaterParams::flow_max);

    py::class_<GasParams>(m, "GasParams")
        .def(py::init<>())
        .def_readwrite("power_coeff", &GasParams::power_coeff)
        .def_readwrite("tank_om_rate", &GasParams::tank_om_rate)
        .def_readwrite("pipe_om_rate", &GasParams::pipe_om_rate)
        .def_readwrite("transport_unit_cost", &GasParams::transport_unit_cost)
        .def_readwrite("unit_volume", &GasParams::unit_volume)
        .def_readwrite("pressure_ref", &GasParams::pressure_ref)
        .def_readwrite("pipe_storage_ref", &GasParams::pipe_storage_ref)
        .def_readwrite("tank_init", &GasParams::tank_init)
        .def_readwrite("tank_min", &GasParams::tank_min)
        .def_readwrite("tank_max", &GasParams::tank_max)
        .def_readwrite("pipe_init", &GasParams::pipe_init)
        .def_readwrite("pipe_min", &GasParams::pipe_min)
        .def_readwrite("pipe_max", &GasParams::pipe_max)
        .def_readwrite("flow_max", &GasParams::flow_max)
        .def_readwrite("transport_max_units", &GasParams::transport_max_units);

    py::class_<PowerParams>(m, "PowerParams")
        .def(py::init<>())
        .def_readwrite("c1", &PowerParams::c1)
        .def_readwrite("c2", &PowerParams::c2)
        .def_readwrite("c3", &PowerParams::c3)
        .def_readwrite("gen_cap", &PowerParams::gen_cap)
        .def_readwrite("n_breakpoints", &PowerParams::n_breakpoints);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("horizon", &Scenario::horizon)
        .def_readwrite("loads", &Scenario::loads)
        .def_readwrite("water", &Scenario::water)
        .def_readwrite("gas", &Scenario::gas)
        .def_readwrite("power", &Scenario::power)
        .def_readwrite("pseudo_rate", &Scenario::pseudo_rate)
        .def("__str__", &scenario_to_string);

    py::class_<DispatchSchedule>(m, "DispatchSchedule")
        .def_readonly("flows", &DispatchSchedule::flows)
        .def_readonly("storages", &DispatchSchedule::storages)
        .def_readonly("electric_load", &DispatchSchedule::electric_load)
        .def_readonly("pressures", &DispatchSchedule::pressures)
        .def_readonly("transport_units", &DispatchSchedule::transport_units);

    py::class_<CostReport>(m, "CostReport")
        .def_readonly("water_om", &CostReport::water_om)
        .def_readonly("gas_om", &CostReport::gas_om)
        .def_readonly("water_electric", &CostReport::water_electric)
        .def_readonly("gas_electric", &CostReport::gas_electric)
        .def_readonly("residential_electric", &CostReport::residential_electric)
        .def_readonly("total", &CostReport::total)
        .def_readonly("final_rate", &CostReport::final_rate);

    py::class_<CaseResult>(m, "CaseResult")
        .def_readonly("water", &CaseResult::water)
        .def_readonly("gas", &CaseResult::gas)
        .def_readonly("total_power", &CaseResult::total_power)
        .def_readonly("electric_cost_total", &CaseResult::electric_cost_total)
        .def_readonly("final_rate", &CaseResult::final_rate)
        .def_readonly("report", &CaseResult::report);

    py::class_<PeakMetrics>(m, "PeakMetrics")
        .def_readonly("peak", &PeakMetrics::peak)
        .def_readonly("valley", &PeakMetrics::valley)
        .def_readonly("peak_to_valley", &PeakMetrics::peak_to_valley);

    py::class_<CaseComparison>(m, "CaseComparison")
        .def_readonly("case1", &CaseComparison::case1)
        .def_readonly("case2", &CaseComparison::case2)
        .def("to_json", &comparison_to_json)
        .def("to_text", &comparison_to_text);

    py::register_exception<ScenarioParseError>(m, "ScenarioParseError");
    py::register_exception<InfeasibleModel>(m, "InfeasibleModel");

    m.def("scenario_from_file", &scenario_from_file, py::arg("path"));
    m.def("scenario_from_string",
          [](const std::string& text) {
              std::istringstream in(text);
              return scenario_from_stream(in, "<string>");
          },
          py::arg("text"));
    m.def("scenario_to_string", &scenario_to_string, py::arg("scenario"));
    m.def("validate_scenario",
          [](const Scenario& s) { return validate_scenario(s).violations; },
          py::arg("scenario"), "List of violations; empty means the scenario is valid");
    m.def("run_case1", &run_case1, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_case2", &run_case2, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());
    m.def("compare_cases", &compare_cases, py::arg("case1"), py::arg("case2"));
    m.def("peak_metrics", &peak_metrics, py::arg("result"));
    m.def("case_to_csv", &case_to_csv, py::arg("scenario"), py::arg("result"));
}
