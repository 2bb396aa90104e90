#pragma once

#include <string>
#include <vector>

namespace ewg {

struct Horizon {
    int n_steps = 0;
    double step_hours = 1.0;
};

// Per-timestep demand profiles. All three vectors have length n_steps.
struct LoadProfiles {
    std::vector<double> water;        // m^3/h
    std::vector<double> gas;          // m^3/h
    std::vector<double> residential;  // kW
};

struct WaterParams {
    double power_coeff = 2.0;      // kW per (m^3/h) of pumped flow
    double storage_om_rate = 0.0;  // $ per m^3 of end-of-step storage
    double storage_init = 0.0;     // m^3
    double storage_min = 0.0;      // m^3
    double storage_max = 0.0;      // m^3
    double flow_max = 0.0;         // m^3/h
};

struct GasParams {
    double power_coeff = 1.0;         // kW per (m^3/h) of compressed flow
    double tank_om_rate = 0.0;        // $ per m^3 of tank storage
    double pipe_om_rate = 0.0;        // $ per Pa of pipe pressure
    double transport_unit_cost = 0.0; // $ per delivered unit
    double unit_volume = 500.0;       // m^3 per transport unit
    double pressure_ref = 0.0;        // Pa at reference pipe storage
    double pipe_storage_ref = 0.0;    // m^3
    double tank_init = 0.0;
    double tank_min = 0.0;
    double tank_max = 0.0;
    double pipe_init = 0.0;
    double pipe_min = 0.0;
    double pipe_max = 0.0;
    double flow_max = 0.0;            // m^3/h
    int transport_max_units = 0;      // per-step cap on deliveries; 0 = derive default
};

struct PowerParams {
    double c1 = 0.0;       // $/kW^2
    double c2 = 0.0;       // $/kW
    double c3 = 0.0;       // $
    double gen_cap = 0.0;  // kW
    int n_breakpoints = 11;
};

struct Scenario {
    Horizon horizon;
    LoadProfiles loads;
    WaterParams water;
    GasParams gas;
    PowerParams power;
    double pseudo_rate = 0.25;  // $/kWh provisional tariff for independent operation

    bool operator==(const Scenario&) const = default;
};

inline bool operator==(const Horizon& a, const Horizon& b) {
    return a.n_steps == b.n_steps && a.step_hours == b.step_hours;
}
inline bool operator==(const LoadProfiles& a, const LoadProfiles& b) {
    return a.water == b.water && a.gas == b.gas && a.residential == b.residential;
}
inline bool operator==(const WaterParams& a, const WaterParams& b) {
    return a.power_coeff == b.power_coeff && a.storage_om_rate == b.storage_om_rate &&
           a.storage_init == b.storage_init && a.storage_min == b.storage_min &&
           a.storage_max == b.storage_max && a.flow_max == b.flow_max;
}
inline bool operator==(const GasParams& a, const GasParams& b) {
    return a.power_coeff == b.power_coeff && a.tank_om_rate == b.tank_om_rate &&
           a.pipe_om_rate == b.pipe_om_rate && a.transport_unit_cost == b.transport_unit_cost &&
           a.unit_volume == b.unit_volume && a.pressure_ref == b.pressure_ref &&
           a.pipe_storage_ref == b.pipe_storage_ref && a.tank_init == b.tank_init &&
           a.tank_min == b.tank_min && a.tank_max == b.tank_max && a.pipe_init == b.pipe_init &&
           a.pipe_min == b.pipe_min && a.pipe_max == b.pipe_max && a.flow_max == b.flow_max &&
           a.transport_max_units == b.transport_max_units;
}
inline bool operator==(const PowerParams& a, const PowerParams& b) {
    return a.c1 == b.c1 && a.c2 == b.c2 && a.c3 == b.c3 && a.gen_cap == b.gen_cap &&
           a.n_breakpoints == b.n_breakpoints;
}

// One subsystem's realized operation. Storage trajectories carry the t=0
// state at index 0, so they have length n_steps + 1.
struct DispatchSchedule {
    std::vector<double> flows;                  // Q(t), m^3/h
    std::vector<std::vector<double>> storages;  // water: {S_w}; gas: {S_g, S_p}
    std::vector<double> electric_load;          // P(t), kW
    std::vector<double> pressures;              // p_p(t), Pa; gas only
    std::vector<long long> transport_units;     // m(t); gas only
};

// Table-1-shaped cost breakdown for one case.
struct CostReport {
    double water_om = 0.0;              // A1
    double gas_om = 0.0;                // A2
    double water_electric = 0.0;        // B1
    double gas_electric = 0.0;          // B2
    double residential_electric = 0.0;  // B3
    double total = 0.0;                 // A1+A2+B1+B2+B3
    double final_rate = 0.0;            // $/kWh
};

struct ValidationResult {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationResult validate_scenario(const Scenario& s);

// Effective per-step transport cap: the configured value, or when unset the
// smallest cap that leaves room for twice the peak per-step gas demand.
int effective_transport_cap(const Scenario& s);

}  // namespace ewg
