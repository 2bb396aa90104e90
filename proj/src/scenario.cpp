#include "ewg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ewg {

namespace {

void check_bounds(std::vector<std::string>& out, const std::string& name, double lo, double init,
                  double hi) {
    if (!(lo <= init && init <= hi)) {
        std::ostringstream msg;
        msg << name << " bounds out of order: min " << lo << ", init " << init << ", max " << hi;
        out.push_back(msg.str());
    }
}

}  // namespace

int effective_transport_cap(const Scenario& s) {
    if (s.gas.transport_max_units > 0) return s.gas.transport_max_units;
    double peak = 0.0;
    for (double v : s.loads.gas) peak = std::max(peak, v);
    if (s.gas.unit_volume <= 0.0) return 1;
    int cap = static_cast<int>(std::ceil(2.0 * peak * s.horizon.step_hours / s.gas.unit_volume));
    return std::max(cap, 1);
}

ValidationResult validate_scenario(const Scenario& s) {
    ValidationResult r;
    auto& v = r.violations;
    const int n = s.horizon.n_steps;
    const double T = s.horizon.step_hours;

    if (n < 1) v.push_back("horizon: n_steps must be at least 1");
    if (!(T > 0.0)) v.push_back("horizon: step_hours must be positive");

    auto check_len = [&](const std::vector<double>& seq, const char* name) {
        if (static_cast<int>(seq.size()) != n) {
            std::ostringstream msg;
            msg << "loads: " << name << " length mismatch (" << seq.size() << " values, n_steps "
                << n << ")";
            v.push_back(msg.str());
        }
        for (double x : seq) {
            if (x < 0.0 || !std::isfinite(x)) {
                v.push_back(std::string("loads: ") + name + " has a negative or non-finite value");
                break;
            }
        }
    };
    check_len(s.loads.water, "water");
    check_len(s.loads.gas, "gas");
    check_len(s.loads.residential, "residential");

    check_bounds(v, "water storage", s.water.storage_min, s.water.storage_init,
                 s.water.storage_max);
    if (!(s.water.flow_max > 0.0)) v.push_back("water: flow_max must be positive");
    if (!(s.water.power_coeff > 0.0)) v.push_back("water: h_w must be positive");
    if (s.water.storage_om_rate < 0.0) v.push_back("water: r_w must be non-negative");

    check_bounds(v, "gas tank", s.gas.tank_min, s.gas.tank_init, s.gas.tank_max);
    check_bounds(v, "gas pipe", s.gas.pipe_min, s.gas.pipe_init, s.gas.pipe_max);
    if (!(s.gas.unit_volume > 0.0)) v.push_back("gas: unit_volume must be positive");
    if (!(s.gas.pressure_ref > 0.0)) v.push_back("gas: pressure_ref must be positive");
    if (!(s.gas.pipe_storage_ref > 0.0)) v.push_back("gas: pipe_storage_ref must be positive");
    if (!(s.gas.flow_max > 0.0)) v.push_back("gas: flow_max must be positive");

    if (!(s.power.c1 > 0.0)) v.push_back("power: c1 must be positive");
    if (!(s.power.gen_cap > 0.0)) v.push_back("power: gen_cap must be positive");
    if (s.power.n_breakpoints < 2) v.push_back("power: n_breakpoints must be at least 2");
    if (s.pseudo_rate < 0.0) v.push_back("power: pseudo_rate must be non-negative");

    const bool shapes_ok = n >= 1 && T > 0.0 &&
                           static_cast<int>(s.loads.water.size()) == n &&
                           static_cast<int>(s.loads.gas.size()) == n &&
                           static_cast<int>(s.loads.residential.size()) == n &&
                           s.gas.unit_volume > 0.0;
    if (!shapes_ok) return r;

    // Necessary horizon feasibility: deliverable volume must cover demand.
    const double water_demand = std::accumulate(s.loads.water.begin(), s.loads.water.end(), 0.0) * T;
    if (water_demand > n * s.water.flow_max * T + 1e-9) {
        v.push_back("water horizon infeasible: total demand exceeds total deliverable flow");
    }
    const double gas_demand = std::accumulate(s.loads.gas.begin(), s.loads.gas.end(), 0.0) * T;
    if (gas_demand > n * s.gas.flow_max * T + 1e-9) {
        v.push_back("gas horizon infeasible: total demand exceeds total deliverable flow");
    }
    const int cap = effective_transport_cap(s);
    if (gas_demand > static_cast<double>(n) * cap * s.gas.unit_volume + 1e-9) {
        v.push_back("gas horizon infeasible: transport cap below total demand");
    }
    // Cyclic tank plus pipe balance force the delivered volume to equal total
    // demand, so demand must be an integer number of transport units.
    const double units = gas_demand / s.gas.unit_volume;
    if (std::abs(units - std::round(units)) > 1e-6 * (1.0 + std::abs(units))) {
        v.push_back("gas horizon infeasible: total demand is not an integer number of "
                    "transport units");
    }
    return r;
}

}  // namespace ewg
