#include "ewg/scenario_io.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace ewg {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct Parser {
    std::string origin;
    std::map<std::string, std::map<std::string, double>> sections;
    std::vector<std::array<double, 4>> load_rows;
    bool saw_loads = false;

    [[noreturn]] void fail(int line_no, const std::string& what) const {
        std::ostringstream msg;
        msg << origin << ":" << line_no << ": " << what;
        throw ScenarioParseError(msg.str());
    }

    void parse(std::istream& in) {
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            if (t.front() == '[') {
                if (t.back() != ']') fail(line_no, "unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                if (section == "loads") saw_loads = true;
                continue;
            }
            if (section.empty()) fail(line_no, "value before any section header");
            if (section == "loads") {
                parse_load_row(t, line_no);
            } else {
                size_t eq = t.find('=');
                if (eq == std::string::npos) fail(line_no, "expected key = value");
                std::string key = trim(t.substr(0, eq));
                std::string val = trim(t.substr(eq + 1));
                char* end = nullptr;
                double x = std::strtod(val.c_str(), &end);
                if (end == val.c_str() || *end != '\0')
                    fail(line_no, "cannot parse number '" + val + "' for key '" + key + "'");
                sections[section][key] = x;
            }
        }
    }

    void parse_load_row(const std::string& t, int line_no) {
        if (!t.empty() && !std::isdigit(static_cast<unsigned char>(t[0])) && t[0] != '-')
            return;  // header row "t,L_w,L_g,L_r"
        std::array<double, 4> row{};
        std::stringstream ss(t);
        std::string cell;
        int i = 0;
        while (std::getline(ss, cell, ',')) {
            if (i >= 4) fail(line_no, "too many columns in loads row");
            cell = trim(cell);
            char* end = nullptr;
            row[i] = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                fail(line_no, "cannot parse loads value '" + cell + "'");
            ++i;
        }
        if (i != 4) fail(line_no, "loads row needs 4 columns: t,L_w,L_g,L_r");
        load_rows.push_back(row);
    }

    double get(const std::string& section, const std::string& key, double fallback) {
        auto si = sections.find(section);
        if (si == sections.end()) return fallback;
        auto ki = si->second.find(key);
        return ki == si->second.end() ? fallback : ki->second;
    }
};

}  // namespace

Scenario scenario_from_stream(std::istream& in, const std::string& origin) {
    Parser p;
    p.origin = origin;
    p.parse(in);
    if (!p.saw_loads || p.load_rows.empty())
        throw ScenarioParseError(origin + ": missing required [loads] section");

    Scenario s;
    s.horizon.n_steps =
        static_cast<int>(p.get("horizon", "n_steps", static_cast<double>(p.load_rows.size())));
    s.horizon.step_hours = p.get("horizon", "step_hours", 1.0);

    for (const auto& row : p.load_rows) {
        s.loads.water.push_back(row[1]);
        s.loads.gas.push_back(row[2]);
        s.loads.residential.push_back(row[3]);
    }

    WaterParams dw;
    s.water.power_coeff = p.get("water", "h_w", dw.power_coeff);
    s.water.storage_om_rate = p.get("water", "r_w", dw.storage_om_rate);
    s.water.storage_init = p.get("water", "storage_init", dw.storage_init);
    s.water.storage_min = p.get("water", "storage_min", dw.storage_min);
    s.water.storage_max = p.get("water", "storage_max", dw.storage_max);
    s.water.flow_max = p.get("water", "flow_max", dw.flow_max);

    GasParams dg;
    s.gas.power_coeff = p.get("gas", "h_g", dg.power_coeff);
    s.gas.tank_om_rate = p.get("gas", "r_g", dg.tank_om_rate);
    s.gas.pipe_om_rate = p.get("gas", "r_p", dg.pipe_om_rate);
    s.gas.transport_unit_cost = p.get("gas", "r_s", dg.transport_unit_cost);
    s.gas.unit_volume = p.get("gas", "unit_volume", dg.unit_volume);
    s.gas.pressure_ref = p.get("gas", "pressure_ref", dg.pressure_ref);
    s.gas.pipe_storage_ref = p.get("gas", "pipe_storage_ref", dg.pipe_storage_ref);
    s.gas.tank_init = p.get("gas", "tank_init", dg.tank_init);
    s.gas.tank_min = p.get("gas", "tank_min", dg.tank_min);
    s.gas.tank_max = p.get("gas", "tank_max", dg.tank_max);
    s.gas.pipe_init = p.get("gas", "pipe_init", dg.pipe_init);
    s.gas.pipe_min = p.get("gas", "pipe_min", dg.pipe_min);
    s.gas.pipe_max = p.get("gas", "pipe_max", dg.pipe_max);
    s.gas.flow_max = p.get("gas", "flow_max", dg.flow_max);
    s.gas.transport_max_units =
        static_cast<int>(p.get("gas", "transport_max_units", dg.transport_max_units));

    PowerParams dp;
    s.power.c1 = p.get("power", "c1", dp.c1);
    s.power.c2 = p.get("power", "c2", dp.c2);
    s.power.c3 = p.get("power", "c3", dp.c3);
    s.power.gen_cap = p.get("power", "gen_cap", dp.gen_cap);
    s.power.n_breakpoints = static_cast<int>(p.get("power", "n_breakpoints", dp.n_breakpoints));
    s.pseudo_rate = p.get("power", "pseudo_rate", 0.25);

    return s;
}

Scenario scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("cannot open scenario file: " + path);
    return scenario_from_stream(in, path);
}

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_scenario(const Scenario& s, std::ostream& out) {
    out << "[horizon]\n";
    out << "n_steps = " << s.horizon.n_steps << "\n";
    out << "step_hours = " << num(s.horizon.step_hours) << "\n\n";

    out << "[water]\n";
    out << "h_w = " << num(s.water.power_coeff) << "\n";
    out << "r_w = " << num(s.water.storage_om_rate) << "\n";
    out << "storage_init = " << num(s.water.storage_init) << "\n";
    out << "storage_min = " << num(s.water.storage_min) << "\n";
    out << "storage_max = " << num(s.water.storage_max) << "\n";
    out << "flow_max = " << num(s.water.flow_max) << "\n\n";

    out << "[gas]\n";
    out << "h_g = " << num(s.gas.power_coeff) << "\n";
    out << "r_g = " << num(s.gas.tank_om_rate) << "\n";
    out << "r_p = " << num(s.gas.pipe_om_rate) << "\n";
    out << "r_s = " << num(s.gas.transport_unit_cost) << "\n";
    out << "unit_volume = " << num(s.gas.unit_volume) << "\n";
    out << "pressure_ref = " << num(s.gas.pressure_ref) << "\n";
    out << "pipe_storage_ref = " << num(s.gas.pipe_storage_ref) << "\n";
    out << "tank_init = " << num(s.gas.tank_init) << "\n";
    out << "tank_min = " << num(s.gas.tank_min) << "\n";
    out << "tank_max = " << num(s.gas.tank_max) << "\n";
    out << "pipe_init = " << num(s.gas.pipe_init) << "\n";
    out << "pipe_min = " << num(s.gas.pipe_min) << "\n";
    out << "pipe_max = " << num(s.gas.pipe_max) << "\n";
    out << "flow_max = " << num(s.gas.flow_max) << "\n";
    out << "transport_max_units = " << s.gas.transport_max_units << "\n\n";

    out << "[power]\n";
    out << "c1 = " << num(s.power.c1) << "\n";
    out << "c2 = " << num(s.power.c2) << "\n";
    out << "c3 = " << num(s.power.c3) << "\n";
    out << "gen_cap = " << num(s.power.gen_cap) << "\n";
    out << "n_breakpoints = " << s.power.n_breakpoints << "\n";
    out << "pseudo_rate = " << num(s.pseudo_rate) << "\n\n";

    out << "[loads]\n";
    out << "t,L_w,L_g,L_r\n";
    for (int t = 0; t < s.horizon.n_steps; ++t) {
        out << (t + 1) << "," << num(s.loads.water[t]) << "," << num(s.loads.gas[t]) << ","
            << num(s.loads.residential[t]) << "\n";
    }
}

std::string scenario_to_string(const Scenario& s) {
    std::ostringstream out;
    write_scenario(s, out);
    return out.str();
}

}  // namespace ewg
