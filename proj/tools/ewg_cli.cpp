#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ewg/scenario_io.hpp"
#include "ewg/workflows.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalidScenario = 2;
constexpr int kExitInfeasible = 3;

struct Options {
    std::string scenario_path;
    std::string out_dir = ".";
    std::string format = "text";
    int breakpoints = 0;      // 0 = keep scenario value
    double pseudo_rate = -1;  // <0 = keep scenario value
    bool verbose = false;
};

ewg::Scenario load(const Options& opt) {
    ewg::Scenario s = ewg::scenario_from_file(opt.scenario_path);
    if (opt.breakpoints > 0) s.power.n_breakpoints = opt.breakpoints;
    if (opt.pseudo_rate >= 0) s.pseudo_rate = opt.pseudo_rate;
    ewg::ValidationResult v = ewg::validate_scenario(s);
    if (!v.ok()) {
        std::cerr << "invalid scenario " << opt.scenario_path << ":\n";
        for (const auto& msg : v.violations) std::cerr << "  - " << msg << "\n";
        std::exit(kExitInvalidScenario);
    }
    return s;
}

// All outputs are staged in memory and written only after every step
// succeeded, so a failure leaves no partial files behind.
void write_outputs(const std::map<std::string, std::string>& files, const std::string& out_dir) {
    fs::create_directories(out_dir);
    for (const auto& [name, content] : files) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        out << content;
        if (!out) {
            std::cerr << "failed to write " << name << " under " << out_dir << "\n";
            std::exit(kExitUsage);
        }
    }
}

void print_case(const ewg::CaseResult& r, const char* name, bool verbose) {
    ewg::PeakMetrics pm = ewg::peak_metrics(r);
    std::cout << name << ": total $" << r.report.total << ", electric $"
              << r.electric_cost_total << ", rate " << r.final_rate << " $/kWh";
    if (verbose)
        std::cout << ", peak " << pm.peak << " kW, valley " << pm.valley << " kW, ratio "
                  << pm.peak_to_valley;
    std::cout << "\n";
}

int run_single(const Options& opt, bool joint) {
    ewg::Scenario s = load(opt);
    ewg::CaseResult r = joint ? ewg::run_case2(s) : ewg::run_case1(s);
    const char* name = joint ? "case2" : "case1";
    std::map<std::string, std::string> files;
    files[std::string(name) + ".csv"] = ewg::case_to_csv(s, r);
    if (opt.format == "json")
        files[std::string(name) + ".json"] = ewg::report_to_json(r.report);
    write_outputs(files, opt.out_dir);
    print_case(r, name, opt.verbose);
    return 0;
}

int run_compare(const Options& opt) {
    ewg::Scenario s = load(opt);
    ewg::CaseResult a = ewg::run_case1(s);
    ewg::CaseResult b = ewg::run_case2(s);
    ewg::CaseComparison cmp = ewg::compare_cases(a, b);

    std::map<std::string, std::string> files;
    files["report.json"] = ewg::comparison_to_json(cmp);
    files["report.txt"] = ewg::comparison_to_text(cmp);
    files["case1.csv"] = ewg::case_to_csv(s, a);
    files["case2.csv"] = ewg::case_to_csv(s, b);
    write_outputs(files, opt.out_dir);

    if (opt.format == "json")
        std::cout << files["report.json"];
    else
        std::cout << files["report.txt"];
    if (opt.verbose) {
        print_case(a, "case1", true);
        print_case(b, "case2", true);
    }
    return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file")->required();
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "text", "csv-all"}));
    cmd->add_option("--breakpoints", opt.breakpoints, "Override breakpoint count");
    cmd->add_option("--pseudo-rate", opt.pseudo_rate, "Override pseudo electricity rate");
    cmd->add_flag("--verbose", opt.verbose, "Print peak metrics and solver detail");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electricity-water-gas joint scheduling"};
    app.require_subcommand(1);
    Options opt;
    CLI::App* case1 = app.add_subcommand("case1", "Independent water/gas operation");
    CLI::App* case2 = app.add_subcommand("case2", "Joint co-optimization");
    CLI::App* compare = app.add_subcommand("compare", "Run both cases and compare");
    add_common(case1, opt);
    add_common(case2, opt);
    add_common(compare, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (case1->parsed()) return run_single(opt, false);
        if (case2->parsed()) return run_single(opt, true);
        return run_compare(opt);
    } catch (const ewg::ScenarioParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalidScenario;
    } catch (const ewg::InfeasibleModel& e) {
        std::cerr << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
