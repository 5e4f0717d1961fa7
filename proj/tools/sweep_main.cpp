// Parameter-sweep front end: evaluates any library target over a grid or
// line-index range and emits deterministic CSV/JSON for plotting and
// regression baselines.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spectra/complex_order.hpp"
#include "spectra/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitPoleOnly = 4;

spectra::SweepTarget parse_target(const std::string& name) {
    // Reuse the config-parser mapping so flag form and JSON form agree.
    std::string cfg = std::string("{\"schema\":1,\"target\":\"") + name +
                      "\",\"variable\":\"x\",\"start\":0,\"stop\":1,\"points\":2}";
    return spectra::spec_from_json(cfg).target;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sweep evaluator for driven two-level transition rates and fluorescence spectra"};

    std::string config_path, target_name, variable, methods_csv, out_path, format = "csv";
    double start = 0.0, stop = 0.0;
    int points = 0;
    std::vector<std::string> set_args;

    app.add_option("--config", config_path, "JSON sweep config (schema 1)");
    app.add_option("--target", target_name, "Sweep target name");
    app.add_option("--variable", variable, "Variable to sweep");
    app.add_option("--start", start, "Variable start value");
    app.add_option("--stop", stop, "Variable stop value");
    app.add_option("--points", points, "Number of grid points (>= 2)");
    app.add_option("--set", set_args, "Fixed parameter, key=value (repeatable)");
    app.add_option("--methods", methods_csv, "Comma-separated method list");
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        spectra::SweepSpec spec;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot open config file: " << config_path << "\n";
                return kExitUsage;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            spec = spectra::spec_from_json(buf.str());
        } else {
            if (target_name.empty() || variable.empty() || points == 0) {
                std::cerr << "error: flag form requires --target, --variable, --start, --stop, --points\n";
                return kExitUsage;
            }
            spec.target = parse_target(target_name);
            spec.variable = variable;
            spec.start = start;
            spec.stop = stop;
            spec.points = points;
            spec.methods = split_csv(methods_csv);
            for (const auto& kv : set_args) {
                auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) {
                    std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
                    return kExitUsage;
                }
                try {
                    spec.fixed[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
                } catch (const std::exception&) {
                    std::cerr << "error: --set value for '" << kv.substr(0, eq)
                              << "' is not a number\n";
                    return kExitUsage;
                }
            }
        }

        spectra::SweepTable table = spectra::run_sweep(spec);
        std::string rendered = format == "json" ? spectra::to_json(table) : spectra::to_csv(table);

        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open output file: " << out_path << "\n";
                return kExitUsage;
            }
            out << rendered;
        }

        bool all_pole = !table.rows.empty();
        for (const auto& row : table.rows) all_pole = all_pole && row.status == "pole";
        return all_pole ? kExitPoleOnly : kExitOk;
    } catch (const spectra::AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return kExitAccuracy;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAccuracy;
    }
}
