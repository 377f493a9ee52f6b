#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gausskin/runner.hpp"

namespace {

// GAUSSKIN_TOL replaces the default 1e-9 check tolerance; a tol set
// explicitly in the scenario file still wins.
double default_tolerance() {
    const char* raw = std::getenv("GAUSSKIN_TOL");
    if (!raw) return 1e-9;
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || value <= 0.0) {
        std::cerr << "warning: ignoring invalid GAUSSKIN_TOL value '" << raw << "'\n";
        return 1e-9;
    }
    return value;
}

int run_simulate(const std::string& path, std::optional<int> steps, const std::string& out_dir) {
    const gausskin::Scenario scenario = gausskin::load_scenario(path, default_tolerance());
    gausskin::RunOptions options;
    options.steps_override = steps;
    options.out_dir = out_dir;
    options.log = &std::cout;
    gausskin::run_scenario(scenario, options);
    return 0;
}

int run_verify(const std::string& path) {
    const gausskin::Scenario scenario = gausskin::load_scenario(path, default_tolerance());
    const gausskin::VerifyReport report = gausskin::verify_scenario(scenario, &std::cout);
    if (report.all_passed()) return 0;
    if (const gausskin::CheckResult* worst = report.worst_failure()) {
        std::cerr << "verification failed, worst offender: " << worst->name << " (metric "
                  << worst->metric << " vs threshold " << worst->threshold << ")\n";
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squeezed-coherent-state simulator and verifier"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<int> steps_override;
    std::string out_dir;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a scenario and emit CSV series");
    simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--steps", steps_override, "Override the scenario step count");
    simulate->add_option("--out-dir", out_dir, "Directory prepended to output paths");

    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify", "Run oracle differential checks");
    verify->add_option("scenario", verify_path, "Scenario JSON file")->required();

    CLI::App* presets = app.add_subcommand("presets", "List or dump built-in scenarios");
    std::string preset_action;
    std::string preset_name;
    presets->add_option("action", preset_action, "list | dump")->required();
    presets->add_option("name", preset_name, "Preset name (for dump)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        app.exit(help);
        return 0;
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(scenario_path, steps_override, out_dir);
        if (verify->parsed()) return run_verify(verify_path);
        if (presets->parsed()) {
            if (preset_action == "list") {
                for (const auto& name : gausskin::preset_names()) std::cout << name << "\n";
                return 0;
            }
            if (preset_action == "dump") {
                if (preset_name.empty()) {
                    std::cerr << "error: presets dump requires a name\n";
                    return 2;
                }
                std::cout << gausskin::preset_json(preset_name) << "\n";
                return 0;
            }
            std::cerr << "error: unknown presets action '" << preset_action << "'\n";
            return 2;
        }
    } catch (const gausskin::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
