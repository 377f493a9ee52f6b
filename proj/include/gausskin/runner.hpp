#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gausskin/scenario.hpp"

namespace gausskin {

struct RunOptions {
    std::optional<int> steps_override;
    std::string out_dir;            // prepended to every output path
    std::ostream* log = nullptr;    // summary/warning sink; null = silent
};

/// Worst-case invariant drifts over the whole trajectory.
struct RunSummary {
    double max_symplecticity_defect = 0.0;
    double max_entropy_drift = 0.0;  // |joint entropy - kb n (1 + ln(pi hbar))|
    double max_purity_drift = 0.0;   // relative |det Sigma - (hbar/2)^{2n}|
    int rows_written = 0;
};

/// Execute the trajectory and emit one CSV row per step (plus the initial
/// state) for every requested series.
RunSummary run_scenario(const Scenario& scenario, const RunOptions& options = {});

struct CheckResult {
    std::string name;
    bool executed = false;
    bool passed = false;
    double metric = 0.0;
    double threshold = 0.0;
    std::string note;  // skip reason when not executed
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    const CheckResult* worst_failure() const;
};

struct VerifyOptions {
    int grid_points = 4096;          // power of two
    double grid_span_sigmas = 12.0;  // half-width beyond the mean range
    int pde_steps_per_unit_time = 2000;
    double riccati_threshold = 1e-7;
    double pde_threshold = 1e-4;
};

/// Riccati-vs-Iwasawa differential test (any n), and the PDE-vs-analytic
/// comparison when eligible (n = 1, b = 0, c positive). Ineligible checks are
/// reported as skipped and do not affect the verdict.
VerifyReport verify_scenario(const Scenario& scenario, std::ostream* log = nullptr,
                             const VerifyOptions& options = {});

}  // namespace gausskin
