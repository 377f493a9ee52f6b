#include "gausskin/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include "gausskin/oracle.hpp"
#include "gausskin/thermodynamics.hpp"

namespace gausskin {

namespace {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw Error("cannot open output file " + path.string());
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

std::vector<std::string> series_columns(SeriesKind kind, int n) {
    std::vector<std::string> cols{"t"};
    auto matrix_cols = [&](const std::string& prefix, int dim) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                cols.push_back(prefix + "_" + std::to_string(i) + std::to_string(j));
    };
    switch (kind) {
        case SeriesKind::mean:
            for (int i = 0; i < n; ++i) cols.push_back("q" + std::to_string(i));
            for (int i = 0; i < n; ++i) cols.push_back("p" + std::to_string(i));
            break;
        case SeriesKind::iwasawa:
            matrix_cols("s2", n);
            matrix_cols("g", n);
            cols.push_back("alpha");
            break;
        case SeriesKind::thermo:
            cols.insert(cols.end(),
                        {"joint_entropy", "marginal_entropy", "conditional_entropy",
                         "entropy_production_q", "temperature_scalar", "pressure_scalar_at_mean",
                         "mean_quantum_potential", "quantum_potential_variance", "u_kinetic",
                         "u_conditional_at_mean", "u_phase_space", "virial_residual"});
            break;
        case SeriesKind::wigner:
            matrix_cols("W", 2 * n);
            break;
    }
    return cols;
}

std::vector<double> series_row(SeriesKind kind, const GaussianState& state,
                               const HamiltonianSpec& spec, const Constants& consts) {
    std::vector<double> row{state.t};
    auto push_matrix = [&](const Eigen::MatrixXd& m) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    };
    switch (kind) {
        case SeriesKind::mean:
            for (int i = 0; i < state.n; ++i) row.push_back(state.mean_q(i));
            for (int i = 0; i < state.n; ++i) row.push_back(state.mean_p(i));
            break;
        case SeriesKind::iwasawa:
            push_matrix(state.s2);
            push_matrix(state.g);
            row.push_back(state.alpha);
            break;
        case SeriesKind::thermo: {
            const ThermoReport report = thermo_report(state, spec, consts);
            row.insert(row.end(),
                       {report.joint_entropy, report.marginal_entropy, report.conditional_entropy,
                        report.entropy_production_q, report.temperature_scalar,
                        report.pressure_scalar_at_mean, report.mean_quantum_potential,
                        report.quantum_potential_variance, report.u_kinetic,
                        report.u_conditional_at_mean, report.u_phase_space,
                        report.virial_residual});
            break;
        }
        case SeriesKind::wigner:
            push_matrix(wigner_matrix(state).matrix);
            break;
    }
    return row;
}

std::vector<double> probe_times(double t_end, int count) {
    std::vector<double> times;
    for (int i = 0; i < count; ++i) times.push_back(t_end * i / std::max(1, count - 1));
    return times;
}

}  // namespace

RunSummary run_scenario(const Scenario& scenario, const RunOptions& options) {
    const Constants consts = scenario.constants;
    const int n = scenario.hamiltonian.dim();
    const int steps = options.steps_override.value_or(scenario.steps);
    if (steps < 1) throw ValidationError("steps must be >= 1");

    if (options.log) {
        for (const auto& warning :
             scenario.hamiltonian.validity_warnings(probe_times(scenario.t_end, 9))) {
            *options.log << "warning: " << warning << "\n";
        }
    }

    std::vector<std::pair<SeriesKind, CsvWriter>> writers;
    for (const auto& out : scenario.outputs) {
        std::filesystem::path path = out.path;
        if (!options.out_dir.empty()) {
            path = std::filesystem::path(options.out_dir) / path;
            std::filesystem::create_directories(path.parent_path());
        } else if (path.has_parent_path()) {
            std::filesystem::create_directories(path.parent_path());
        }
        writers.emplace_back(out.series, CsvWriter(path, series_columns(out.series, n)));
    }

    const GaussianState state0 = initial_ground(n, scenario.mean_q, scenario.mean_p);
    const double closed_form_entropy =
        consts.kb * n * (1.0 + std::log(std::numbers::pi * consts.hbar));
    const double purity_target = std::pow(0.5 * consts.hbar, 2 * n);

    RunSummary summary;
    auto record = [&](const GaussianState& state, double defect) {
        for (auto& [kind, writer] : writers) {
            writer.row(series_row(kind, state, scenario.hamiltonian, consts));
        }
        summary.max_symplecticity_defect = std::max(summary.max_symplecticity_defect, defect);
        summary.max_entropy_drift =
            std::max(summary.max_entropy_drift,
                     std::abs(joint_entropy(state, consts) - closed_form_entropy));
        summary.max_purity_drift =
            std::max(summary.max_purity_drift,
                     std::abs(covariance(state, consts).full().determinant() - purity_target) /
                         purity_target);
        ++summary.rows_written;
    };

    record(state0, 0.0);
    evolve_state(scenario.hamiltonian, state0, scenario.t_end, steps, StepperOrder::midpoint2,
                 [&](const GaussianState& state, const SymplecticMatrix& S) {
                     record(state, symplecticity_defect(S));
                 });

    if (options.log) {
        *options.log << "rows written per series: " << summary.rows_written << "\n"
                     << "max symplecticity defect: "
                     << format_double(summary.max_symplecticity_defect) << "\n"
                     << "max joint-entropy drift:  " << format_double(summary.max_entropy_drift)
                     << "\n"
                     << "max purity drift (rel):   " << format_double(summary.max_purity_drift)
                     << "\n";
    }
    return summary;
}

bool VerifyReport::all_passed() const {
    for (const auto& check : checks) {
        if (check.executed && !check.passed) return false;
    }
    return true;
}

const CheckResult* VerifyReport::worst_failure() const {
    const CheckResult* worst = nullptr;
    for (const auto& check : checks) {
        if (!check.executed || check.passed) continue;
        if (!worst || check.metric / check.threshold > worst->metric / worst->threshold) {
            worst = &check;
        }
    }
    return worst;
}

VerifyReport verify_scenario(const Scenario& scenario, std::ostream* log) {
    const Constants consts = scenario.constants;
    const HamiltonianSpec& spec = scenario.hamiltonian;
    const int n = spec.dim();
    const double t_end = scenario.t_end;
    VerifyReport report;

    if (log) {
        for (const auto& warning : spec.validity_warnings(probe_times(t_end, 9))) {
            *log << "warning: " << warning << "\n";
        }
    }

    const GaussianState state0 = initial_ground(n, scenario.mean_q, scenario.mean_p);
    const int steps = std::max(scenario.steps, static_cast<int>(std::ceil(t_end / 1e-3)));

    double max_s2_trace = state0.s2.trace();
    double min_q = scenario.mean_q.minCoeff();
    double max_q = scenario.mean_q.maxCoeff();
    const GaussianState final_state = evolve_state(
        spec, state0, t_end, steps, StepperOrder::magnus4,
        [&](const GaussianState& state, const SymplecticMatrix&) {
            max_s2_trace = std::max(max_s2_trace, state.s2.trace());
            min_q = std::min(min_q, state.mean_q.minCoeff());
            max_q = std::max(max_q, state.mean_q.maxCoeff());
        });

    {
        const ComplexSymmetricMatrix from_flow = gamma_matrix(final_state);
        const ComplexSymmetricMatrix from_riccati =
            oracle::riccati_integrate(spec, gamma_matrix(state0), t_end, steps);
        const double metric =
            (from_flow.complex() - from_riccati.complex()).cwiseAbs().maxCoeff();
        report.checks.push_back(
            {"riccati_vs_iwasawa", true, metric <= 1e-7, metric, 1e-7, ""});
    }

    std::string skip_reason;
    if (n != 1) {
        skip_reason = "skipped (n > 1)";
    } else if (!spec.b_is_zero()) {
        skip_reason = "skipped (b != 0)";
    } else {
        for (double t : probe_times(t_end, 33)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.c(t));
            if (es.eigenvalues().minCoeff() <= 1e-12) {
                skip_reason = "skipped (c not positive)";
                break;
            }
        }
    }

    if (skip_reason.empty()) {
        const double sigma_max = std::sqrt(0.5 * consts.hbar * max_s2_trace);
        const double x_min = min_q - 12.0 * sigma_max;
        const double x_max = max_q + 12.0 * sigma_max;
        const int pde_steps = std::max(2000, static_cast<int>(std::ceil(2000.0 * t_end)));
        const oracle::GridWavefunction psi0 =
            oracle::sample_state_on_grid(state0, consts, x_min, x_max, 4096);
        const oracle::GridWavefunction psi =
            oracle::splitstep_evolve(spec, psi0, t_end, pde_steps, consts);
        const double metric = oracle::compare_to_analytic(psi, final_state, consts);
        report.checks.push_back({"pde_vs_analytic", true, metric <= 1e-4, metric, 1e-4, ""});
    } else {
        report.checks.push_back({"pde_vs_analytic", false, false, 0.0, 1e-4, skip_reason});
    }

    if (log) {
        for (const auto& check : report.checks) {
            if (!check.executed) {
                *log << check.name << ": " << check.note << "\n";
            } else {
                *log << check.name << ": " << (check.passed ? "pass" : "FAIL")
                     << " (metric " << format_double(check.metric) << ", threshold "
                     << format_double(check.threshold) << ")\n";
            }
        }
    }
    return report;
}

}  // namespace gausskin
