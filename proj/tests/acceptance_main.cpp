// Acceptance suite: every release criterion as one pass/fail line, with the
// thresholds pinned in code. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "gausskin/oracle.hpp"
#include "gausskin/runner.hpp"
#include "gausskin/thermodynamics.hpp"

using namespace gausskin;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool passed = true;
    std::string detail;
};

std::string fmt(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3g", value);
    return buffer;
}

GaussianState ground_of(const Scenario& scenario) {
    return initial_ground(scenario.hamiltonian.dim(), scenario.mean_q, scenario.mean_p);
}

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> uniform(-scale, scale);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = uniform(rng);
    return 0.5 * (m + m.transpose()).eval();
}

// random squeezed-coherent state built from exponentials of random
// Hamiltonian matrices, so exactly the states the flow can reach
GaussianState random_state(int n, std::mt19937_64& rng) {
    const Eigen::MatrixXd omega = symplectic_form(n);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    for (int k = 0; k < 3; ++k) {
        const Eigen::MatrixXd ham = -omega * random_symmetric(2 * n, rng, 0.5);
        s = ham.exp() * s;
    }
    const IwasawaFactors factors = iwasawa(SymplecticMatrix(s));
    std::uniform_real_distribution<double> uniform(-1.5, 1.5);
    GaussianState state;
    state.n = n;
    state.mean_q = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng); });
    state.mean_p = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng); });
    const Eigen::MatrixXd s2 = factors.s * factors.s;
    state.s2 = 0.5 * (s2 + s2.transpose());
    state.g = factors.g;
    state.alpha = factors.alpha;
    return state;
}

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
    const Eigen::MatrixXd m = random_symmetric(n, rng, 1.0);
    return m * m.transpose() + 0.3 * Eigen::MatrixXd::Identity(n, n);
}

std::vector<Scenario> all_presets() {
    std::vector<Scenario> scenarios;
    for (const auto& name : preset_names()) scenarios.push_back(load_preset(name));
    return scenarios;
}

// ---- criteria ------------------------------------------------------------

Outcome equilibrium_entropy() {
    Scenario scenario = load_preset("parametric_oscillator");
    const double closed = 1.0 + std::log(kPi);
    double worst = 0.0;
    evolve_state(scenario.hamiltonian, ground_of(scenario), 20.0, 10000,
                 StepperOrder::midpoint2,
                 [&](const GaussianState& state, const SymplecticMatrix&) {
                     worst = std::max(worst, std::abs(joint_entropy(state) - closed));
                 });
    return {worst <= 1e-9, "max |S - kb n(1+ln pi hbar)| = " + fmt(worst) + " over 1e4 steps"};
}

Outcome symplectic_structure() {
    double worst_defect = 0.0;
    double worst_purity = 0.0;
    for (const Scenario& scenario : all_presets()) {
        const int n = scenario.hamiltonian.dim();
        const double purity_target = std::pow(0.5, 2 * n);
        evolve_state(scenario.hamiltonian, ground_of(scenario), scenario.t_end, scenario.steps,
                     StepperOrder::midpoint2,
                     [&](const GaussianState& state, const SymplecticMatrix& S) {
                         worst_defect = std::max(worst_defect, symplecticity_defect(S));
                         const double det = covariance(state).full().determinant();
                         worst_purity = std::max(
                             worst_purity, std::abs(det - purity_target) / purity_target);
                     });
    }
    const bool pass = worst_defect <= 1e-9 && worst_purity <= 1e-8;
    return {pass, "max defect = " + fmt(worst_defect) + ", max purity drift = " +
                      fmt(worst_purity)};
}

Outcome riccati_iwasawa_equivalence() {
    double worst = 0.0;
    for (const Scenario& scenario : all_presets()) {
        const double t_end = 5.0;
        const int steps = 5000;
        const GaussianState final_state = evolve_state(
            scenario.hamiltonian, ground_of(scenario), t_end, steps, StepperOrder::magnus4);
        const ComplexSymmetricMatrix via_riccati = oracle::riccati_integrate(
            scenario.hamiltonian, gamma_matrix(ground_of(scenario)), t_end, steps);
        worst = std::max(worst, (gamma_matrix(final_state).complex() - via_riccati.complex())
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    return {worst <= 1e-7, "max |Gamma_flow - Gamma_riccati| = " + fmt(worst) + " at t=5"};
}

Outcome pde_differential_test() {
    struct Case {
        const char* preset;
        double q0, p0;
    };
    // displaced packets so the comparison exercises mean motion too
    const Case cases[] = {{"harmonic_oscillator", 1.0, 0.0},
                          {"free_particle", 0.0, 1.0},
                          {"parametric_oscillator", 1.0, 0.0}};
    double worst = 0.0;
    for (const Case& c : cases) {
        const Scenario scenario = load_preset(c.preset);
        const GaussianState start =
            initial_ground(1, Eigen::VectorXd::Constant(1, c.q0),
                           Eigen::VectorXd::Constant(1, c.p0));
        double max_s2 = 1.0, min_q = c.q0, max_q = c.q0;
        const GaussianState final_state =
            evolve_state(scenario.hamiltonian, start, 1.0, 4000, StepperOrder::magnus4,
                         [&](const GaussianState& state, const SymplecticMatrix&) {
                             max_s2 = std::max(max_s2, state.s2(0, 0));
                             min_q = std::min(min_q, state.mean_q(0));
                             max_q = std::max(max_q, state.mean_q(0));
                         });
        const double sigma = std::sqrt(0.5 * max_s2);
        const oracle::GridWavefunction psi0 = oracle::sample_state_on_grid(
            start, Constants{}, min_q - 12.0 * sigma, max_q + 12.0 * sigma, 4096);
        const oracle::GridWavefunction psi =
            oracle::splitstep_evolve(scenario.hamiltonian, psi0, 1.0, 2000);
        worst = std::max(worst, oracle::compare_to_analytic(psi, final_state));
    }
    return {worst <= 1e-4, "max phase-aligned L2 distance = " + fmt(worst) + " at t=1"};
}

Outcome thermodynamic_identities() {
    std::mt19937_64 rng(20250809);
    double worst_mean = 0.0, worst_peak = 0.0, worst_virial = 0.0, worst_isserlis = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 2;
        const GaussianState state = random_state(n, rng);
        const HamiltonianSpec spec = HamiltonianSpec::constant(
            Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, n), random_spd(n, rng));

        const double mean_q_pot = mean_quantum_potential(state, spec);
        const double kb_temp = temperature(state, spec).scalar;
        worst_mean = std::max(worst_mean, std::abs(mean_q_pot - 0.5 * kb_temp));

        const double peak = quantum_potential(state, spec, state.mean_q);
        worst_peak = std::max(worst_peak, std::abs(peak - 2.0 * mean_q_pot));

        worst_virial = std::max(worst_virial, std::abs(virial_residual(state, spec)));

        const double closed = quantum_potential_variance(state, spec);
        const double quadrature = oracle::gauss_hermite_expect(
            marginal_distribution(state),
            [&](const Eigen::VectorXd& q) {
                const double fluctuation = 2.0 * (peak - quantum_potential(state, spec, q));
                return fluctuation * fluctuation;
            },
            20);
        worst_isserlis = std::max(worst_isserlis, std::abs(quadrature - closed) / closed);
    }
    const bool pass = worst_mean <= 1e-10 && worst_peak <= 1e-10 && worst_virial <= 1e-9 &&
                      worst_isserlis <= 1e-8;
    return {pass, "<Q>-kbT/2 = " + fmt(worst_mean) + ", Qmax-2<Q> = " + fmt(worst_peak) +
                      ", virial = " + fmt(worst_virial) + ", isserlis rel = " +
                      fmt(worst_isserlis) + " over 1000 states"};
}

Outcome entropy_production_balance() {
    double worst_rate = 0.0, worst_balance = 0.0, worst_order = 0.0;
    for (const char* name : {"free_particle", "coupled_2d"}) {
        const Scenario scenario = load_preset(name);
        const double t = 0.8;
        const int steps = 1000;
        const GaussianState base =
            evolve_state(scenario.hamiltonian, ground_of(scenario), t, steps);
        const double closed = entropy_production(base, scenario.hamiltonian);
        auto fd_rates = [&](double h) {
            const GaussianState plus = evolve_state(scenario.hamiltonian, base, t + h, 1);
            const GaussianState minus = evolve_state(scenario.hamiltonian, base, t - h, 1);
            const double marg = (marginal_entropy(plus) - marginal_entropy(minus)) / (2.0 * h);
            const double cond =
                (conditional_entropy(plus) - conditional_entropy(minus)) / (2.0 * h);
            return std::pair{marg, cond};
        };
        const auto [marg_h, cond_h] = fd_rates(1e-3);
        const auto [marg_h2, cond_h2] = fd_rates(5e-4);
        worst_rate = std::max(worst_rate, std::abs(marg_h2 - closed));
        worst_balance = std::max(worst_balance, std::abs(marg_h + cond_h));
        const double err_h = std::abs(marg_h - closed);
        const double err_h2 = std::abs(marg_h2 - closed);
        if (err_h2 > 1e-12) {  // above rounding floor: check the h^2 rate
            worst_order = std::max(worst_order, std::abs(err_h / err_h2 - 4.0));
        }
    }
    const bool pass = worst_rate <= 1e-6 && worst_balance <= 1e-9 && worst_order <= 1.5;
    return {pass, "fd mismatch = " + fmt(worst_rate) + ", dSq/dt + dSpq/dt = " +
                      fmt(worst_balance) + ", |rate-4| = " + fmt(worst_order)};
}

Outcome fokker_planck_residuals() {
    double worst = 0.0, worst_order = 0.0;
    for (const char* name : {"free_particle", "parametric_oscillator", "coupled_2d"}) {
        const Scenario scenario = load_preset(name);
        const int n = scenario.hamiltonian.dim();
        const GaussianState start =
            initial_ground(n, 0.5 * scenario.mean_q, 0.5 * scenario.mean_p);
        const GaussianState state = evolve_state(scenario.hamiltonian, start, 0.9, 900);

        // standard grids: 21 points per axis over mean +/- 3 sigma of each
        // distribution; the conditional is sampled in p at the mean position
        const auto joint_grid = residual_sample_grid(joint_distribution(state), 21);
        const auto marginal_grid = residual_sample_grid(marginal_distribution(state), 21);
        std::vector<Eigen::VectorXd> conditional_grid;
        for (const auto& p :
             residual_sample_grid(conditional_distribution(state, state.mean_q), 21)) {
            Eigen::VectorXd x(2 * n);
            x << state.mean_q, p;
            conditional_grid.push_back(x);
        }

        struct KindCase {
            DistributionKind kind;
            const std::vector<Eigen::VectorXd>* samples;
        };
        const KindCase kinds[] = {{DistributionKind::joint, &joint_grid},
                                  {DistributionKind::marginal, &marginal_grid},
                                  {DistributionKind::conditional, &conditional_grid}};
        for (const auto& kind_case : kinds) {
            const double res_h = fokker_planck_residual(state, scenario.hamiltonian,
                                                        kind_case.kind, *kind_case.samples, {},
                                                        1e-3);
            const double res_h2 = fokker_planck_residual(state, scenario.hamiltonian,
                                                         kind_case.kind, *kind_case.samples, {},
                                                         5e-4);
            worst = std::max(worst, res_h);
            if (res_h2 > 1e-11) {
                worst_order = std::max(worst_order, res_h / res_h2);
            }
        }
    }
    // rate h^2 shows up as a factor-of-4 drop per halving
    const bool order_ok = worst_order <= 6.0;
    return {worst <= 1e-6 && order_ok,
            "max residual = " + fmt(worst) + " at h=1e-3, worst halving ratio = " +
                fmt(worst_order)};
}

Outcome maslov_and_alpha_rate() {
    const GaussianState period = evolve_state(
        load_preset("harmonic_oscillator").hamiltonian,
        initial_ground(1, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)), 2.0 * kPi, 4000);
    const double mu = maslov_index(0.0, period.alpha);
    const double mu_err = std::abs(mu - 2.0);

    double worst_rate = 0.0;
    for (const Scenario& scenario : all_presets()) {
        const double t = 0.8;
        const int steps = 1000;
        const GaussianState base =
            evolve_state(scenario.hamiltonian, ground_of(scenario), t, steps);
        auto alpha_fd = [&](double h) {
            const GaussianState plus = evolve_state(scenario.hamiltonian, base, t + h, 1);
            const GaussianState minus = evolve_state(scenario.hamiltonian, base, t - h, 1);
            return (plus.alpha - minus.alpha) / (2.0 * h);
        };
        const double expected = (scenario.hamiltonian.c(t) * base.s2.inverse()).trace();
        worst_rate = std::max(worst_rate, std::abs(alpha_fd(5e-4) - expected));
    }
    const bool pass = mu_err <= 1e-8 && worst_rate <= 1e-6;
    return {pass, "|mu - 2| = " + fmt(mu_err) + ", worst |d alpha/dt - Tr(c s^-2)| = " +
                      fmt(worst_rate)};
}

Outcome ground_state_energy() {
    const Scenario scenario = load_preset("harmonic_oscillator");
    const GaussianState ground =
        initial_ground(1, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1));
    const double energy = phase_space_internal_energy(ground, scenario.hamiltonian);
    const double error = std::abs(energy - 0.5);
    return {error <= 1e-10, "|U - hbar omega/2| = " + fmt(error)};
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* label;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "equilibrium entropy on the parametric oscillator", 5.0, equilibrium_entropy},
        {2, "symplectic structure and purity on all presets", 5.0, symplectic_structure},
        {3, "riccati-iwasawa equivalence at t=5", 10.0, riccati_iwasawa_equivalence},
        {4, "pde differential test at t=1", 60.0, pde_differential_test},
        {5, "thermodynamic identities on 1000 random states", 30.0, thermodynamic_identities},
        {6, "entropy production balance", 5.0, entropy_production_balance},
        {7, "fokker-planck residuals for all three distributions", 30.0,
         fokker_planck_residuals},
        {8, "maslov index and alpha rate", 5.0, maslov_and_alpha_rate},
        {9, "oscillator ground-state energy", 1.0, ground_state_energy},
    };

    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& err) {
            outcome = {false, std::string("exception: ") + err.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = elapsed < criterion.budget_seconds;
        const bool passed = outcome.passed && in_budget;
        std::printf("%s criterion %d: %s (%s) [%.2f s / %.0f s]\n", passed ? "PASS" : "FAIL",
                    criterion.id, criterion.label, outcome.detail.c_str(), elapsed,
                    criterion.budget_seconds);
        if (!passed) ++failures;
    }
    return failures;
}
