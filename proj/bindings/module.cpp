#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gausskin/oracle.hpp"
#include "gausskin/runner.hpp"
#include "gausskin/thermodynamics.hpp"

namespace py = pybind11;
using namespace gausskin;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Squeezed coherent states of quadratic Hamiltonians: symplectic evolution, "
              "Wigner distributions, and the thermodynamic layer";

    py::register_exception<Error>(m, "GausskinError");

    py::class_<Constants>(m, "Constants")
        .def(py::init<>())
        .def(py::init([](double hbar, double kb, double tol) {
                 return Constants{hbar, kb, tol};
             }),
             py::arg("hbar") = 1.0, py::arg("kb") = 1.0, py::arg("tol") = 1e-9)
        .def_readwrite("hbar", &Constants::hbar)
        .def_readwrite("kb", &Constants::kb)
        .def_readwrite("tol", &Constants::tol);

    py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
        .def_static("constant", &HamiltonianSpec::constant, py::arg("a"), py::arg("b"),
                    py::arg("c"), py::arg("tol") = 1e-9)
        .def_property_readonly("n", &HamiltonianSpec::dim)
        .def("a", &HamiltonianSpec::a, py::arg("t"))
        .def("b", &HamiltonianSpec::b, py::arg("t"))
        .def("c", &HamiltonianSpec::c, py::arg("t"))
        .def("b_is_zero", &HamiltonianSpec::b_is_zero)
        .def("validity_warnings", &HamiltonianSpec::validity_warnings, py::arg("times"));

    py::class_<HamiltonianGenerator>(m, "HamiltonianGenerator")
        .def_readonly("n", &HamiltonianGenerator::n)
        .def_readonly("matrix", &HamiltonianGenerator::matrix);

    m.def("generator_at", &generator_at, py::arg("spec"), py::arg("t"));
    m.def("hamiltonian_value", &hamiltonian_value, py::arg("generator"), py::arg("z"));
    m.def("symplectic_form", &symplectic_form, py::arg("n"));

    py::class_<SymplecticMatrix>(m, "SymplecticMatrix")
        .def(py::init<Eigen::MatrixXd>(), py::arg("matrix"))
        .def_static("identity", &SymplecticMatrix::identity, py::arg("n"))
        .def_property_readonly("n", &SymplecticMatrix::dim)
        .def_property_readonly("matrix", &SymplecticMatrix::matrix)
        .def_property_readonly("A", &SymplecticMatrix::A)
        .def_property_readonly("B", &SymplecticMatrix::B)
        .def_property_readonly("C", &SymplecticMatrix::C)
        .def_property_readonly("D", &SymplecticMatrix::D);

    py::enum_<StepperOrder>(m, "StepperOrder")
        .value("midpoint2", StepperOrder::midpoint2)
        .value("magnus4", StepperOrder::magnus4);

    m.def("propagate", &propagate, py::arg("spec"), py::arg("t0"), py::arg("t1"),
          py::arg("steps"), py::arg("order") = StepperOrder::midpoint2);
    m.def("symplecticity_defect", &symplecticity_defect, py::arg("S"));

    py::class_<IwasawaFactors>(m, "IwasawaFactors")
        .def_readonly("g", &IwasawaFactors::g)
        .def_readonly("s", &IwasawaFactors::s)
        .def_readonly("u", &IwasawaFactors::u)
        .def_readonly("alpha", &IwasawaFactors::alpha)
        .def("reconstruct", &IwasawaFactors::reconstruct);

    m.def("iwasawa", &iwasawa, py::arg("S"));
    m.def("alpha_unwrap", &alpha_unwrap, py::arg("prev_alpha"), py::arg("u"));

    py::class_<GaussianState>(m, "GaussianState")
        .def_readonly("t", &GaussianState::t)
        .def_readonly("n", &GaussianState::n)
        .def_readonly("mean_q", &GaussianState::mean_q)
        .def_readonly("mean_p", &GaussianState::mean_p)
        .def_readonly("s2", &GaussianState::s2)
        .def_readonly("g", &GaussianState::g)
        .def_readonly("alpha", &GaussianState::alpha)
        .def_readonly("gamma", &GaussianState::gamma)
        .def("mean_z", &GaussianState::mean_z);

    m.def("initial_ground", &initial_ground, py::arg("n"), py::arg("mean_q"), py::arg("mean_p"));
    m.def(
        "evolve_state",
        [](const HamiltonianSpec& spec, const GaussianState& state0, double t1, int steps,
           StepperOrder order) { return evolve_state(spec, state0, t1, steps, order); },
        py::arg("spec"), py::arg("state0"), py::arg("t1"), py::arg("steps"),
        py::arg("order") = StepperOrder::midpoint2);

    py::class_<WignerMatrix>(m, "WignerMatrix")
        .def_readonly("n", &WignerMatrix::n)
        .def_readonly("matrix", &WignerMatrix::matrix);

    py::class_<CovarianceMatrix>(m, "CovarianceMatrix")
        .def_readonly("sigma_qq", &CovarianceMatrix::sigma_qq)
        .def_readonly("sigma_qp", &CovarianceMatrix::sigma_qp)
        .def_readonly("sigma_pq", &CovarianceMatrix::sigma_pq)
        .def_readonly("sigma_pp", &CovarianceMatrix::sigma_pp)
        .def("full", &CovarianceMatrix::full);

    py::class_<ComplexSymmetricMatrix>(m, "ComplexSymmetricMatrix")
        .def(py::init([](Eigen::MatrixXd re, Eigen::MatrixXd im) {
                 return ComplexSymmetricMatrix{std::move(re), std::move(im)};
             }),
             py::arg("real_part"), py::arg("imag_part"))
        .def_readonly("real_part", &ComplexSymmetricMatrix::real_part)
        .def_readonly("imag_part", &ComplexSymmetricMatrix::imag_part)
        .def("complex", &ComplexSymmetricMatrix::complex);

    m.def("wigner_matrix", &wigner_matrix, py::arg("state"));
    m.def("covariance", &covariance, py::arg("state"), py::arg("consts") = Constants{});
    m.def("gamma_matrix", &gamma_matrix, py::arg("state"));
    m.def("amplitude_at", &amplitude_at, py::arg("state"), py::arg("q"),
          py::arg("consts") = Constants{});
    m.def("phase_at", &phase_at, py::arg("state"), py::arg("q"), py::arg("consts") = Constants{});
    m.def("wigner_density", &wigner_density, py::arg("state"), py::arg("z"),
          py::arg("consts") = Constants{});

    py::class_<GaussianDistribution>(m, "GaussianDistribution")
        .def(py::init([](Eigen::VectorXd mean, Eigen::MatrixXd cov) {
                 return GaussianDistribution{std::move(mean), std::move(cov)};
             }),
             py::arg("mean"), py::arg("cov"))
        .def_readonly("mean", &GaussianDistribution::mean)
        .def_readonly("cov", &GaussianDistribution::cov)
        .def("density", &GaussianDistribution::density, py::arg("x"));

    py::enum_<DistributionKind>(m, "DistributionKind")
        .value("joint", DistributionKind::joint)
        .value("marginal", DistributionKind::marginal)
        .value("conditional", DistributionKind::conditional);

    py::class_<DriftDiffusion>(m, "DriftDiffusion")
        .def_readonly("drift", &DriftDiffusion::drift)
        .def_readonly("diffusion", &DriftDiffusion::diffusion);

    m.def("joint_distribution", &joint_distribution, py::arg("state"),
          py::arg("consts") = Constants{});
    m.def("marginal_distribution", &marginal_distribution, py::arg("state"),
          py::arg("consts") = Constants{});
    m.def("conditional_distribution", &conditional_distribution, py::arg("state"), py::arg("q"),
          py::arg("consts") = Constants{});
    m.def("drift_diffusion", &drift_diffusion, py::arg("state"), py::arg("spec"), py::arg("kind"),
          py::arg("consts") = Constants{}, py::arg("q_cond") = std::nullopt);
    m.def("fokker_planck_residual", &fokker_planck_residual, py::arg("state"), py::arg("spec"),
          py::arg("kind"), py::arg("sample_points"), py::arg("consts") = Constants{},
          py::arg("h") = 1e-3);
    m.def("marginal_flux", &marginal_flux, py::arg("state"), py::arg("spec"), py::arg("q"),
          py::arg("consts") = Constants{});

    py::class_<FluxSplit>(m, "FluxSplit")
        .def_readonly("irrotational", &FluxSplit::irrotational)
        .def_readonly("rotational", &FluxSplit::rotational);

    m.def("flux_split", &flux_split, py::arg("state"), py::arg("spec"), py::arg("q"),
          py::arg("consts") = Constants{});
    m.def("residual_sample_grid", &residual_sample_grid, py::arg("dist"),
          py::arg("points_per_axis") = 21, py::arg("span_sigmas") = 3.0);

    py::class_<ThermoReport>(m, "ThermoReport")
        .def_readonly("t", &ThermoReport::t)
        .def_readonly("joint_entropy", &ThermoReport::joint_entropy)
        .def_readonly("marginal_entropy", &ThermoReport::marginal_entropy)
        .def_readonly("conditional_entropy", &ThermoReport::conditional_entropy)
        .def_readonly("entropy_production_q", &ThermoReport::entropy_production_q)
        .def_readonly("temperature_scalar", &ThermoReport::temperature_scalar)
        .def_readonly("pressure_scalar_at_mean", &ThermoReport::pressure_scalar_at_mean)
        .def_readonly("mean_quantum_potential", &ThermoReport::mean_quantum_potential)
        .def_readonly("quantum_potential_variance", &ThermoReport::quantum_potential_variance)
        .def_readonly("u_kinetic", &ThermoReport::u_kinetic)
        .def_readonly("u_conditional_at_mean", &ThermoReport::u_conditional_at_mean)
        .def_readonly("u_phase_space", &ThermoReport::u_phase_space)
        .def_readonly("virial_residual", &ThermoReport::virial_residual);

    py::class_<Temperature>(m, "Temperature")
        .def_readonly("matrix", &Temperature::matrix)
        .def_readonly("scalar", &Temperature::scalar);

    py::class_<Pressure>(m, "Pressure")
        .def_readonly("tensor", &Pressure::tensor)
        .def_readonly("scalar", &Pressure::scalar);

    m.def("joint_entropy", &joint_entropy, py::arg("state"), py::arg("consts") = Constants{});
    m.def("marginal_entropy", &marginal_entropy, py::arg("state"),
          py::arg("consts") = Constants{});
    m.def("conditional_entropy", &conditional_entropy, py::arg("state"),
          py::arg("consts") = Constants{});
    m.def("entropy_production", &entropy_production, py::arg("state"), py::arg("spec"),
          py::arg("consts") = Constants{});
    m.def("temperature", &temperature, py::arg("state"), py::arg("spec"),
          py::arg("consts") = Constants{});
    m.def("pressure", &pressure, py::arg("state"), py::arg("spec"), py::arg("q"),
          py::arg("consts") = Constants{});
    m.def("quantum_potential", &quantum_potential, py::arg("state"), py::arg("spec"),
          py::arg("q"), py::arg("consts") = Constants{});
    m.def("mean_quantum_potential", &mean_quantum_potential, py::arg("state"), py::arg("spec"),
          py::arg("consts") = Constants{});
    m.def("quantum_potential_variance", &quantum_potential_variance, py::arg("state"),
          py::arg("spec"), py::arg("consts") = Constants{});
    m.def("conditional_internal_energy", &conditional_internal_energy, py::arg("state"),
          py::arg("spec"), py::arg("q"), py::arg("consts") = Constants{});
    m.def("phase_space_internal_energy", &phase_space_internal_energy, py::arg("state"),
          py::arg("spec"), py::arg("consts") = Constants{});
    m.def("virial_residual", &virial_residual, py::arg("state"), py::arg("spec"),
          py::arg("consts") = Constants{});
    m.def("maslov_index", &maslov_index, py::arg("alpha_start"), py::arg("alpha_end"));
    m.def("thermo_report", &thermo_report, py::arg("state"), py::arg("spec"),
          py::arg("consts") = Constants{});

    py::class_<oracle::GridWavefunction>(m, "GridWavefunction")
        .def_readonly("x_min", &oracle::GridWavefunction::x_min)
        .def_readonly("x_max", &oracle::GridWavefunction::x_max)
        .def_readonly("points", &oracle::GridWavefunction::points)
        .def_readonly("values", &oracle::GridWavefunction::values)
        .def_readonly("t", &oracle::GridWavefunction::t)
        .def("dx", &oracle::GridWavefunction::dx)
        .def("norm", &oracle::GridWavefunction::norm)
        .def("grid", &oracle::GridWavefunction::grid);

    m.def("sample_state_on_grid", &oracle::sample_state_on_grid, py::arg("state"),
          py::arg("consts"), py::arg("x_min"), py::arg("x_max"), py::arg("points"));
    m.def("splitstep_evolve", &oracle::splitstep_evolve, py::arg("spec"), py::arg("psi0"),
          py::arg("t1"), py::arg("steps"), py::arg("consts") = Constants{});
    m.def("compare_to_analytic", &oracle::compare_to_analytic, py::arg("grid_psi"),
          py::arg("state"), py::arg("consts") = Constants{});
    m.def("riccati_integrate", &oracle::riccati_integrate, py::arg("spec"), py::arg("gamma0"),
          py::arg("t1"), py::arg("steps"), py::arg("t0") = 0.0);
    m.def("gauss_hermite_expect", &oracle::gauss_hermite_expect, py::arg("dist"), py::arg("f"),
          py::arg("order"));

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("constants", &Scenario::constants)
        .def_readonly("hamiltonian", &Scenario::hamiltonian)
        .def_readonly("mean_q", &Scenario::mean_q)
        .def_readonly("mean_p", &Scenario::mean_p)
        .def_readonly("t_end", &Scenario::t_end)
        .def_readonly("steps", &Scenario::steps);

    m.def("parse_scenario", &parse_scenario, py::arg("json_text"),
          py::arg("origin") = "<string>", py::arg("default_tol") = 1e-9);
    m.def("load_scenario", &load_scenario, py::arg("path"), py::arg("default_tol") = 1e-9);
    m.def("serialize_scenario", &serialize_scenario, py::arg("scenario"));
    m.def("preset_names", &preset_names);
    m.def("preset_json", &preset_json, py::arg("name"));
    m.def("load_preset", &load_preset, py::arg("name"));

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("max_symplecticity_defect", &RunSummary::max_symplecticity_defect)
        .def_readonly("max_entropy_drift", &RunSummary::max_entropy_drift)
        .def_readonly("max_purity_drift", &RunSummary::max_purity_drift)
        .def_readonly("rows_written", &RunSummary::rows_written);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("executed", &CheckResult::executed)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("metric", &CheckResult::metric)
        .def_readonly("threshold", &CheckResult::threshold)
        .def_readonly("note", &CheckResult::note);

    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("checks", &VerifyReport::checks)
        .def("all_passed", &VerifyReport::all_passed);

    m.def(
        "run_scenario",
        [](const Scenario& scenario, const std::string& out_dir, std::optional<int> steps) {
            RunOptions options;
            options.out_dir = out_dir;
            options.steps_override = steps;
            return run_scenario(scenario, options);
        },
        py::arg("scenario"), py::arg("out_dir") = std::string(),
        py::arg("steps") = std::nullopt);
    m.def(
        "verify_scenario",
        [](const Scenario& scenario) { return verify_scenario(scenario, nullptr); },
        py::arg("scenario"));
}
