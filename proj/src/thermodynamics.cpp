#include "gausskin/thermodynamics.hpp"

#include <cmath>
#include <numbers>

namespace gausskin {

namespace {

double log_det_spd(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw FactorizationError(std::string(what) + " is not positive definite");
    }
    double log_det = 0.0;
    for (int i = 0; i < m.rows(); ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
    return log_det;
}

Eigen::MatrixXd s2_inverse(const GaussianState& state) {
    Eigen::LLT<Eigen::MatrixXd> llt(state.s2);
    if (llt.info() != Eigen::Success) throw SingularStateError("s^2 is not invertible");
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(state.n, state.n));
    return 0.5 * (inv + inv.transpose());
}

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

}  // namespace

double joint_entropy(const GaussianState& state, const Constants& consts) {
    const Eigen::MatrixXd sigma = covariance(state, consts).full();
    return 0.5 * consts.kb *
           (2 * state.n * std::log(kTwoPiE) + log_det_spd(sigma, "covariance"));
}

double marginal_entropy(const GaussianState& state, const Constants& consts) {
    const Eigen::MatrixXd m = 0.5 * consts.hbar * state.s2;
    return 0.5 * consts.kb * (state.n * std::log(kTwoPiE) + log_det_spd(m, "marginal covariance"));
}

double conditional_entropy(const GaussianState& state, const Constants& consts) {
    const Eigen::MatrixXd m = 0.5 * consts.hbar * s2_inverse(state);
    return 0.5 * consts.kb *
           (state.n * std::log(kTwoPiE) + log_det_spd(m, "conditional covariance"));
}

double entropy_production(const GaussianState& state, const HamiltonianSpec& spec,
                          const Constants& consts) {
    const Eigen::MatrixXd b = spec.b(state.t);
    const Eigen::MatrixXd c = spec.c(state.t);
    return consts.kb * (b - state.g * c).trace();
}

Temperature temperature(const GaussianState& state, const HamiltonianSpec& spec,
                        const Constants& consts) {
    Temperature temp;
    temp.matrix = (0.5 * consts.hbar / consts.kb) * spec.c(state.t) * s2_inverse(state);
    temp.scalar = temp.matrix.trace();
    return temp;
}

Pressure pressure(const GaussianState& state, const HamiltonianSpec& spec,
                  const Eigen::VectorXd& q, const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("position vector must have length n");
    const Eigen::MatrixXd m_inv =
        (2.0 / consts.hbar) * s2_inverse(state);  // inverse marginal covariance
    const Eigen::VectorXd d = q - state.mean_q;
    const double rho = marginal_distribution(state, consts).density(q);
    const Eigen::VectorXd w = m_inv * d;
    const Eigen::MatrixXd hessian = (w * w.transpose() - m_inv) * rho;
    Pressure result;
    result.tensor = -0.25 * consts.hbar * consts.hbar * spec.c(state.t) * hessian;
    result.scalar = result.tensor.trace();
    return result;
}

double quantum_potential(const GaussianState& state, const HamiltonianSpec& spec,
                         const Eigen::VectorXd& q, const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("position vector must have length n");
    const Eigen::MatrixXd s2_inv = s2_inverse(state);
    const Eigen::MatrixXd c = spec.c(state.t);
    const Eigen::VectorXd d = q - state.mean_q;
    return 0.5 * consts.hbar * (c * s2_inv).trace() -
           0.5 * d.dot(s2_inv * c * s2_inv * d);
}

double mean_quantum_potential(const GaussianState& state, const HamiltonianSpec& spec,
                              const Constants& consts) {
    return 0.25 * consts.hbar * (spec.c(state.t) * s2_inverse(state)).trace();
}

double quantum_potential_variance(const GaussianState& state, const HamiltonianSpec& spec,
                                  const Constants& consts) {
    const Eigen::MatrixXd temp = temperature(state, spec, consts).matrix;
    const double trace = temp.trace();
    const double trace_sq = (temp * temp).trace();
    return consts.kb * consts.kb * (trace * trace + 2.0 * trace_sq);
}

double conditional_internal_energy(const GaussianState& state, const HamiltonianSpec& spec,
                                   const Eigen::VectorXd& q, const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("position vector must have length n");
    const Eigen::VectorXd p_cond = state.mean_p - state.g * (q - state.mean_q);
    Eigen::VectorXd z(2 * state.n);
    z << q, p_cond;
    const HamiltonianGenerator gen = generator_at(spec, state.t);
    const double kbT = consts.kb * temperature(state, spec, consts).scalar;
    return hamiltonian_value(gen, z) + 0.5 * kbT;
}

double phase_space_internal_energy(const GaussianState& state, const HamiltonianSpec& spec,
                                   const Constants& consts) {
    const HamiltonianGenerator gen = generator_at(spec, state.t);
    const Eigen::MatrixXd a = spec.a(state.t);
    const Eigen::MatrixXd b = spec.b(state.t);
    const Eigen::MatrixXd c = spec.c(state.t);
    const Eigen::MatrixXd& s2 = state.s2;
    const Eigen::MatrixXd& g = state.g;
    const double u_kin = mean_quantum_potential(state, spec, consts);
    return hamiltonian_value(gen, state.mean_z()) + u_kin +
           0.25 * consts.hbar * (a * s2).trace() -
           0.25 * consts.hbar * (2.0 * b * g * s2 - c * g * s2 * g).trace();
}

double virial_residual(const GaussianState& state, const HamiltonianSpec& spec,
                       const Constants& consts) {
    const Eigen::MatrixXd s2_inv = s2_inverse(state);
    const Eigen::MatrixXd c = spec.c(state.t);
    const Eigen::MatrixXd sigma_qq = 0.5 * consts.hbar * state.s2;
    const double twice_u_kin = 0.5 * consts.hbar * (c * s2_inv).trace();
    // <(q - <q>)^T grad Q> with grad Q = -s^-2 c s^-2 (q - <q>)
    const double mean_q_dot_force = -(s2_inv * c * s2_inv * sigma_qq).trace();
    return twice_u_kin + mean_q_dot_force;
}

double maslov_index(double alpha_start, double alpha_end) {
    return (alpha_end - alpha_start) / std::numbers::pi;
}

ThermoReport thermo_report(const GaussianState& state, const HamiltonianSpec& spec,
                           const Constants& consts) {
    ThermoReport report;
    report.t = state.t;
    report.joint_entropy = joint_entropy(state, consts);
    report.marginal_entropy = marginal_entropy(state, consts);
    report.conditional_entropy = conditional_entropy(state, consts);
    report.entropy_production_q = entropy_production(state, spec, consts);
    report.temperature_scalar = temperature(state, spec, consts).scalar;
    report.pressure_scalar_at_mean = pressure(state, spec, state.mean_q, consts).scalar;
    report.mean_quantum_potential = mean_quantum_potential(state, spec, consts);
    report.quantum_potential_variance = quantum_potential_variance(state, spec, consts);
    report.u_kinetic = 0.5 * consts.kb * report.temperature_scalar;
    report.u_conditional_at_mean =
        conditional_internal_energy(state, spec, state.mean_q, consts);
    report.u_phase_space = phase_space_internal_energy(state, spec, consts);
    report.virial_residual = virial_residual(state, spec, consts);
    return report;
}

}  // namespace gausskin
