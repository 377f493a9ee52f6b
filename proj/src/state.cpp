#include "gausskin/state.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace gausskin {

Eigen::VectorXd GaussianState::mean_z() const {
    Eigen::VectorXd z(2 * n);
    z << mean_q, mean_p;
    return z;
}

GaussianState initial_ground(int n, const Eigen::VectorXd& mean_q, const Eigen::VectorXd& mean_p) {
    if (n < 1) throw ValidationError("dimension n must be positive");
    if (mean_q.size() != n || mean_p.size() != n) {
        throw ShapeError("mean vectors must have length n");
    }
    GaussianState state;
    state.t = 0.0;
    state.n = n;
    state.mean_q = mean_q;
    state.mean_p = mean_p;
    state.s2 = Eigen::MatrixXd::Identity(n, n);
    state.g = Eigen::MatrixXd::Zero(n, n);
    state.alpha = 0.0;
    state.gamma = 0.0;
    return state;
}

namespace {

// Any unitary with det u0 = e^{i alpha} reproduces the state's physical
// content; the scalar phase choice is canonical and exact for n = 1.
Eigen::MatrixXd implicit_propagator(const GaussianState& state) {
    const Eigen::MatrixXd s = spd_sqrt(state.s2);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, state.alpha / state.n));
    const Eigen::MatrixXcd u0 =
        phase * Eigen::MatrixXcd::Identity(state.n, state.n);
    return shear_block(state.g) * magnifier_block(s) * rotation_block(u0);
}

struct EvolveWork {
    const HamiltonianSpec& spec;
    StepperOrder order;
    Eigen::MatrixXd S;
    Eigen::VectorXd z;
    double t;
    double alpha;
    double gamma;
    int step_index = 0;
    IwasawaFactors factors;

    double action_integrand(double time, const Eigen::VectorXd& zv) const {
        const HamiltonianGenerator gen = generator_at(spec, time);
        const Eigen::VectorXd zdot = gen.matrix * zv;
        const int n = gen.n;
        const double circulation =
            zv.tail(n).dot(zdot.head(n)) - zv.head(n).dot(zdot.tail(n));
        return 0.5 * circulation - hamiltonian_value(gen, zv);
    }

    // One committed interval [t, t+h]; recursively halved whenever the
    // rotation phase would jump by more than pi/2, which keeps the branch
    // tracking inside the |increment| < pi contract.
    void advance(double h, int depth) {
        const Eigen::MatrixXd E = magnus_step(spec, t, h, order);
        Eigen::MatrixXd S_new = E * S;
        if (!S_new.allFinite()) {
            throw DivergenceError("state propagation non-finite at step " +
                                  std::to_string(step_index));
        }
        IwasawaFactors f = iwasawa(SymplecticMatrix(S_new));
        const double alpha_new = alpha_unwrap(alpha, f.u);
        if (std::abs(alpha_new - alpha) > 0.5 * std::numbers::pi && depth < 40) {
            advance(0.5 * h, depth + 1);
            advance(0.5 * h, depth + 1);
            return;
        }
        const double f0 = action_integrand(t, z);
        const Eigen::VectorXd z_new = E * z;
        const double f1 = action_integrand(t + h, z_new);
        gamma += 0.5 * h * (f0 + f1);
        S = std::move(S_new);
        z = z_new;
        t += h;
        alpha = alpha_new;
        factors = std::move(f);
    }

    GaussianState snapshot() const {
        GaussianState state;
        state.t = t;
        state.n = spec.dim();
        state.mean_q = z.head(spec.dim());
        state.mean_p = z.tail(spec.dim());
        const Eigen::MatrixXd s2 = factors.s * factors.s;
        state.s2 = 0.5 * (s2 + s2.transpose());
        state.g = factors.g;
        state.alpha = alpha;
        state.gamma = gamma;
        return state;
    }
};

}  // namespace

GaussianState evolve_state(const HamiltonianSpec& spec, const GaussianState& state0, double t1,
                           int steps, StepperOrder order, const StepObserver& observer) {
    if (state0.n != spec.dim()) throw ShapeError("state dimension does not match spec");
    if (steps < 1) throw ValidationError("steps must be >= 1");
    if (t1 == state0.t) return state0;

    EvolveWork work{spec,        order,        implicit_propagator(state0),
                    state0.mean_z(), state0.t, state0.alpha,
                    state0.gamma};
    const double h = (t1 - state0.t) / steps;
    for (int k = 0; k < steps; ++k) {
        work.step_index = k;
        work.advance(h, 0);
        if (observer) observer(work.snapshot(), SymplecticMatrix(work.S));
    }
    return work.snapshot();
}

namespace {

Eigen::MatrixXd symmetric_inverse(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw SingularStateError(std::string(what) + " is not invertible");
    }
    Eigen::MatrixXd inv =
        llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
    return 0.5 * (inv + inv.transpose());
}

}  // namespace

WignerMatrix wigner_matrix(const GaussianState& state) {
    const int n = state.n;
    const Eigen::MatrixXd s2_inv = symmetric_inverse(state.s2, "s^2");
    Eigen::MatrixXd w(2 * n, 2 * n);
    w.topLeftCorner(n, n) = s2_inv + state.g * state.s2 * state.g;
    w.topRightCorner(n, n) = state.g * state.s2;
    w.bottomLeftCorner(n, n) = state.s2 * state.g;
    w.bottomRightCorner(n, n) = state.s2;
    w = 0.5 * (w + w.transpose()).eval();
    return {n, std::move(w)};
}

CovarianceMatrix covariance(const GaussianState& state, const Constants& consts) {
    const int n = state.n;
    const double half_hbar = 0.5 * consts.hbar;
    const Eigen::MatrixXd s2_inv = symmetric_inverse(state.s2, "s^2");
    CovarianceMatrix cov;
    cov.n = n;
    cov.sigma_qq = half_hbar * state.s2;
    cov.sigma_qp = -half_hbar * state.s2 * state.g;
    cov.sigma_pq = cov.sigma_qp.transpose();
    cov.sigma_pp = half_hbar * (s2_inv + state.g * state.s2 * state.g);
    return cov;
}

Eigen::MatrixXd CovarianceMatrix::full() const {
    Eigen::MatrixXd m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = sigma_qq;
    m.topRightCorner(n, n) = sigma_qp;
    m.bottomLeftCorner(n, n) = sigma_pq;
    m.bottomRightCorner(n, n) = sigma_pp;
    return 0.5 * (m + m.transpose()).eval();
}

Eigen::MatrixXcd ComplexSymmetricMatrix::complex() const {
    return real_part + std::complex<double>(0.0, 1.0) * imag_part;
}

ComplexSymmetricMatrix gamma_matrix(const GaussianState& state) {
    return {-state.g, symmetric_inverse(state.s2, "s^2")};
}

double amplitude_at(const GaussianState& state, const Eigen::VectorXd& q,
                    const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("position vector must have length n");
    const Eigen::MatrixXd s2_inv = symmetric_inverse(state.s2, "s^2");
    const Eigen::VectorXd d = q - state.mean_q;
    const double det_s2 = state.s2.determinant();
    const double norm = std::pow(std::numbers::pi * consts.hbar, -0.25 * state.n) *
                        std::pow(det_s2, -0.25);
    return norm * std::exp(-0.5 / consts.hbar * d.dot(s2_inv * d));
}

double phase_at(const GaussianState& state, const Eigen::VectorXd& q, const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("position vector must have length n");
    const Eigen::VectorXd d = q - state.mean_q;
    return state.gamma - 0.5 * consts.hbar * state.alpha + state.mean_p.dot(q) -
           0.5 * state.mean_p.dot(state.mean_q) - 0.5 * d.dot(state.g * d);
}

double wigner_density(const GaussianState& state, const Eigen::VectorXd& z,
                      const Constants& consts) {
    if (z.size() != 2 * state.n) throw ShapeError("phase-space vector must have length 2n");
    const WignerMatrix w = wigner_matrix(state);
    const Eigen::VectorXd d = z - state.mean_z();
    return std::pow(std::numbers::pi * consts.hbar, -state.n) *
           std::exp(-d.dot(w.matrix * d) / consts.hbar);
}

}  // namespace gausskin
