#include "gausskin/symplectic.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace gausskin {

SymplecticMatrix::SymplecticMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() % 2 != 0 || m_.rows() == 0) {
        throw ShapeError("symplectic matrix must be 2n x 2n");
    }
    n_ = static_cast<int>(m_.rows()) / 2;
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
    return SymplecticMatrix(Eigen::MatrixXd::Identity(2 * n, 2 * n));
}

Eigen::MatrixXd magnus_step(const HamiltonianSpec& spec, double t, double h, StepperOrder order) {
    if (order == StepperOrder::midpoint2) {
        const Eigen::MatrixXd L = generator_at(spec, t + 0.5 * h).matrix;
        return (h * L).exp();
    }
    // Two-point Gauss-Legendre Magnus. The commutator of Hamiltonian matrices
    // is Hamiltonian, so the exponent stays in sp(2n) and the step is
    // symplectic to rounding.
    constexpr double kGaussOffset = 0.28867513459481287;  // sqrt(3)/6
    const Eigen::MatrixXd L1 = generator_at(spec, t + (0.5 - kGaussOffset) * h).matrix;
    const Eigen::MatrixXd L2 = generator_at(spec, t + (0.5 + kGaussOffset) * h).matrix;
    const Eigen::MatrixXd omega_step =
        0.5 * h * (L1 + L2) + (std::sqrt(3.0) / 12.0) * h * h * (L2 * L1 - L1 * L2);
    return omega_step.exp();
}

SymplecticMatrix propagate(const HamiltonianSpec& spec, double t0, double t1, int steps,
                           StepperOrder order) {
    if (steps < 1) throw ValidationError("steps must be >= 1");
    const double h = (t1 - t0) / steps;
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * spec.dim(), 2 * spec.dim());
    for (int k = 0; k < steps; ++k) {
        S = magnus_step(spec, t0 + k * h, h, order) * S;
        if (!S.allFinite()) {
            throw DivergenceError("propagator non-finite at step " + std::to_string(k));
        }
    }
    return SymplecticMatrix(std::move(S));
}

double symplecticity_defect(const SymplecticMatrix& S) {
    const Eigen::MatrixXd omega = symplectic_form(S.dim());
    return (S.matrix().transpose() * omega * S.matrix() - omega).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd shear_block(const Eigen::MatrixXd& g) {
    const int n = static_cast<int>(g.rows());
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    l.bottomLeftCorner(n, n) = -g;
    return l;
}

Eigen::MatrixXd magnifier_block(const Eigen::MatrixXd& s) {
    const int n = static_cast<int>(s.rows());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = s;
    m.bottomRightCorner(n, n) = s.inverse();
    return m;
}

Eigen::MatrixXd rotation_block(const Eigen::MatrixXcd& u) {
    const int n = static_cast<int>(u.rows());
    Eigen::MatrixXd f(2 * n, 2 * n);
    f.topLeftCorner(n, n) = u.real();
    f.topRightCorner(n, n) = u.imag();
    f.bottomLeftCorner(n, n) = -u.imag();
    f.bottomRightCorner(n, n) = u.real();
    return f;
}

Eigen::MatrixXd IwasawaFactors::reconstruct() const {
    return shear_block(g) * magnifier_block(s) * rotation_block(u);
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
    if (es.eigenvalues().minCoeff() < 1e-12) {
        throw FactorizationError("matrix is not positive definite (min eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()) + ")");
    }
    const Eigen::MatrixXd root = es.eigenvectors() *
                                 es.eigenvalues().cwiseSqrt().asDiagonal() *
                                 es.eigenvectors().transpose();
    return 0.5 * (root + root.transpose());
}

IwasawaFactors iwasawa(const SymplecticMatrix& S) {
    const Eigen::MatrixXd A = S.A();
    const Eigen::MatrixXd B = S.B();
    const Eigen::MatrixXd C = S.C();
    const Eigen::MatrixXd D = S.D();

    const Eigen::MatrixXd M = 0.5 * ((A * A.transpose() + B * B.transpose()) +
                                     (A * A.transpose() + B * B.transpose()).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.eigenvalues().minCoeff() < 1e-12) {
        throw FactorizationError("AA^T + BB^T is singular; input is not symplectic");
    }
    const Eigen::MatrixXd s = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                              es.eigenvectors().transpose();
    const Eigen::MatrixXd s_inv = es.eigenvectors() *
                                  es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                  es.eigenvectors().transpose();
    const Eigen::MatrixXd M_inv = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
                                  es.eigenvectors().transpose();

    Eigen::MatrixXd g = -(C * A.transpose() + D * B.transpose()) * M_inv;
    g = 0.5 * (g + g.transpose()).eval();

    const Eigen::MatrixXcd u =
        s_inv * (A + std::complex<double>(0.0, 1.0) * B);

    IwasawaFactors factors;
    factors.g = std::move(g);
    factors.s = 0.5 * (s + s.transpose());
    factors.u = u;
    factors.alpha = std::arg(u.determinant());
    return factors;
}

double alpha_unwrap(double prev_alpha, const Eigen::MatrixXcd& u) {
    const double principal = std::arg(u.determinant());
    const double two_pi = 2.0 * std::numbers::pi;
    return principal + two_pi * std::round((prev_alpha - principal) / two_pi);
}

}  // namespace gausskin
