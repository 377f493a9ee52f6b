#include "gausskin/hamiltonian.hpp"

#include <cmath>

namespace gausskin {

namespace {

void check_block(const CoefficientMatrix& m, int n, const char* name) {
    if (m.rows() != n || m.cols() != n) {
        throw ValidationError(std::string(name) + " must be " + std::to_string(n) + "x" +
                              std::to_string(n));
    }
}

std::vector<double> default_probe_times() {
    // Irrational spacing so harmonic zeros are not systematically hit.
    std::vector<double> times;
    for (int k = 0; k < 17; ++k) times.push_back(0.61803398875 * k);
    return times;
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(int n, CoefficientMatrix a, CoefficientMatrix b,
                                 CoefficientMatrix c, double tol)
    : n_(n), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (n_ < 1) throw ValidationError("dimension n must be positive");
    check_block(a_, n_, "a");
    check_block(b_, n_, "b");
    check_block(c_, n_, "c");
    const auto times = default_probe_times();
    if (a_.max_asymmetry(times) > tol) throw ValidationError("a is asymmetric beyond tolerance");
    if (c_.max_asymmetry(times) > tol) throw ValidationError("c is asymmetric beyond tolerance");
    a_ = a_.symmetrized();
    c_ = c_.symmetrized();
}

HamiltonianSpec HamiltonianSpec::constant(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                          const Eigen::MatrixXd& c, double tol) {
    return HamiltonianSpec(static_cast<int>(a.rows()), CoefficientMatrix::constant(a),
                           CoefficientMatrix::constant(b), CoefficientMatrix::constant(c), tol);
}

std::vector<std::string> HamiltonianSpec::validity_warnings(
    const std::vector<double>& times) const {
    std::vector<std::string> warnings;
    auto min_eig = [](const Eigen::MatrixXd& m) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
        return es.eigenvalues().minCoeff();
    };
    bool a_bad = false, c_bad = false, acb_bad = false;
    for (double t : times) {
        const Eigen::MatrixXd at = a_.eval(t);
        const Eigen::MatrixXd bt = b_.eval(t);
        const Eigen::MatrixXd ct = c_.eval(t);
        if (!a_bad && min_eig(at) <= 0.0) {
            warnings.push_back("a(t) is not positive definite at t = " + std::to_string(t));
            a_bad = true;
        }
        if (!c_bad && min_eig(ct) <= 0.0) {
            warnings.push_back("c(t) is not positive definite at t = " + std::to_string(t));
            c_bad = true;
        }
        if (!acb_bad && min_eig(at * ct - bt * bt) <= 0.0) {
            warnings.push_back("a(t)c(t) - b(t)^2 is not positive definite at t = " +
                               std::to_string(t));
            acb_bad = true;
        }
    }
    return warnings;
}

Eigen::MatrixXd symplectic_form(int n) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return omega;
}

HamiltonianGenerator generator_at(const HamiltonianSpec& spec, double t) {
    const int n = spec.dim();
    const Eigen::MatrixXd a = spec.a(t);
    const Eigen::MatrixXd b = spec.b(t);
    const Eigen::MatrixXd c = spec.c(t);
    Eigen::MatrixXd m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = b.transpose();
    m.topRightCorner(n, n) = c;
    m.bottomLeftCorner(n, n) = -a;
    m.bottomRightCorner(n, n) = -b;
    return {n, std::move(m)};
}

double hamiltonian_value(const HamiltonianGenerator& gen, const Eigen::VectorXd& z) {
    if (z.size() != 2 * gen.n) {
        throw ShapeError("phase-space vector has length " + std::to_string(z.size()) +
                         ", expected " + std::to_string(2 * gen.n));
    }
    const Eigen::MatrixXd omega = symplectic_form(gen.n);
    return 0.5 * z.dot(omega.transpose() * gen.matrix * z);
}

}  // namespace gausskin
