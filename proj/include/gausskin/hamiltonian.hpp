#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gausskin/coefficients.hpp"
#include "gausskin/errors.hpp"

namespace gausskin {

/// Time-dependent quadratic Hamiltonian
///   H(z, t) = 1/2 q^T a(t) q + q^T b(t) p + 1/2 p^T c(t) p.
/// a and c are symmetric by construction; asymmetry beyond `tol` is rejected.
class HamiltonianSpec {
public:
    HamiltonianSpec(int n, CoefficientMatrix a, CoefficientMatrix b, CoefficientMatrix c,
                    double tol = 1e-9);

    /// Constant-coefficient convenience constructor.
    static HamiltonianSpec constant(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                    const Eigen::MatrixXd& c, double tol = 1e-9);

    int dim() const { return n_; }

    Eigen::MatrixXd a(double t) const { return a_.eval(t); }
    Eigen::MatrixXd b(double t) const { return b_.eval(t); }
    Eigen::MatrixXd c(double t) const { return c_.eval(t); }

    const CoefficientMatrix& a_fn() const { return a_; }
    const CoefficientMatrix& b_fn() const { return b_; }
    const CoefficientMatrix& c_fn() const { return c_; }

    bool b_is_zero() const { return b_.is_zero(); }

    /// Positivity diagnostics (a > 0, c > 0, ac - b^2 > 0) at the given times.
    /// Degenerate Hamiltonians (free particle, a = 0) are supported, so
    /// violations are reported as warnings rather than errors.
    std::vector<std::string> validity_warnings(const std::vector<double>& times) const;

private:
    int n_ = 0;
    CoefficientMatrix a_, b_, c_;
};

/// Instantiated generator L_H at a fixed time:  [[b^T, c], [-a, -b]].
/// omega * L_H is symmetric by construction.
struct HamiltonianGenerator {
    int n = 0;
    Eigen::MatrixXd matrix;
};

/// Fundamental symplectic matrix [[0, I], [-I, 0]] of size 2n x 2n.
Eigen::MatrixXd symplectic_form(int n);

HamiltonianGenerator generator_at(const HamiltonianSpec& spec, double t);

/// H(z) = 1/2 z^T omega^T L_H z. Throws ShapeError unless z has length 2n.
double hamiltonian_value(const HamiltonianGenerator& gen, const Eigen::VectorXd& z);

}  // namespace gausskin
