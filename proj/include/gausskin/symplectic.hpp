#pragma once

#include <complex>

#include <Eigen/Dense>

#include "gausskin/hamiltonian.hpp"

namespace gausskin {

/// Real 2n x 2n matrix in A/B/C/D block form; the classical propagator.
class SymplecticMatrix {
public:
    explicit SymplecticMatrix(Eigen::MatrixXd m);
    static SymplecticMatrix identity(int n);

    int dim() const { return n_; }
    const Eigen::MatrixXd& matrix() const { return m_; }

    Eigen::MatrixXd A() const { return m_.topLeftCorner(n_, n_); }
    Eigen::MatrixXd B() const { return m_.topRightCorner(n_, n_); }
    Eigen::MatrixXd C() const { return m_.bottomLeftCorner(n_, n_); }
    Eigen::MatrixXd D() const { return m_.bottomRightCorner(n_, n_); }

private:
    int n_;
    Eigen::MatrixXd m_;
};

/// Structure-preserving steppers for dS/dt = L_H S. Each step exponentiates a
/// Hamiltonian matrix, so the result is symplectic up to rounding.
enum class StepperOrder {
    midpoint2,  ///< exp(h L(t + h/2)), second-order Magnus
    magnus4,    ///< two-point Gauss-Legendre Magnus, fourth order
};

/// One step matrix over [t, t+h].
Eigen::MatrixXd magnus_step(const HamiltonianSpec& spec, double t, double h,
                            StepperOrder order = StepperOrder::midpoint2);

/// S(t1 <- t0) with S(t0) = I. Throws DivergenceError (with the step index)
/// if an intermediate goes non-finite.
SymplecticMatrix propagate(const HamiltonianSpec& spec, double t0, double t1, int steps,
                           StepperOrder order = StepperOrder::midpoint2);

/// Max-norm of S^T omega S - omega; zero for exactly symplectic input.
double symplecticity_defect(const SymplecticMatrix& S);

/// Factors of the modified Iwasawa decomposition S = l(g) m(s) f(u).
struct IwasawaFactors {
    Eigen::MatrixXd g;       ///< symmetric shear/lens
    Eigen::MatrixXd s;       ///< symmetric positive-definite magnification
    Eigen::MatrixXcd u;      ///< unitary rotation (fractional Fourier part)
    double alpha = 0.0;      ///< principal value of arg det u, in (-pi, pi]

    Eigen::MatrixXd reconstruct() const;  ///< l(g) m(s) f(u)
};

/// g = -(CA^T + DB^T)(AA^T + BB^T)^-1, s = (AA^T + BB^T)^{1/2},
/// u = s^-1 (A + iB). Throws FactorizationError when AA^T + BB^T is singular
/// (cannot occur for a true symplectic input).
IwasawaFactors iwasawa(const SymplecticMatrix& S);

/// The unique alpha with det u = e^{i alpha} and |alpha - prev_alpha| < pi.
/// Caller guarantees the true increment stayed below pi since prev_alpha.
double alpha_unwrap(double prev_alpha, const Eigen::MatrixXcd& u);

/// Symmetric positive-definite square root via eigendecomposition; rejects
/// eigenvalues below 1e-12 with FactorizationError.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& m);

/// Assemble the block factors.
Eigen::MatrixXd shear_block(const Eigen::MatrixXd& g);          // l(g)
Eigen::MatrixXd magnifier_block(const Eigen::MatrixXd& s);      // m(s)
Eigen::MatrixXd rotation_block(const Eigen::MatrixXcd& u);      // f(u)

}  // namespace gausskin
