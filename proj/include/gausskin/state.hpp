#pragma once

#include <functional>

#include <Eigen/Dense>

#include "gausskin/constants.hpp"
#include "gausskin/symplectic.hpp"

namespace gausskin {

/// Squeezed-coherent-state snapshot. The shape data (s^2, g, alpha) is the
/// Iwasawa content of the underlying classical propagator; gamma is the
/// accumulated action phase along the mean trajectory. Immutable value type.
struct GaussianState {
    double t = 0.0;
    int n = 1;
    Eigen::VectorXd mean_q;
    Eigen::VectorXd mean_p;
    Eigen::MatrixXd s2;    ///< squared magnification, symmetric positive-definite
    Eigen::MatrixXd g;     ///< shear, symmetric
    double alpha = 0.0;    ///< unwrapped arg det u
    double gamma = 0.0;    ///< action phase

    Eigen::VectorXd mean_z() const;
};

/// Ground state at t = 0: s^2 = I, g = 0, alpha = gamma = 0.
GaussianState initial_ground(int n, const Eigen::VectorXd& mean_q, const Eigen::VectorXd& mean_p);

/// Called once per completed top-level step with the updated state and the
/// accumulated propagator (including the state's implicit initial factor).
using StepObserver = std::function<void(const GaussianState&, const SymplecticMatrix&)>;

/// Evolve by composing per-step propagators into the state's implicit
/// symplectic factor and re-factorizing. alpha is branch-tracked; steps whose
/// principal-value jump exceeds pi/2 are internally halved. gamma advances by
/// trapezoidal quadrature of 1/2 (p.q_dot - q.p_dot) - H along the mean
/// trajectory.
GaussianState evolve_state(const HamiltonianSpec& spec, const GaussianState& state0, double t1,
                           int steps, StepperOrder order = StepperOrder::midpoint2,
                           const StepObserver& observer = nullptr);

/// Symmetric, symplectic, positive-definite kernel of the Gaussian Wigner
/// function: [[s^-2 + g s^2 g, g s^2], [s^2 g, s^2]].
struct WignerMatrix {
    int n = 1;
    Eigen::MatrixXd matrix;
};

struct CovarianceMatrix {
    int n = 1;
    Eigen::MatrixXd sigma_qq, sigma_qp, sigma_pq, sigma_pp;

    Eigen::MatrixXd full() const;
};

/// Point of the Siegel upper half-space: real part symmetric, imaginary part
/// symmetric positive-definite.
struct ComplexSymmetricMatrix {
    Eigen::MatrixXd real_part;
    Eigen::MatrixXd imag_part;

    Eigen::MatrixXcd complex() const;
};

WignerMatrix wigner_matrix(const GaussianState& state);

/// Sigma = (hbar/2) [[s^2, -s^2 g], [-g s^2, s^-2 + g s^2 g]] = (hbar/2) W^-1.
CovarianceMatrix covariance(const GaussianState& state, const Constants& consts = {});

/// Gamma = -g + i s^-2.
ComplexSymmetricMatrix gamma_matrix(const GaussianState& state);

/// R(q): the real amplitude of the polar-form wave function.
double amplitude_at(const GaussianState& state, const Eigen::VectorXd& q,
                    const Constants& consts = {});

/// S(q) = gamma - hbar*alpha/2 + <p>.q - <p>.<q>/2 - 1/2 (q-<q>)^T g (q-<q>).
double phase_at(const GaussianState& state, const Eigen::VectorXd& q,
                const Constants& consts = {});

/// W(z) = (pi hbar)^-n exp(-(z-<z>)^T W (z-<z>)/hbar).
double wigner_density(const GaussianState& state, const Eigen::VectorXd& z,
                      const Constants& consts = {});

}  // namespace gausskin
