#pragma once

#include <functional>

#include <Eigen/Dense>

#include "gausskin/distributions.hpp"
#include "gausskin/state.hpp"

namespace gausskin::oracle {

/// Wavefunction sampled on a uniform grid x_j = x_min + j dx,
/// dx = (x_max - x_min)/points. Discrete L2 norm is kept at 1.
struct GridWavefunction {
    double x_min = 0.0;
    double x_max = 0.0;
    int points = 0;  ///< power of two
    Eigen::VectorXcd values;
    double t = 0.0;

    double dx() const { return (x_max - x_min) / points; }
    double norm() const;
    Eigen::VectorXd grid() const;
};

/// Sample the analytic wave function R e^{iS/hbar} of a 1-D state.
GridWavefunction sample_state_on_grid(const GaussianState& state, const Constants& consts,
                                      double x_min, double x_max, int points);

/// Strang-split spectral integrator for n = 1, b = 0: half potential phase,
/// full kinetic phase in frequency space, half potential phase, with the
/// time-dependent a, c sampled at substep midpoints. Norm-preserving and
/// second order in the step. Throws UnsupportedCouplingError for b != 0 and
/// GridError (with the step index) when probability reaches the boundary.
GridWavefunction splitstep_evolve(const HamiltonianSpec& spec, const GridWavefunction& psi0,
                                  double t1, int steps, const Constants& consts = {});

/// Discrete L2 distance between the grid solution and the analytic wave
/// function, after aligning the global phase at the grid point nearest the
/// analytic density peak.
double compare_to_analytic(const GridWavefunction& grid_psi, const GaussianState& state,
                           const Constants& consts = {});

/// Classical RK4 on dGamma/dt = -a - Gamma b^T - b Gamma - Gamma c Gamma from
/// t0 to t1. Throws BlowUpError (with the step index) if the imaginary part
/// loses positive-definiteness.
ComplexSymmetricMatrix riccati_integrate(const HamiltonianSpec& spec,
                                         const ComplexSymmetricMatrix& gamma0, double t1,
                                         int steps, double t0 = 0.0);

/// Gauss-Hermite rule for the weight e^{-x^2}: exact for polynomials up to
/// degree 2*order - 1.
struct QuadratureRule {
    int order = 0;
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};
QuadratureRule gauss_hermite(int order);

/// Tensor-product Gauss-Hermite expectation of f over a Gaussian, after
/// whitening by the covariance Cholesky factor. dim <= 4.
double gauss_hermite_expect(const GaussianDistribution& dist,
                            const std::function<double(const Eigen::VectorXd&)>& f, int order);

}  // namespace gausskin::oracle
