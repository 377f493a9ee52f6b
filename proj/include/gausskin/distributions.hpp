#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gausskin/state.hpp"

namespace gausskin {

struct GaussianDistribution {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    int dim() const { return static_cast<int>(mean.size()); }
    double density(const Eigen::VectorXd& x) const;
};

enum class DistributionKind { joint, marginal, conditional };

/// Drift beta = d mu/dt and diffusion D = 1/2 dM/dt of a Gaussian
/// Fokker-Planck solution. The diffusion matrix is symmetric but not
/// necessarily positive: it is half the covariance rate, which has negative
/// eigenvalues during focusing.
struct DriftDiffusion {
    Eigen::VectorXd drift;
    Eigen::MatrixXd diffusion;
};

GaussianDistribution joint_distribution(const GaussianState& state, const Constants& consts = {});
GaussianDistribution marginal_distribution(const GaussianState& state, const Constants& consts = {});
GaussianDistribution conditional_distribution(const GaussianState& state, const Eigen::VectorXd& q,
                                              const Constants& consts = {});

/// Closed-form covariance-block rates at the state's time.
struct BlockRates {
    Eigen::MatrixXd ds2_dt;      // b^T s^2 + s^2 b - c g s^2 - s^2 g c
    Eigen::MatrixXd ds2inv_dt;   // -s^-2 b^T - b s^-2 + s^-2 c g + g c s^-2
    Eigen::MatrixXd dg_dt;       // a - b g - g b^T - s^-2 c s^-2 + g c g
};
BlockRates block_rates(const GaussianState& state, const HamiltonianSpec& spec);

/// For the conditional kind the drift depends on the conditioning point;
/// `q_cond` defaults to the position mean, where the shear term vanishes.
DriftDiffusion drift_diffusion(const GaussianState& state, const HamiltonianSpec& spec,
                               DistributionKind kind, const Constants& consts = {},
                               const std::optional<Eigen::VectorXd>& q_cond = std::nullopt);

/// Max over samples of |d rho/dt - FP right-hand side|. The time derivative is
/// a central finite difference over re-evolved states (step h), the right-hand
/// side the closed-form bracket; the residual vanishes at rate h^2. Samples
/// for the conditional kind are stacked (q; p) pairs.
double fokker_planck_residual(const GaussianState& state, const HamiltonianSpec& spec,
                              DistributionKind kind,
                              const std::vector<Eigen::VectorXd>& sample_points,
                              const Constants& consts = {}, double h = 1e-3);

/// j_q = [b<q> + c<p> + 1/2 (ds^2/dt) s^-2 (q - <q>)] rho_q(q).
Eigen::VectorXd marginal_flux(const GaussianState& state, const HamiltonianSpec& spec,
                              const Eigen::VectorXd& q, const Constants& consts = {});

struct FluxSplit {
    Eigen::VectorXd irrotational;  // rho_q c <p>_(p|q)
    Eigen::VectorXd rotational;    // rho_q [b<q> + b^T (q - <q>)]
};

/// Requires b^T s^2 and c g s^2 symmetric at the state's time; otherwise the
/// decomposition is undefined and SplitUndefinedError is thrown.
FluxSplit flux_split(const GaussianState& state, const HamiltonianSpec& spec,
                     const Eigen::VectorXd& q, const Constants& consts = {});

/// Tensor sample grid over mean +/- span_sigmas marginal standard deviations.
std::vector<Eigen::VectorXd> residual_sample_grid(const GaussianDistribution& dist,
                                                  int points_per_axis = 21,
                                                  double span_sigmas = 3.0);

}  // namespace gausskin
