#include "gausskin/distributions.hpp"

#include <cmath>
#include <numbers>

namespace gausskin {

double GaussianDistribution::density(const Eigen::VectorXd& x) const {
    if (x.size() != mean.size()) throw ShapeError("sample dimension does not match distribution");
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw FactorizationError("distribution covariance is not positive definite");
    }
    const Eigen::VectorXd whitened = llt.matrixL().solve(x - mean);
    double log_det = 0.0;
    for (int i = 0; i < cov.rows(); ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
    const double log_density = -0.5 * whitened.squaredNorm() - 0.5 * log_det -
                               0.5 * dim() * std::log(2.0 * std::numbers::pi);
    return std::exp(log_density);
}

GaussianDistribution joint_distribution(const GaussianState& state, const Constants& consts) {
    return {state.mean_z(), covariance(state, consts).full()};
}

GaussianDistribution marginal_distribution(const GaussianState& state, const Constants& consts) {
    return {state.mean_q, 0.5 * consts.hbar * state.s2};
}

namespace {

Eigen::MatrixXd inverse_of_s2(const GaussianState& state) {
    Eigen::LLT<Eigen::MatrixXd> llt(state.s2);
    if (llt.info() != Eigen::Success) throw SingularStateError("s^2 is not invertible");
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(state.n, state.n));
    return 0.5 * (inv + inv.transpose());
}

}  // namespace

GaussianDistribution conditional_distribution(const GaussianState& state,
                                              const Eigen::VectorXd& q, const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("conditioning point must have length n");
    const Eigen::VectorXd mean = state.mean_p - state.g * (q - state.mean_q);
    return {mean, 0.5 * consts.hbar * inverse_of_s2(state)};
}

BlockRates block_rates(const GaussianState& state, const HamiltonianSpec& spec) {
    const Eigen::MatrixXd a = spec.a(state.t);
    const Eigen::MatrixXd b = spec.b(state.t);
    const Eigen::MatrixXd c = spec.c(state.t);
    const Eigen::MatrixXd& s2 = state.s2;
    const Eigen::MatrixXd& g = state.g;
    const Eigen::MatrixXd s2_inv = inverse_of_s2(state);

    BlockRates rates;
    rates.ds2_dt = b.transpose() * s2 + s2 * b - c * g * s2 - s2 * g * c;
    rates.ds2inv_dt = -s2_inv * b.transpose() - b * s2_inv + s2_inv * c * g + g * c * s2_inv;
    rates.dg_dt = a - b * g - g * b.transpose() - s2_inv * c * s2_inv + g * c * g;
    return rates;
}

DriftDiffusion drift_diffusion(const GaussianState& state, const HamiltonianSpec& spec,
                               DistributionKind kind, const Constants& consts,
                               const std::optional<Eigen::VectorXd>& q_cond) {
    const int n = state.n;
    const HamiltonianGenerator gen = generator_at(spec, state.t);
    const Eigen::VectorXd z_dot = gen.matrix * state.mean_z();

    switch (kind) {
        case DistributionKind::joint: {
            const Eigen::MatrixXd sigma = covariance(state, consts).full();
            Eigen::MatrixXd diff =
                0.5 * (gen.matrix * sigma + sigma * gen.matrix.transpose());
            return {z_dot, 0.5 * (diff + diff.transpose()).eval()};
        }
        case DistributionKind::marginal: {
            const BlockRates rates = block_rates(state, spec);
            Eigen::MatrixXd diff = 0.25 * consts.hbar * rates.ds2_dt;
            return {z_dot.head(n), 0.5 * (diff + diff.transpose()).eval()};
        }
        case DistributionKind::conditional: {
            const Eigen::VectorXd q = q_cond.value_or(state.mean_q);
            if (q.size() != n) throw ShapeError("conditioning point must have length n");
            const BlockRates rates = block_rates(state, spec);
            const Eigen::VectorXd drift =
                z_dot.tail(n) - rates.dg_dt * (q - state.mean_q) + state.g * z_dot.head(n);
            Eigen::MatrixXd diff = 0.25 * consts.hbar * rates.ds2inv_dt;
            return {drift, 0.5 * (diff + diff.transpose()).eval()};
        }
    }
    throw Error("unreachable distribution kind");
}

namespace {

struct FPData {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    Eigen::VectorXd dmean_dt;
    Eigen::MatrixXd dcov_dt;
    Eigen::VectorXd variable;  // the part of the sample the density acts on
};

FPData gather_fp_data(const GaussianState& state, const HamiltonianSpec& spec,
                      DistributionKind kind, const Eigen::VectorXd& x, const Constants& consts) {
    const int n = state.n;
    FPData data;
    switch (kind) {
        case DistributionKind::joint: {
            const DriftDiffusion dd = drift_diffusion(state, spec, kind, consts);
            data.mean = state.mean_z();
            data.cov = covariance(state, consts).full();
            data.dmean_dt = dd.drift;
            data.dcov_dt = 2.0 * dd.diffusion;
            data.variable = x;
            break;
        }
        case DistributionKind::marginal: {
            const DriftDiffusion dd = drift_diffusion(state, spec, kind, consts);
            data.mean = state.mean_q;
            data.cov = 0.5 * consts.hbar * state.s2;
            data.dmean_dt = dd.drift;
            data.dcov_dt = 2.0 * dd.diffusion;
            data.variable = x;
            break;
        }
        case DistributionKind::conditional: {
            if (x.size() != 2 * n) {
                throw ShapeError("conditional samples are stacked (q; p) pairs");
            }
            const Eigen::VectorXd q = x.head(n);
            const DriftDiffusion dd =
                drift_diffusion(state, spec, kind, consts, q);
            data.mean = state.mean_p - state.g * (q - state.mean_q);
            data.cov = 0.5 * consts.hbar * inverse_of_s2(state);
            data.dmean_dt = dd.drift;
            data.dcov_dt = 2.0 * dd.diffusion;
            data.variable = x.tail(n);
            break;
        }
    }
    return data;
}

double density_for_kind(const GaussianState& state, DistributionKind kind,
                        const Eigen::VectorXd& x, const Constants& consts) {
    switch (kind) {
        case DistributionKind::joint:
            return joint_distribution(state, consts).density(x);
        case DistributionKind::marginal:
            return marginal_distribution(state, consts).density(x);
        case DistributionKind::conditional: {
            const int n = state.n;
            if (x.size() != 2 * n) {
                throw ShapeError("conditional samples are stacked (q; p) pairs");
            }
            return conditional_distribution(state, x.head(n), consts).density(x.tail(n));
        }
    }
    throw Error("unreachable distribution kind");
}

}  // namespace

double fokker_planck_residual(const GaussianState& state, const HamiltonianSpec& spec,
                              DistributionKind kind,
                              const std::vector<Eigen::VectorXd>& sample_points,
                              const Constants& consts, double h) {
    const GaussianState plus = evolve_state(spec, state, state.t + h, 1);
    const GaussianState minus = evolve_state(spec, state, state.t - h, 1);

    double worst = 0.0;
    for (const auto& x : sample_points) {
        const FPData data = gather_fp_data(state, spec, kind, x, consts);
        Eigen::LLT<Eigen::MatrixXd> llt(data.cov);
        if (llt.info() != Eigen::Success) {
            throw FactorizationError("distribution covariance is not positive definite");
        }
        const Eigen::VectorXd d = data.variable - data.mean;
        const Eigen::VectorXd cov_inv_d = llt.solve(d);
        const Eigen::MatrixXd cov_inv_dcov = llt.solve(data.dcov_dt);
        const double rho =
            GaussianDistribution{data.mean, data.cov}.density(data.variable);
        const double bracket = 0.5 * cov_inv_d.dot(data.dcov_dt * cov_inv_d) +
                               data.dmean_dt.dot(cov_inv_d) - 0.5 * cov_inv_dcov.trace();
        const double rhs = bracket * rho;
        const double lhs = (density_for_kind(plus, kind, x, consts) -
                            density_for_kind(minus, kind, x, consts)) /
                           (2.0 * h);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

Eigen::VectorXd marginal_flux(const GaussianState& state, const HamiltonianSpec& spec,
                              const Eigen::VectorXd& q, const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("position vector must have length n");
    const Eigen::MatrixXd b = spec.b(state.t);
    const Eigen::MatrixXd c = spec.c(state.t);
    const BlockRates rates = block_rates(state, spec);
    const Eigen::MatrixXd s2_inv = inverse_of_s2(state);
    const double rho = marginal_distribution(state, consts).density(q);
    return (b * state.mean_q + c * state.mean_p +
            0.5 * rates.ds2_dt * s2_inv * (q - state.mean_q)) *
           rho;
}

FluxSplit flux_split(const GaussianState& state, const HamiltonianSpec& spec,
                     const Eigen::VectorXd& q, const Constants& consts) {
    if (q.size() != state.n) throw ShapeError("position vector must have length n");
    const Eigen::MatrixXd b = spec.b(state.t);
    const Eigen::MatrixXd c = spec.c(state.t);
    const Eigen::MatrixXd bts2 = b.transpose() * state.s2;
    const Eigen::MatrixXd cgs2 = c * state.g * state.s2;
    const double asym = std::max((bts2 - bts2.transpose()).cwiseAbs().maxCoeff(),
                                 (cgs2 - cgs2.transpose()).cwiseAbs().maxCoeff());
    if (asym > consts.tol) {
        throw SplitUndefinedError(
            "flux split undefined: b^T s^2 or c g s^2 asymmetric by " + std::to_string(asym));
    }
    const Eigen::VectorXd d = q - state.mean_q;
    const double rho = marginal_distribution(state, consts).density(q);
    FluxSplit split;
    split.irrotational = rho * c * (state.mean_p - state.g * d);
    split.rotational = rho * (b * state.mean_q + b.transpose() * d);
    return split;
}

std::vector<Eigen::VectorXd> residual_sample_grid(const GaussianDistribution& dist,
                                                  int points_per_axis, double span_sigmas) {
    const int dim = dist.dim();
    std::vector<double> axis(points_per_axis);
    std::vector<Eigen::VectorXd> grid;
    grid.reserve(static_cast<std::size_t>(std::pow(points_per_axis, dim)));

    Eigen::VectorXd point(dim);
    std::vector<int> index(dim, 0);
    while (true) {
        for (int d = 0; d < dim; ++d) {
            const double sigma = std::sqrt(dist.cov(d, d));
            const double lo = dist.mean(d) - span_sigmas * sigma;
            const double hi = dist.mean(d) + span_sigmas * sigma;
            point(d) = points_per_axis == 1
                           ? dist.mean(d)
                           : lo + (hi - lo) * index[d] / (points_per_axis - 1);
        }
        grid.push_back(point);
        int d = 0;
        while (d < dim && ++index[d] == points_per_axis) {
            index[d] = 0;
            ++d;
        }
        if (d == dim) break;
    }
    return grid;
}

}  // namespace gausskin
