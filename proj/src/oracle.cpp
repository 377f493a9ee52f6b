#include "gausskin/oracle.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace gausskin::oracle {

double GridWavefunction::norm() const {
    return std::sqrt(values.squaredNorm() * dx());
}

Eigen::VectorXd GridWavefunction::grid() const {
    Eigen::VectorXd x(points);
    const double step = dx();
    for (int j = 0; j < points; ++j) x(j) = x_min + j * step;
    return x;
}

namespace {

bool is_power_of_two(int value) { return value > 0 && (value & (value - 1)) == 0; }

void validate_grid(const GridWavefunction& psi) {
    if (!is_power_of_two(psi.points)) {
        throw GridError("grid size must be a power of two, got " + std::to_string(psi.points));
    }
    if (psi.values.size() != psi.points) {
        throw GridError("value vector length does not match grid size");
    }
    if (psi.x_max <= psi.x_min) throw GridError("empty grid interval");
    if (std::abs(psi.norm() - 1.0) > 1e-8) {
        throw GridError("wavefunction norm deviates from 1 by " +
                        std::to_string(std::abs(psi.norm() - 1.0)));
    }
}

}  // namespace

GridWavefunction sample_state_on_grid(const GaussianState& state, const Constants& consts,
                                      double x_min, double x_max, int points) {
    if (state.n != 1) throw UnsupportedCouplingError("grid sampling supports n = 1 only");
    GridWavefunction psi;
    psi.x_min = x_min;
    psi.x_max = x_max;
    psi.points = points;
    psi.t = state.t;
    psi.values.resize(points);
    const double step = (x_max - x_min) / points;
    Eigen::VectorXd q(1);
    for (int j = 0; j < points; ++j) {
        q(0) = x_min + j * step;
        const double amp = amplitude_at(state, q, consts);
        const double phase = phase_at(state, q, consts);
        psi.values(j) = std::polar(amp, phase / consts.hbar);
    }
    // Remove the tiny truncation-induced norm defect so chained evolutions
    // start from an exactly unit-norm grid.
    psi.values /= psi.norm();
    return psi;
}

GridWavefunction splitstep_evolve(const HamiltonianSpec& spec, const GridWavefunction& psi0,
                                  double t1, int steps, const Constants& consts) {
    if (spec.dim() != 1) throw UnsupportedCouplingError("split-step solver supports n = 1 only");
    if (!spec.b_is_zero()) {
        throw UnsupportedCouplingError("split-step solver requires b = 0");
    }
    validate_grid(psi0);
    if (steps == 0 && t1 == psi0.t) return psi0;
    if (steps < 1) throw ValidationError("steps must be >= 1");

    const int n_points = psi0.points;
    const double length = psi0.x_max - psi0.x_min;
    const double h = (t1 - psi0.t) / steps;
    const double hbar = consts.hbar;

    const Eigen::VectorXd x = psi0.grid();
    Eigen::VectorXd k(n_points);
    for (int j = 0; j < n_points; ++j) {
        const int mode = j < n_points / 2 ? j : j - n_points;
        k(j) = 2.0 * std::numbers::pi * mode / length;
    }

    Eigen::FFT<double> fft;
    Eigen::VectorXcd values = psi0.values;
    Eigen::VectorXcd freq(n_points);
    const std::complex<double> minus_i(0.0, -1.0);

    for (int step = 0; step < steps; ++step) {
        const double t = psi0.t + step * h;
        const double a_first = spec.a(t + 0.25 * h)(0, 0);
        const double c_mid = spec.c(t + 0.5 * h)(0, 0);
        const double a_second = spec.a(t + 0.75 * h)(0, 0);

        for (int j = 0; j < n_points; ++j) {
            values(j) *= std::exp(minus_i * (a_first * x(j) * x(j) * h / (4.0 * hbar)));
        }
        fft.fwd(freq, values);
        for (int j = 0; j < n_points; ++j) {
            freq(j) *= std::exp(minus_i * (0.5 * c_mid * hbar * k(j) * k(j) * h));
        }
        fft.inv(values, freq);
        for (int j = 0; j < n_points; ++j) {
            values(j) *= std::exp(minus_i * (a_second * x(j) * x(j) * h / (4.0 * hbar)));
        }

        const double edge_density =
            std::max(std::norm(values(0)), std::norm(values(n_points - 1)));
        if (edge_density >= 1e-12) {
            throw GridError("probability reached the grid boundary at step " +
                            std::to_string(step));
        }
    }

    GridWavefunction result = psi0;
    result.values = std::move(values);
    result.t = t1;
    return result;
}

double compare_to_analytic(const GridWavefunction& grid_psi, const GaussianState& state,
                           const Constants& consts) {
    if (state.n != 1) throw UnsupportedCouplingError("comparison supports n = 1 only");
    if (std::abs(grid_psi.t - state.t) > 1e-9 * std::max(1.0, std::abs(state.t))) {
        throw ValidationError("grid and state times differ");
    }
    const Eigen::VectorXd x = grid_psi.grid();
    Eigen::VectorXcd analytic(grid_psi.points);
    Eigen::VectorXd q(1);
    for (int j = 0; j < grid_psi.points; ++j) {
        q(0) = x(j);
        analytic(j) =
            std::polar(amplitude_at(state, q, consts), phase_at(state, q, consts) / consts.hbar);
    }

    // Align the global phase at the grid point nearest the density peak.
    int peak = 0;
    double best = std::abs(x(0) - state.mean_q(0));
    for (int j = 1; j < grid_psi.points; ++j) {
        const double dist = std::abs(x(j) - state.mean_q(0));
        if (dist < best) {
            best = dist;
            peak = j;
        }
    }
    const std::complex<double> relative = grid_psi.values(peak) * std::conj(analytic(peak));
    const std::complex<double> phase =
        std::abs(relative) > 0.0 ? relative / std::abs(relative) : std::complex<double>(1.0, 0.0);

    return std::sqrt((grid_psi.values - phase * analytic).squaredNorm() * grid_psi.dx());
}

namespace {

Eigen::MatrixXcd riccati_rhs(const HamiltonianSpec& spec, double t, const Eigen::MatrixXcd& gamma) {
    const Eigen::MatrixXcd a = spec.a(t).cast<std::complex<double>>();
    const Eigen::MatrixXcd b = spec.b(t).cast<std::complex<double>>();
    const Eigen::MatrixXcd c = spec.c(t).cast<std::complex<double>>();
    return -a - gamma * b.transpose() - b * gamma - gamma * c * gamma;
}

}  // namespace

ComplexSymmetricMatrix riccati_integrate(const HamiltonianSpec& spec,
                                         const ComplexSymmetricMatrix& gamma0, double t1,
                                         int steps, double t0) {
    if (steps < 1) throw ValidationError("steps must be >= 1");
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            0.5 * (gamma0.imag_part + gamma0.imag_part.transpose()));
        if (es.eigenvalues().minCoeff() <= 0.0) {
            throw ValidationError("imag(Gamma_0) must be positive definite");
        }
    }

    const double h = (t1 - t0) / steps;
    Eigen::MatrixXcd gamma = gamma0.complex();
    for (int step = 0; step < steps; ++step) {
        const double t = t0 + step * h;
        const Eigen::MatrixXcd k1 = riccati_rhs(spec, t, gamma);
        const Eigen::MatrixXcd k2 = riccati_rhs(spec, t + 0.5 * h, gamma + 0.5 * h * k1);
        const Eigen::MatrixXcd k3 = riccati_rhs(spec, t + 0.5 * h, gamma + 0.5 * h * k2);
        const Eigen::MatrixXcd k4 = riccati_rhs(spec, t + h, gamma + h * k3);
        gamma += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!gamma.allFinite()) {
            throw BlowUpError("Riccati trajectory non-finite at step " + std::to_string(step));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            0.5 * (gamma.imag() + gamma.imag().transpose()).eval());
        if (es.eigenvalues().minCoeff() <= 0.0) {
            throw BlowUpError("Riccati trajectory left the Siegel space at step " +
                              std::to_string(step));
        }
    }

    const Eigen::MatrixXd re = 0.5 * (gamma.real() + gamma.real().transpose());
    const Eigen::MatrixXd im = 0.5 * (gamma.imag() + gamma.imag().transpose());
    return {re, im};
}

QuadratureRule gauss_hermite(int order) {
    if (order < 1) throw ValidationError("quadrature order must be >= 1");
    // Golub-Welsch on the Hermite Jacobi matrix (weight e^{-x^2}).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int i = 1; i < order; ++i) {
        const double beta = std::sqrt(0.5 * i);
        jacobi(i, i - 1) = beta;
        jacobi(i - 1, i) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    QuadratureRule rule;
    rule.order = order;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(order);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (int i = 0; i < order; ++i) {
        const double first = es.eigenvectors()(0, i);
        rule.weights(i) = sqrt_pi * first * first;
    }
    return rule;
}

double gauss_hermite_expect(const GaussianDistribution& dist,
                            const std::function<double(const Eigen::VectorXd&)>& f, int order) {
    const int dim = dist.dim();
    if (dim > 4) throw ValidationError("tensor quadrature supports dim <= 4");
    Eigen::LLT<Eigen::MatrixXd> llt(dist.cov);
    if (llt.info() != Eigen::Success) {
        throw FactorizationError("distribution covariance is not positive definite");
    }
    const Eigen::MatrixXd chol = llt.matrixL();
    const QuadratureRule rule = gauss_hermite(order);

    std::vector<int> index(dim, 0);
    Eigen::VectorXd xi(dim);
    double sum = 0.0;
    while (true) {
        double weight = 1.0;
        for (int d = 0; d < dim; ++d) {
            xi(d) = rule.nodes(index[d]);
            weight *= rule.weights(index[d]);
        }
        const Eigen::VectorXd x = dist.mean + std::numbers::sqrt2 * (chol * xi);
        sum += weight * f(x);
        int d = 0;
        while (d < dim && ++index[d] == order) {
            index[d] = 0;
            ++d;
        }
        if (d == dim) break;
    }
    return sum / std::pow(std::numbers::pi, 0.5 * dim);
}

}  // namespace gausskin::oracle
