#include <cmath>
#include <numbers>

#include <doctest.h>

#include "gausskin/distributions.hpp"
#include "gausskin/oracle.hpp"
#include "helpers.hpp"

using namespace gausskin;
using testutil::coupled2d_spec;
using testutil::free_spec;
using testutil::ho_spec;
using testutil::parametric_spec;

namespace {

GaussianState ground1(double q0 = 0.0, double p0 = 0.0) {
    return initial_ground(1, Eigen::VectorXd::Constant(1, q0), Eigen::VectorXd::Constant(1, p0));
}

GaussianState free_particle_t1() {
    return evolve_state(free_spec(), ground1(0.0, 1.0), 1.0, 500);
}

}  // namespace

TEST_CASE("joint, marginal, conditional shapes and values") {
    const GaussianState ground = ground1();
    const GaussianDistribution joint = joint_distribution(ground);
    CHECK(joint.dim() == 2);
    CHECK((joint.cov - 0.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const GaussianState fp = free_particle_t1();
    const GaussianDistribution fp_joint = joint_distribution(fp);
    Eigen::MatrixXd expected(2, 2);
    expected << 1.0, 0.5, 0.5, 0.5;
    CHECK((fp_joint.cov - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fp_joint.mean(0) == doctest::Approx(1.0));
    CHECK(fp_joint.mean(1) == doctest::Approx(1.0));

    const GaussianDistribution fp_marginal = marginal_distribution(fp);
    CHECK(fp_marginal.cov(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    // density equals the squared amplitude pointwise
    for (double q : {-0.5, 1.0, 2.3}) {
        const Eigen::VectorXd point = Eigen::VectorXd::Constant(1, q);
        const double r = amplitude_at(fp, point);
        CHECK(fp_marginal.density(point) == doctest::Approx(r * r).epsilon(1e-12));
    }

    const GaussianDistribution cond = conditional_distribution(fp, Eigen::VectorXd::Constant(1, 2.0));
    CHECK(cond.mean(0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(cond.cov(0, 0) == doctest::Approx(0.25).epsilon(1e-12));

    // ground-state conditional is mean-independent of q
    const GaussianDistribution gcond = conditional_distribution(ground, Eigen::VectorXd::Constant(1, 3.0));
    CHECK(gcond.mean(0) == 0.0);
    CHECK(gcond.cov(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("joint factorizes into marginal times conditional") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uniform(-3.0, 3.0);
    for (int n : {1, 2}) {
        for (int trial = 0; trial < 100; ++trial) {
            const GaussianState state = testutil::random_state(n, rng);
            Eigen::VectorXd q(n), p(n);
            for (int i = 0; i < n; ++i) {
                q(i) = state.mean_q(i) + 0.5 * uniform(rng);
                p(i) = state.mean_p(i) + 0.5 * uniform(rng);
            }
            Eigen::VectorXd z(2 * n);
            z << q, p;
            const double joint = joint_distribution(state).density(z);
            const double product = marginal_distribution(state).density(q) *
                                   conditional_distribution(state, q).density(p);
            CHECK(joint == doctest::Approx(product).epsilon(1e-12));
        }
    }
}

TEST_CASE("conditional mean equals the Bohm momentum") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> uniform(-2.0, 2.0);
    const GaussianState state = testutil::random_state(2, rng);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXd q =
            state.mean_q + Eigen::Vector2d(uniform(rng), uniform(rng));
        const Eigen::VectorXd bohm = state.mean_p - state.g * (q - state.mean_q);
        CHECK((conditional_distribution(state, q).mean - bohm).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("distribution moments match quadrature") {
    const GaussianState fp = free_particle_t1();
    for (const GaussianDistribution& dist :
         {joint_distribution(fp), marginal_distribution(fp),
          conditional_distribution(fp, Eigen::VectorXd::Constant(1, 0.7))}) {
        for (int i = 0; i < dist.dim(); ++i) {
            const double mean_i = oracle::gauss_hermite_expect(
                dist, [&](const Eigen::VectorXd& x) { return x(i); }, 20);
            CHECK(mean_i == doctest::Approx(dist.mean(i)).epsilon(1e-9));
            for (int j = 0; j <= i; ++j) {
                const double cov_ij = oracle::gauss_hermite_expect(
                    dist,
                    [&](const Eigen::VectorXd& x) {
                        return (x(i) - dist.mean(i)) * (x(j) - dist.mean(j));
                    },
                    20);
                CHECK(cov_ij == doctest::Approx(dist.cov(i, j)).epsilon(1e-9));
            }
            // Gaussian higher moments: zero skew, kurtosis 3 sigma^4
            const double third = oracle::gauss_hermite_expect(
                dist, [&](const Eigen::VectorXd& x) { return std::pow(x(i) - dist.mean(i), 3); },
                20);
            CHECK(std::abs(third) <= 1e-10);
            const double fourth = oracle::gauss_hermite_expect(
                dist, [&](const Eigen::VectorXd& x) { return std::pow(x(i) - dist.mean(i), 4); },
                20);
            CHECK(fourth ==
                  doctest::Approx(3.0 * dist.cov(i, i) * dist.cov(i, i)).epsilon(1e-10));
        }
    }
}

TEST_CASE("drift and diffusion coefficients") {
    SUBCASE("free particle marginal at t = 1") {
        const DriftDiffusion dd =
            drift_diffusion(free_particle_t1(), free_spec(), DistributionKind::marginal);
        CHECK(dd.drift(0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(dd.diffusion(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("harmonic oscillator joint diffusion vanishes") {
        const GaussianState state = evolve_state(ho_spec(), ground1(1.0, 0.0), 0.8, 400);
        const DriftDiffusion dd = drift_diffusion(state, ho_spec(), DistributionKind::joint);
        CHECK(dd.diffusion.cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::VectorXd expected = generator_at(ho_spec(), 0.8).matrix * state.mean_z();
        CHECK((dd.drift - expected).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("unit-oscillator joint drift is a pure rotation field") {
        const GaussianState state = evolve_state(ho_spec(), ground1(1.0, 0.5), 0.4, 200);
        const DriftDiffusion dd = drift_diffusion(state, ho_spec(), DistributionKind::joint);
        // rotation field: drift orthogonal to the phase-space vector
        CHECK(std::abs(dd.drift.dot(state.mean_z())) < 1e-12);
    }
}

TEST_CASE("fokker-planck residuals") {
    SUBCASE("harmonic oscillator joint distribution") {
        const GaussianState state = evolve_state(ho_spec(), ground1(1.0, 0.0), 0.6, 300);
        const auto samples = residual_sample_grid(joint_distribution(state), 9);
        // closed-form sides; the finite-difference step is the only error source
        CHECK(fokker_planck_residual(state, ho_spec(), DistributionKind::joint, samples, {},
                                     1e-4) <= 1e-8);
    }
    SUBCASE("free particle marginal converges at h^2") {
        const GaussianState state = free_particle_t1();
        const auto samples = residual_sample_grid(marginal_distribution(state), 21);
        const double coarse =
            fokker_planck_residual(state, free_spec(), DistributionKind::marginal, samples, {},
                                   1e-3);
        const double fine =
            fokker_planck_residual(state, free_spec(), DistributionKind::marginal, samples, {},
                                   5e-4);
        CHECK(coarse <= 1e-6);
        CHECK(coarse / fine > 3.0);
        CHECK(coarse / fine < 5.0);
    }
    SUBCASE("conditional distribution on the coupled system") {
        const GaussianState state =
            evolve_state(coupled2d_spec(),
                         initial_ground(2, Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)), 0.7,
                         350);
        // stacked (q; p) samples around the means
        std::vector<Eigen::VectorXd> samples;
        for (double dq : {-1.0, 0.0, 1.0}) {
            for (double dp : {-1.0, 0.0, 1.0}) {
                Eigen::VectorXd x(4);
                x << state.mean_q(0) + dq, state.mean_q(1) - 0.5 * dq, state.mean_p(0) + dp,
                    state.mean_p(1) - 0.5 * dp;
                samples.push_back(x);
            }
        }
        CHECK(fokker_planck_residual(state, coupled2d_spec(), DistributionKind::conditional,
                                     samples) <= 1e-6);
    }
    SUBCASE("time-frozen oscillator at the origin is static") {
        const GaussianState state = ground1();  // stationary under the unit oscillator
        const auto samples = residual_sample_grid(joint_distribution(state), 7);
        CHECK(fokker_planck_residual(state, ho_spec(), DistributionKind::joint, samples) <=
              1e-12);
    }
}

TEST_CASE("marginal flux") {
    SUBCASE("free particle at the mean") {
        const GaussianState state = free_particle_t1();
        const Eigen::VectorXd j = marginal_flux(state, free_spec(), state.mean_q);
        CHECK(j(0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-10));
    }
    SUBCASE("static oscillator at the origin has no flux") {
        const GaussianState state = evolve_state(ho_spec(), ground1(), 0.9, 450);
        for (double q : {-1.3, 0.0, 0.8}) {
            CHECK(std::abs(marginal_flux(state, ho_spec(),
                                         Eigen::VectorXd::Constant(1, q))(0)) < 1e-14);
        }
    }
    SUBCASE("flux divergence integrates to zero") {
        const GaussianState state = free_particle_t1();
        const double sigma = std::sqrt(marginal_distribution(state).cov(0, 0));
        const int points = 2001;
        const double lo = state.mean_q(0) - 10.0 * sigma;
        const double hi = state.mean_q(0) + 10.0 * sigma;
        const double dx = (hi - lo) / (points - 1);
        const double fd_h = 1e-5;
        double integral = 0.0;
        for (int i = 0; i < points; ++i) {
            const double q = lo + i * dx;
            const double div =
                (marginal_flux(state, free_spec(), Eigen::VectorXd::Constant(1, q + fd_h))(0) -
                 marginal_flux(state, free_spec(), Eigen::VectorXd::Constant(1, q - fd_h))(0)) /
                (2.0 * fd_h);
            integral += div * dx * (i == 0 || i == points - 1 ? 0.5 : 1.0);
        }
        CHECK(std::abs(integral) < 1e-8);
    }
}

TEST_CASE("flux splits into irrotational and rotational parts") {
    SUBCASE("no coupling means no rotational flux") {
        const GaussianState state = free_particle_t1();
        for (double q : {0.0, 1.0, 2.2}) {
            const Eigen::VectorXd point = Eigen::VectorXd::Constant(1, q);
            const FluxSplit split = flux_split(state, free_spec(), point);
            CHECK(split.rotational.cwiseAbs().maxCoeff() == 0.0);
            CHECK((split.irrotational - marginal_flux(state, free_spec(), point))
                      .cwiseAbs()
                      .maxCoeff() <= 1e-10);
        }
    }
    SUBCASE("scalar coupling b = beta I") {
        const double beta = 0.4;
        const HamiltonianSpec spec = HamiltonianSpec::constant(
            Eigen::MatrixXd::Identity(2, 2), beta * Eigen::MatrixXd::Identity(2, 2),
            Eigen::MatrixXd::Identity(2, 2));
        const GaussianState state =
            initial_ground(2, Eigen::Vector2d(1.0, -0.5), Eigen::Vector2d(0.2, 0.1));
        const FluxSplit split = flux_split(state, spec, state.mean_q);
        const double rho = marginal_distribution(state).density(state.mean_q);
        CHECK((split.rotational - rho * beta * state.mean_q).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("split sums to the marginal flux at random points") {
        const double beta = 0.4;
        const HamiltonianSpec spec = HamiltonianSpec::constant(
            Eigen::MatrixXd::Identity(2, 2), beta * Eigen::MatrixXd::Identity(2, 2),
            Eigen::MatrixXd::Identity(2, 2));
        const GaussianState state =
            evolve_state(spec, initial_ground(2, Eigen::Vector2d(1.0, -0.5),
                                              Eigen::Vector2d(0.2, 0.1)),
                         0.5, 250);
        std::mt19937_64 rng(44);
        std::uniform_real_distribution<double> uniform(-2.0, 2.0);
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::VectorXd q =
                state.mean_q + Eigen::Vector2d(uniform(rng), uniform(rng));
            const FluxSplit split = flux_split(state, spec, q);
            const Eigen::VectorXd total = marginal_flux(state, spec, q);
            CHECK((split.irrotational + split.rotational - total).cwiseAbs().maxCoeff() <=
                  1e-10);
        }
    }
    SUBCASE("asymmetric products make the split undefined") {
        const GaussianState state =
            evolve_state(coupled2d_spec(),
                         initial_ground(2, Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)), 1.0,
                         500);
        CHECK_THROWS_AS(flux_split(state, coupled2d_spec(), state.mean_q), SplitUndefinedError);
    }
}

TEST_CASE("stationary state with zero conditional momentum has zero flux") {
    // <p> = 0, g = 0, b = 0: the flux vanishes identically
    const GaussianState state = ground1(1.3, 0.0);
    for (double q : {-2.0, 0.0, 1.3, 4.0}) {
        const Eigen::VectorXd point = Eigen::VectorXd::Constant(1, q);
        CHECK(marginal_flux(state, free_spec(), point).cwiseAbs().maxCoeff() == 0.0);
        const FluxSplit split = flux_split(state, free_spec(), point);
        CHECK(split.irrotational.cwiseAbs().maxCoeff() == 0.0);
        CHECK(split.rotational.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("scalar-coupling split is consistent with the b = beta I flux formula") {
    // b = beta I keeps b^T s^2 symmetric for every state, so the split stays
    // defined along the whole trajectory
    const double beta = 0.3;
    const HamiltonianSpec spec = HamiltonianSpec::constant(
        Eigen::MatrixXd::Identity(1, 1), beta * Eigen::MatrixXd::Identity(1, 1),
        Eigen::MatrixXd::Identity(1, 1));
    const GaussianState state = evolve_state(spec, ground1(0.7, -0.2), 0.9, 450);
    const Eigen::VectorXd q = Eigen::VectorXd::Constant(1, 1.4);
    CHECK_NOTHROW(flux_split(state, spec, q));
}
