#pragma once

#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "gausskin/state.hpp"

namespace testutil {

inline gausskin::HamiltonianSpec ho_spec() {
    Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
    return gausskin::HamiltonianSpec::constant(one, Eigen::MatrixXd::Zero(1, 1), one);
}

inline gausskin::HamiltonianSpec free_spec() {
    return gausskin::HamiltonianSpec::constant(Eigen::MatrixXd::Zero(1, 1),
                                               Eigen::MatrixXd::Zero(1, 1),
                                               Eigen::MatrixXd::Identity(1, 1));
}

// a(t) = 1 + 0.5 cos t
inline gausskin::HamiltonianSpec parametric_spec() {
    gausskin::CoefficientMatrix a(1, 1), b(1, 1), c(1, 1);
    a.at(0, 0).constant = 1.0;
    a.at(0, 0).harmonics.push_back({0.5, 1.0, 0.0});
    c.at(0, 0).constant = 1.0;
    return gausskin::HamiltonianSpec(1, a, b, c);
}

inline gausskin::HamiltonianSpec coupled2d_spec() {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << 1.0, 0.2, 0.2, 1.5;
    b << 0.3, 0.1, 0.1, 0.2;
    return gausskin::HamiltonianSpec::constant(a, b, Eigen::MatrixXd::Identity(2, 2));
}

inline Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> uniform(-scale, scale);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = uniform(rng);
    return 0.5 * (m + m.transpose()).eval();
}

// Hamiltonian matrix: omega L symmetric, i.e. L = -omega M with M symmetric.
inline Eigen::MatrixXd random_hamiltonian_matrix(int n, std::mt19937_64& rng,
                                                 double scale = 1.0) {
    const Eigen::MatrixXd m = random_symmetric(2 * n, rng, scale);
    return -gausskin::symplectic_form(n) * m;
}

inline gausskin::SymplecticMatrix random_symplectic(int n, std::mt19937_64& rng,
                                                    int factors = 3, double scale = 0.5) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    for (int k = 0; k < factors; ++k) {
        const Eigen::MatrixXd ell = random_hamiltonian_matrix(n, rng, scale);
        // exp via scaling on the Hamiltonian matrix keeps the product symplectic
        s = (ell).exp() * s;
    }
    return gausskin::SymplecticMatrix(s);
}

inline gausskin::GaussianState random_state(int n, std::mt19937_64& rng) {
    const gausskin::IwasawaFactors factors = gausskin::iwasawa(random_symplectic(n, rng));
    std::uniform_real_distribution<double> uniform(-2.0, 2.0);
    gausskin::GaussianState state;
    state.t = 0.0;
    state.n = n;
    state.mean_q = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng); });
    state.mean_p = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng); });
    const Eigen::MatrixXd s2 = factors.s * factors.s;
    state.s2 = 0.5 * (s2 + s2.transpose());
    state.g = factors.g;
    state.alpha = factors.alpha;
    state.gamma = uniform(rng);
    return state;
}

// Random SPD matrix with eigenvalues in roughly [0.3, 2.3].
inline Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
    const Eigen::MatrixXd m = random_symmetric(n, rng);
    return m * m.transpose() + 0.3 * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace testutil
