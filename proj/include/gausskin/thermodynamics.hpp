#pragma once

#include <Eigen/Dense>

#include "gausskin/distributions.hpp"

namespace gausskin {

/// Every scalar observable of the hydrodynamic/thermodynamic layer at one
/// instant. Entropies are in kb*nats; energies in the Hamiltonian's units.
struct ThermoReport {
    double t = 0.0;
    double joint_entropy = 0.0;
    double marginal_entropy = 0.0;
    double conditional_entropy = 0.0;
    double entropy_production_q = 0.0;
    double temperature_scalar = 0.0;
    double pressure_scalar_at_mean = 0.0;
    double mean_quantum_potential = 0.0;
    double quantum_potential_variance = 0.0;
    double u_kinetic = 0.0;
    double u_conditional_at_mean = 0.0;
    double u_phase_space = 0.0;
    double virial_residual = 0.0;
};

/// 1/2 kb ln det(2 pi e Sigma); equals kb n (1 + ln(pi hbar)) because the
/// Wigner matrix is symplectic, and stays constant along any trajectory.
double joint_entropy(const GaussianState& state, const Constants& consts = {});

/// 1/2 kb ln det(2 pi e (hbar/2) s^2).
double marginal_entropy(const GaussianState& state, const Constants& consts = {});

/// 1/2 kb ln det(2 pi e (hbar/2) s^-2).
double conditional_entropy(const GaussianState& state, const Constants& consts = {});

/// d S_q/dt = kb Tr(b - g c) = -d S_(p|q)/dt.
double entropy_production(const GaussianState& state, const HamiltonianSpec& spec,
                          const Constants& consts = {});

struct Temperature {
    Eigen::MatrixXd matrix;  ///< (1/kb) c (hbar/2) s^-2
    double scalar = 0.0;     ///< T = Tr of the matrix, so kb T = (hbar/2) Tr(c s^-2)
};
Temperature temperature(const GaussianState& state, const HamiltonianSpec& spec,
                        const Constants& consts = {});

struct Pressure {
    Eigen::MatrixXd tensor;  ///< -(hbar^2/4) c Hess(rho_q) evaluated at q
    double scalar = 0.0;     ///< trace; at q = <q> equals rho_q(<q>) kb T
};
Pressure pressure(const GaussianState& state, const HamiltonianSpec& spec,
                  const Eigen::VectorXd& q, const Constants& consts = {});

/// Q(q) = (hbar/2) Tr(c s^-2) - 1/2 (q-<q>)^T s^-2 c s^-2 (q-<q>);
/// peaks at the mean with Q_max = kb T = 2 <Q>.
double quantum_potential(const GaussianState& state, const HamiltonianSpec& spec,
                         const Eigen::VectorXd& q, const Constants& consts = {});

/// <Q> = (hbar/4) Tr(c s^-2) = kb T / 2, the kinetic internal energy.
double mean_quantum_potential(const GaussianState& state, const HamiltonianSpec& spec,
                              const Constants& consts = {});

/// Isserlis closed form kb^2 ([Tr T]^2 + 2 Tr T^2) of the squared quadratic
/// fluctuation of Q around its maximum.
double quantum_potential_variance(const GaussianState& state, const HamiltonianSpec& spec,
                                  const Constants& consts = {});

/// U_(p|q)(q) = H(q, <p>_(p|q), t) + kb T / 2.
double conditional_internal_energy(const GaussianState& state, const HamiltonianSpec& spec,
                                   const Eigen::VectorXd& q, const Constants& consts = {});

/// U_(q,p) = H(<q>,<p>,t) + U_kin + (hbar/4) Tr(a s^2) - (hbar/4) Tr(2 b g s^2 - c g s^2 g);
/// equals the joint-distribution average of H.
double phase_space_internal_energy(const GaussianState& state, const HamiltonianSpec& spec,
                                   const Constants& consts = {});

/// 2 U_kin + <(q-<q>)^T grad Q>; identically zero up to rounding.
double virial_residual(const GaussianState& state, const HamiltonianSpec& spec,
                       const Constants& consts = {});

/// (alpha_end - alpha_start)/pi, converting det u = e^{i alpha} to the
/// e^{i pi alpha} convention of the symplectic-path Maslov index.
double maslov_index(double alpha_start, double alpha_end);

ThermoReport thermo_report(const GaussianState& state, const HamiltonianSpec& spec,
                           const Constants& consts = {});

}  // namespace gausskin
