#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gausskin/errors.hpp"

namespace gausskin {

struct Harmonic {
    double amplitude = 0.0;
    double angular_frequency = 0.0;
    double phase = 0.0;

    bool operator==(const Harmonic&) const = default;
};

/// Scalar signal  constant + sum_k amp_k cos(w_k t + phi_k).
struct CoefficientFunction {
    double constant = 0.0;
    std::vector<Harmonic> harmonics;

    double operator()(double t) const;
    /// Structurally zero: no constant term and no harmonics with nonzero amplitude.
    bool is_zero() const;

    bool operator==(const CoefficientFunction&) const = default;
};

/// Dense matrix of coefficient functions, evaluated entrywise at a time t.
class CoefficientMatrix {
public:
    CoefficientMatrix() = default;
    CoefficientMatrix(int rows, int cols);

    /// All-constant matrix from a numeric one.
    static CoefficientMatrix constant(const Eigen::MatrixXd& values);
    static CoefficientMatrix zero(int rows, int cols) { return CoefficientMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    CoefficientFunction& at(int i, int j);
    const CoefficientFunction& at(int i, int j) const;

    /// Throws EvaluationError if any entry evaluates non-finite.
    Eigen::MatrixXd eval(double t) const;

    bool is_zero() const;

    /// Worst |m_ij(t) - m_ji(t)| over the sample times.
    double max_asymmetry(const std::vector<double>& sample_times) const;

    /// Mirror the upper triangle onto the lower one when the two entries are
    /// structurally identical; average the functions otherwise. Intended for
    /// inputs whose functional asymmetry is already below tolerance, so the
    /// structural path keeps serialization round-trips exact.
    CoefficientMatrix symmetrized() const;

    bool operator==(const CoefficientMatrix&) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<CoefficientFunction> entries_;
};

}  // namespace gausskin
