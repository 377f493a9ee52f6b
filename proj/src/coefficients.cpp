#include "gausskin/coefficients.hpp"

#include <cmath>

namespace gausskin {

double CoefficientFunction::operator()(double t) const {
    double value = constant;
    for (const auto& h : harmonics) {
        value += h.amplitude * std::cos(h.angular_frequency * t + h.phase);
    }
    return value;
}

bool CoefficientFunction::is_zero() const {
    if (constant != 0.0) return false;
    for (const auto& h : harmonics) {
        if (h.amplitude != 0.0) return false;
    }
    return true;
}

CoefficientMatrix::CoefficientMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {}

CoefficientMatrix CoefficientMatrix::constant(const Eigen::MatrixXd& values) {
    CoefficientMatrix m(static_cast<int>(values.rows()), static_cast<int>(values.cols()));
    for (int i = 0; i < m.rows_; ++i)
        for (int j = 0; j < m.cols_; ++j) m.at(i, j).constant = values(i, j);
    return m;
}

CoefficientFunction& CoefficientMatrix::at(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
}

const CoefficientFunction& CoefficientMatrix::at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
}

Eigen::MatrixXd CoefficientMatrix::eval(double t) const {
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            const double v = at(i, j)(t);
            if (!std::isfinite(v)) {
                throw EvaluationError("coefficient (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is non-finite at t = " +
                                      std::to_string(t));
            }
            out(i, j) = v;
        }
    }
    return out;
}

bool CoefficientMatrix::is_zero() const {
    for (const auto& e : entries_) {
        if (!e.is_zero()) return false;
    }
    return true;
}

double CoefficientMatrix::max_asymmetry(const std::vector<double>& sample_times) const {
    double worst = 0.0;
    for (double t : sample_times) {
        for (int i = 0; i < rows_; ++i) {
            for (int j = i + 1; j < cols_; ++j) {
                worst = std::max(worst, std::abs(at(i, j)(t) - at(j, i)(t)));
            }
        }
    }
    return worst;
}

namespace {

CoefficientFunction average(const CoefficientFunction& f, const CoefficientFunction& g) {
    CoefficientFunction out;
    out.constant = 0.5 * (f.constant + g.constant);
    out.harmonics.reserve(f.harmonics.size() + g.harmonics.size());
    for (const auto& h : f.harmonics)
        out.harmonics.push_back({0.5 * h.amplitude, h.angular_frequency, h.phase});
    for (const auto& h : g.harmonics)
        out.harmonics.push_back({0.5 * h.amplitude, h.angular_frequency, h.phase});
    return out;
}

}  // namespace

CoefficientMatrix CoefficientMatrix::symmetrized() const {
    CoefficientMatrix out = *this;
    for (int i = 0; i < rows_; ++i) {
        for (int j = i + 1; j < cols_; ++j) {
            if (at(i, j) == at(j, i)) {
                out.at(j, i) = out.at(i, j);
            } else {
                out.at(i, j) = average(at(i, j), at(j, i));
                out.at(j, i) = out.at(i, j);
            }
        }
    }
    return out;
}

}  // namespace gausskin
