#include "blocknorm/matrix.hpp"

#include <cmath>
#include <utility>

namespace blocknorm {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NotSquare: return "NotSquare";
        case Errc::NotHermitian: return "NotHermitian";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::NonPositiveInput: return "NonPositiveInput";
        case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
        case Errc::NotPsd: return "NotPsd";
        case Errc::WrongDimension: return "WrongDimension";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotUnitary: return "NotUnitary";
        case Errc::HypothesisNotMet: return "HypothesisNotMet";
        case Errc::NotProjection: return "NotProjection";
        case Errc::NotCommuting: return "NotCommuting";
        case Errc::DpZero: return "DpZero";
        case Errc::EigenvalueCollision: return "EigenvalueCollision";
        case Errc::NumericalDegeneracy: return "NumericalDegeneracy";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::NonFiniteEntry: return "NonFiniteEntry";
        case Errc::MalformedInput: return "MalformedInput";
    }
    return "UnknownError";
}

void ToleranceConfig::validate() const {
    const bool ok = std::isfinite(abs_tol) && std::isfinite(rel_tol) &&
                    std::isfinite(indeterminate_band) && abs_tol >= 0 && rel_tol >= 0 &&
                    indeterminate_band >= 0;
    if (!ok) {
        throw Error(Errc::InvalidConfig, "tolerances must be finite and nonnegative");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
        throw Error(Errc::MalformedInput, "matrix dimensions must be positive");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw Error(Errc::MalformedInput, "matrix dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw Error(Errc::MalformedInput, "entry count does not match rows*cols");
    }
    require_finite();
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) {
        throw Error(Errc::MalformedInput, "matrix dimensions must be positive");
    }
    cols_ = rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw Error(Errc::MalformedInput, "ragged initializer rows");
        }
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    if (cols_ == 0) {
        throw Error(Errc::MalformedInput, "matrix dimensions must be positive");
    }
    require_finite();
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    m.require_finite();
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    m.require_finite();
    return m;
}

Matrix Matrix::column(std::span<const Complex> values) {
    Matrix m(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
    m.require_finite();
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw Error(Errc::DimensionMismatch, "matrix addition shape mismatch");
    }
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] + rhs.entries_[k];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw Error(Errc::DimensionMismatch, "matrix subtraction shape mismatch");
    }
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] - rhs.entries_[k];
    return out;
}

Matrix Matrix::operator-() const {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = -entries_[k];
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
    }
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += aik * rhs(k, j);
            }
        }
    }
    return out;
}

Matrix Matrix::operator*(Complex scalar) const {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] * scalar;
    return out;
}

Matrix Matrix::operator*(double scalar) const { return (*this) * Complex(scalar, 0.0); }

Complex Matrix::trace() const {
    if (!is_square()) throw Error(Errc::NotSquare, "trace of a non-square matrix");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (const Complex& e : entries_) sum += std::norm(e);
    return std::sqrt(sum);
}

double Matrix::max_abs_entry() const {
    double best = 0.0;
    for (const Complex& e : entries_) best = std::max(best, std::abs(e));
    return best;
}

bool Matrix::all_finite() const noexcept {
    for (const Complex& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    }
    return true;
}

Matrix Matrix::col(std::size_t j) const {
    Matrix out(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, j);
    return out;
}

void Matrix::require_finite() const {
    if (!all_finite()) {
        throw Error(Errc::NonFiniteEntry, "matrix entries must be finite");
    }
}

Matrix operator*(double scalar, const Matrix& m) { return m * scalar; }

Matrix hermitize(const Matrix& m) {
    if (!m.is_square()) throw Error(Errc::NotSquare, "hermitize needs a square matrix");
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
        }
    }
    return out;
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

double vector_norm(const Matrix& v) { return v.frobenius_norm(); }

}  // namespace blocknorm
