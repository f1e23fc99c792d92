#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blocknorm {

using Complex = std::complex<double>;

/// Error codes carried by every exception thrown out of the library.
enum class Errc {
    NotSquare,
    NotHermitian,
    NoConvergence,
    NonPositiveInput,
    NotPositiveDefinite,
    NotPsd,
    WrongDimension,
    DimensionMismatch,
    NotUnitary,
    HypothesisNotMet,
    NotProjection,
    NotCommuting,
    DpZero,
    EigenvalueCollision,
    NumericalDegeneracy,
    InvalidConfig,
    NonFiniteEntry,
    MalformedInput,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Numerical tolerances used throughout. The indeterminate band is the
/// zone where a comparison is treated as a tie rather than a decision.
struct ToleranceConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    double indeterminate_band = 1e-8;

    void validate() const;
};

/// Dense complex matrix, row-major. Entries are validated to be finite
/// whenever a matrix is built from external data.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> values);
    static Matrix diagonal(std::span<const Complex> values);
    static Matrix column(std::span<const Complex> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return entries_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_ && rows_ > 0; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const noexcept { return entries_; }

    Matrix adjoint() const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator-() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator*(Complex scalar) const;
    Matrix operator*(double scalar) const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs_entry() const;
    bool all_finite() const noexcept;

    /// Column j as an n x 1 matrix.
    Matrix col(std::size_t j) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;

    void require_finite() const;
};

Matrix operator*(double scalar, const Matrix& m);

/// (m + m*)/2. Used to remove roundoff drift from composed products.
Matrix hermitize(const Matrix& m);

/// Frobenius distance ||a - b||_F.
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Euclidean norm of an n x 1 column.
double vector_norm(const Matrix& v);

}  // namespace blocknorm
