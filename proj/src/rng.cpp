#include "blocknorm/rng.hpp"

#include <algorithm>
#include <cmath>

namespace blocknorm {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : state_(mix64(master_seed + kGamma) ^ mix64(stream_index + 0x7F4A7C15F39CC060ULL)) {}

std::uint64_t RngStream::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double RngStream::normal() {
    // Box-Muller, one value per pair of uniforms; wasteful but keeps the
    // draw count independent of call history.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex RngStream::complex_normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RngStream& rng) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    }
    return m;
}

Matrix hermitian_gaussian(std::size_t n, RngStream& rng) {
    return hermitize(gaussian_matrix(n, n, rng));
}

Matrix random_unitary(std::size_t n, RngStream& rng) {
    Matrix g = gaussian_matrix(n, n, rng);
    // Modified Gram-Schmidt, two passes for orthogonality down to roundoff.
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) g(i, j) = g(i, j) / nrm;
    }
    return g;
}

Matrix random_pd(std::size_t n, double cond_cap, RngStream& rng) {
    if (cond_cap <= 1.0) throw Error(Errc::InvalidConfig, "cond_cap must exceed 1");
    const double lo = 1.0 / std::sqrt(cond_cap);
    const double hi = std::sqrt(cond_cap);
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform(lo, hi);
    const Matrix v = random_unitary(n, rng);
    const Matrix d = Matrix::diagonal(values);
    return hermitize(v * d * v.adjoint());
}

Matrix random_normal_matrix(std::size_t n, RngStream& rng) {
    std::vector<Complex> values(n);
    for (Complex& v : values) v = rng.complex_normal();
    const Matrix v = random_unitary(n, rng);
    return v * Matrix::diagonal(values) * v.adjoint();
}

std::vector<double> distinct_positive_values(std::size_t n, RngStream& rng) {
    const double lo = 0.5;
    const double hi = 3.0;
    const double w = (hi - lo) / static_cast<double>(n);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = lo + w * static_cast<double>(i) + rng.uniform(0.1 * w, 0.9 * w);
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

Matrix random_normal_distinct_moduli(std::size_t n, RngStream& rng) {
    const std::vector<double> moduli = distinct_positive_values(n, rng);
    std::vector<Complex> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = rng.uniform(0.0, kTwoPi);
        values[i] = Complex(moduli[i] * std::cos(phase), moduli[i] * std::sin(phase));
    }
    const Matrix v = random_unitary(n, rng);
    return v * Matrix::diagonal(values) * v.adjoint();
}

}  // namespace blocknorm
