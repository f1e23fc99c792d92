#include <cmath>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace blocknorm;
using namespace blocknorm::testutil;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("herm_eigen on the identity and diagonals") {
    const auto eig = herm_eigen(Matrix::identity(3));
    CHECK(eig.values == std::vector<double>{1.0, 1.0, 1.0});
    check_close(eig.vectors * eig.vectors.adjoint(), Matrix::identity(3), 1e-12);

    const auto diag = herm_eigen(diag3(2, 3, 1));
    CHECK(diag.values == std::vector<double>{3.0, 2.0, 1.0});
    // standard basis eigenvectors, reordered by descending eigenvalue
    check_close(diag.vectors.col(0), Matrix{{0}, {1}, {0}}, 1e-14);
    check_close(diag.vectors.col(1), Matrix{{1}, {0}, {0}}, 1e-14);
    check_close(diag.vectors.col(2), Matrix{{0}, {0}, {1}}, 1e-14);
}

TEST_CASE("herm_eigen residuals and orthonormality on random Hermitian") {
    for (std::size_t n : {1, 2, 3, 5, 8, 13, 16}) {
        RngStream rng(101, n);
        for (int rep = 0; rep < 8; ++rep) {
            const Matrix m = hermitian_gaussian(n, rng);
            const auto eig = herm_eigen(m);
            const double scale = std::max(1.0, operator_norm(m));
            for (std::size_t j = 0; j < n; ++j) {
                const Matrix v = eig.vectors.col(j);
                CHECK(vector_norm(m * v - v * eig.values[j]) <= 1e-10 * scale);
            }
            check_close(eig.vectors.adjoint() * eig.vectors, Matrix::identity(n), 1e-10);
            for (std::size_t j = 0; j + 1 < n; ++j) CHECK(eig.values[j] >= eig.values[j + 1]);
        }
    }
}

TEST_CASE("herm_eigen agrees with the characteristic polynomial oracle") {
    for (std::size_t n : {2, 3, 4}) {
        RngStream rng(202, n);
        for (int rep = 0; rep < 50; ++rep) {
            const Matrix m = hermitian_gaussian(n, rng);
            const auto eig = herm_eigen(m);
            const auto expected = oracles::charpoly_eigenvalues(m);
            const double scale = std::max(1.0, std::abs(expected.front()));
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(std::abs(eig.values[j] - expected[j]) <= 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("herm_eigen rejects bad input") {
    expect_errc([] { herm_eigen(Matrix(2, 3)); }, Errc::NotSquare);
    expect_errc([] { herm_eigen(Matrix{{0, 1}, {0, 0}}); }, Errc::NotHermitian);
}

TEST_CASE("operator_norm fixed values") {
    CHECK(operator_norm(Matrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(operator_norm(Matrix{{3, 1}, {1, 2}}) ==
          doctest::Approx(0.5 * (5.0 + std::sqrt(5.0))).epsilon(1e-13));
    CHECK(operator_norm(Matrix{{0, 2}, {0, 0}}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(operator_norm(Matrix{{3, 4}}) == doctest::Approx(5.0).epsilon(1e-14));  // row vector
}

TEST_CASE("operator_norm is unitarily invariant and submultiplicative") {
    RngStream rng(303, 0);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rep % 4;
        const Matrix m = gaussian_matrix(n, n, rng);
        const Matrix u = random_unitary(n, rng);
        const Matrix v = random_unitary(n, rng);
        const double nm = operator_norm(m);
        CHECK(std::abs(operator_norm(u * m * v) - nm) <= 1e-9 * nm);

        const Matrix m2 = gaussian_matrix(n, n, rng);
        CHECK(operator_norm(m * m2) <= nm * operator_norm(m2) + 1e-9);
    }
}

TEST_CASE("operator_norm equals the top |eigenvalue| on Hermitian input") {
    RngStream rng(304, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const Matrix m = hermitian_gaussian(3 + rep % 3, rng);
        const auto eig = herm_eigen(m);
        const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
        CHECK(std::abs(operator_norm(m) - top) <= 1e-11 * std::max(1.0, top));
    }
}

TEST_CASE("two_by_two_norm closed form") {
    CHECK(two_by_two_norm(3.0, 2.0) ==
          doctest::Approx(0.5 * (5.0 + std::sqrt(5.0))).epsilon(1e-15));
    CHECK(two_by_two_norm(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(two_by_two_norm(5.0, 5.0) == doctest::Approx(6.0).epsilon(1e-15));
    expect_errc([] { two_by_two_norm(0.0, 1.0); }, Errc::NonPositiveInput);
    expect_errc([] { two_by_two_norm(1.0, -2.0); }, Errc::NonPositiveInput);
}

TEST_CASE("two_by_two_norm matches the eigensolver route") {
    RngStream rng(305, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        const double a = rng.uniform(0.01, 100.0);
        const double c = rng.uniform(0.01, 100.0);
        const Matrix m{{a, 1}, {1, c}};
        CHECK(std::abs(two_by_two_norm(a, c) - operator_norm(m)) <= 1e-10);
    }
}

TEST_CASE("is_psd boundary and error cases") {
    CHECK(is_psd(Matrix::diagonal(std::vector<double>{1.0, 0.0})));
    CHECK_FALSE(is_psd(Matrix::diagonal(std::vector<double>{1.0, -1.0})));
    // slack of the reference instance: C - A^-1 = diag(0, 0, 5/3)
    const Matrix c = diag3(1.0, 0.5, 2.0);
    const Matrix slack = hermitize(c - pd_inverse(diag3(1, 2, 3)));
    CHECK(is_psd(slack));
    expect_errc([] { is_psd(Matrix{{0, 1}, {0, 0}}); }, Errc::NotHermitian);
}

TEST_CASE("pd_inverse fixed and oracle-checked values") {
    check_close(pd_inverse(diag3(1, 2, 3)), diag3(1.0, 0.5, 1.0 / 3.0), 1e-14);
    check_close(pd_inverse(Matrix::identity(3)), Matrix::identity(3), 1e-14);

    RngStream rng(406, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix a = random_pd(3, 100.0, rng);
        const Matrix inv = pd_inverse(a);
        check_close(a * inv, Matrix::identity(3), 1e-9);
        check_close(inv, oracles::gauss_jordan_inverse(a), 1e-9);
    }
    expect_errc([] { pd_inverse(Matrix::diagonal(std::vector<double>{1.0, 0.0})); },
                Errc::NotPositiveDefinite);
}

TEST_CASE("psd_sqrt fixed values, clipping and idempotence") {
    check_close(psd_sqrt(Matrix::diagonal(std::vector<double>{4.0, 9.0})),
                Matrix::diagonal(std::vector<double>{2.0, 3.0}), 1e-14);
    check_close(psd_sqrt(Matrix::identity(2)), Matrix::identity(2), 1e-14);
    check_close(psd_sqrt(hermitize(kShift * kShift.adjoint())), diag3(2, 3, 1), 1e-13);
    // tiny negative eigenvalues are clipped, larger ones rejected
    CHECK(psd_sqrt(Matrix::diagonal(std::vector<double>{1.0, -1e-12})).rows() == 2);
    expect_errc([] { psd_sqrt(Matrix::diagonal(std::vector<double>{1.0, -1.0})); }, Errc::NotPsd);

    RngStream rng(407, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 4;
        const Matrix g = gaussian_matrix(n, n, rng);
        const Matrix m = hermitize(g * g.adjoint());
        const Matrix root = psd_sqrt(m);
        CHECK(operator_norm(root * root - m) <= 1e-9 * std::max(1.0, operator_norm(m)));
    }
}

TEST_CASE("polar_left on the weighted shift") {
    const PolarPair polar = polar_left(kShift);
    check_close(polar.d, diag3(2, 3, 1), 1e-13);
    check_close(polar.u, kCyclic, 1e-13);
    check_close(polar.d * polar.u, kShift, 1e-13);
}

TEST_CASE("polar_left degenerate cases") {
    RngStream rng(508, 0);
    const Matrix u = random_unitary(4, rng);
    const PolarPair of_unitary = polar_left(u);
    check_close(of_unitary.d, Matrix::identity(4), 1e-12);
    check_close(of_unitary.u, u, 1e-12);

    const PolarPair of_zero = polar_left(Matrix(2, 2));
    check_close(of_zero.d, Matrix(2, 2), 1e-15);
    check_close(of_zero.u, Matrix::identity(2), 1e-15);

    expect_errc([] { polar_left(Matrix(2, 3)); }, Errc::NotSquare);
}

TEST_CASE("polar_left reconstruction, including rank-deficient input") {
    RngStream rng(509, 0);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rep % 5;
        Matrix x = gaussian_matrix(n, n, rng);
        if (rep % 3 == 1) {
            // exact rank deficiency: zero out the last column
            for (std::size_t i = 0; i < n; ++i) x(i, n - 1) = Complex(0.0, 0.0);
        }
        if (rep % 3 == 2) {
            // duplicate a row, another kind of rank drop
            for (std::size_t j = 0; j < n; ++j) x(n - 1, j) = x(0, j);
        }
        const PolarPair polar = polar_left(x);
        const double scale = std::max(1.0, operator_norm(x));
        CHECK(operator_norm(polar.d * polar.u - x) <= 1e-9 * scale);
        check_close(polar.u.adjoint() * polar.u, Matrix::identity(n), 1e-10);
        CHECK(is_psd(polar.d));
    }
}

TEST_CASE("commutator_defect") {
    RngStream rng(610, 0);
    CHECK(commutator_defect(hermitian_gaussian(4, rng)) <= 1e-12);
    CHECK(commutator_defect(random_unitary(4, rng)) <= 1e-12);
    CHECK(commutator_defect(kShift) == doctest::Approx(8.0).epsilon(1e-13));
    expect_errc([] { commutator_defect(Matrix(2, 3)); }, Errc::NotSquare);
}

TEST_CASE("is_line_segment_range for 2x2") {
    CHECK(is_line_segment_range(Matrix{{1, 0}, {0, kI}}));
    CHECK_FALSE(is_line_segment_range(Matrix{{0, 1}, {0, 0}}));
    CHECK(is_line_segment_range(Matrix{{0, 1}, {-1, 0}}));
    expect_errc([] { is_line_segment_range(Matrix::identity(3)); }, Errc::WrongDimension);
}
