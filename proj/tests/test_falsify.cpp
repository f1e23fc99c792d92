#include <cmath>

#include "blocknorm/falsify.hpp"
#include "blocknorm/search.hpp"
#include "test_util.hpp"

using namespace blocknorm;
using namespace blocknorm::testutil;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("normal matrices are certified normal") {
    std::vector<Complex> diag{Complex(1, 0), Complex(0, 2), Complex(-3, 0)};
    const FalsifyOutcome outcome = peel_falsify(Matrix::diagonal(diag));
    const auto* normal = std::get_if<NormalCertifiedOutcome>(&outcome);
    REQUIRE(normal != nullptr);
    CHECK(normal->commutator_defect <= 1e-10);
}

TEST_CASE("random normal matrices with distinct moduli are certified") {
    for (std::size_t n : {2, 3, 4, 5}) {
        RngStream rng(1201, n);
        for (int rep = 0; rep < 10; ++rep) {
            const Matrix x = random_normal_distinct_moduli(n, rng);
            const FalsifyOutcome outcome = peel_falsify(x);
            const auto* normal = std::get_if<NormalCertifiedOutcome>(&outcome);
            REQUIRE(normal != nullptr);
            const double nx = operator_norm(x);
            CHECK(normal->commutator_defect <= 1e-8 * std::max(1.0, nx * nx));
        }
    }
}

TEST_CASE("Hermitian input with distinct absolute eigenvalues is certified") {
    const Matrix x = diag3(1.5, -2.5, 0.5);
    const auto outcome = peel_falsify(x);
    CHECK(std::holds_alternative<NormalCertifiedOutcome>(outcome));
}

TEST_CASE("singular normal input exercises the null-space completion") {
    RngStream rng(1202, 0);
    const Matrix v = random_unitary(3, rng);
    std::vector<Complex> diag{Complex(0, 0), Complex(1, 1), Complex(-2, 0)};
    const Matrix x = v * Matrix::diagonal(diag) * v.adjoint();
    const auto outcome = peel_falsify(x);
    CHECK(std::holds_alternative<NormalCertifiedOutcome>(outcome));
}

TEST_CASE("one by one input is trivially normal") {
    const auto outcome = peel_falsify(Matrix{{Complex(2, 3)}});
    CHECK(std::holds_alternative<NormalCertifiedOutcome>(outcome));
}

TEST_CASE("the planted shift is falsified at stage 0 with the unit gap") {
    const FalsifyOutcome outcome = peel_falsify(kShift);
    const auto* violation = std::get_if<ViolationOutcome>(&outcome);
    REQUIRE(violation != nullptr);
    CHECK(violation->stage == 0);
    CHECK(violation->k == 1.0);
    CHECK(violation->certificate.gap >= 1.0 - 1e-9);
    CHECK(violation->certificate.instance.feasible);
    const ViolationEvaluation ev = evaluate_violation(violation->certificate.instance);
    CHECK(ev.certified);
}

TEST_CASE("repeated singular values are rejected") {
    const Matrix x{{0, 2, 0}, {0, 0, 1}, {1, 0, 0}};  // (x x*)^(1/2) = diag(2, 1, 1)
    expect_errc([&] { peel_falsify(x); }, Errc::EigenvalueCollision);
}

TEST_CASE("random additivity failures produce certified violations") {
    for (std::size_t n : {2, 3, 4}) {
        RngStream rng(1203, n);
        for (int rep = 0; rep < 15; ++rep) {
            const Matrix d = Matrix::diagonal(distinct_positive_values(n, rng));
            const Matrix u = random_unitary(n, rng);
            if (norm_additivity_gap(d, u) <= 1e-3) continue;
            const Matrix x = d * u;
            const FalsifyOutcome outcome = peel_falsify(x);
            const auto* violation = std::get_if<ViolationOutcome>(&outcome);
            REQUIRE(violation != nullptr);
            CHECK(evaluate_violation(violation->certificate.instance).certified);
        }
    }
}

TEST_CASE("a deep-stage failure needs the k search and respects k_max") {
    // U is the identity on the top eigenvector and a rotation below, so the
    // first stage peels cleanly and the second must concentrate with k > 1.
    const double theta = 0.7;
    const Matrix u{{1, 0, 0},
                   {0, std::cos(theta), std::sin(theta)},
                   {0, -std::sin(theta), std::cos(theta)}};
    const Matrix d = diag3(3, 2, 1);
    const Matrix x = d * u;

    const FalsifyOutcome outcome = peel_falsify(x);
    const auto* violation = std::get_if<ViolationOutcome>(&outcome);
    REQUIRE(violation != nullptr);
    CHECK(violation->stage == 1);
    CHECK(violation->k > 1.0);
    CHECK(evaluate_violation(violation->certificate.instance).certified);

    const FalsifyOutcome capped = peel_falsify(x, {}, 2.0);
    const auto* indeterminate = std::get_if<IndeterminateOutcome>(&capped);
    REQUIRE(indeterminate != nullptr);
    CHECK(indeterminate->stage == 1);
    CHECK(indeterminate->margin_shortfall > 0.0);
}

TEST_CASE("falsify input validation") {
    expect_errc([] { peel_falsify(Matrix(2, 3)); }, Errc::NotSquare);
    expect_errc([] { peel_falsify(Matrix::identity(2), {}, 0.5); }, Errc::InvalidConfig);
}
