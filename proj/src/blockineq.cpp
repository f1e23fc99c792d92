#include "blocknorm/blockineq.hpp"

#include <algorithm>
#include <cmath>

namespace blocknorm {

namespace {

void require_same_square(const Matrix& a, const Matrix& x, const Matrix& b) {
    if (!a.is_square() || !x.is_square() || !b.is_square()) {
        throw Error(Errc::NotSquare, "blocks must be square");
    }
    if (a.rows() != x.rows() || a.rows() != b.rows()) {
        throw Error(Errc::DimensionMismatch, "blocks must share one dimension");
    }
}

void require_unitary(const Matrix& u, const ToleranceConfig& tol, const char* what) {
    if (!u.is_square()) throw Error(Errc::NotUnitary, std::string(what) + " is not square");
    const Matrix gram = u.adjoint() * u;
    const double resid = frobenius_distance(gram, Matrix::identity(u.rows()));
    const double thr = std::sqrt(static_cast<double>(u.rows())) * (tol.abs_tol + tol.rel_tol);
    if (resid > thr) {
        throw Error(Errc::NotUnitary,
                    std::string(what) + " unitarity residual " + std::to_string(resid));
    }
}

}  // namespace

const char* trichotomy_name(Trichotomy t) {
    switch (t) {
        case Trichotomy::DirectHolds: return "direct_holds";
        case Trichotomy::SwappedHolds: return "swapped_holds";
        case Trichotomy::BothHold: return "both_hold";
    }
    return "unknown";
}

ProblemInstance make_problem_instance(const Matrix& a, const Matrix& x, const Matrix& b,
                                      const ToleranceConfig& tol) {
    tol.validate();
    require_same_square(a, x, b);
    const double b_scale = std::max(1.0, b.frobenius_norm());
    if (frobenius_distance(b, b.adjoint()) > tol.abs_tol + tol.rel_tol * b_scale) {
        throw Error(Errc::NotHermitian, "B must be Hermitian");
    }
    ProblemInstance inst{hermitize(a), x, hermitize(b), false};
    inst.feasible = schur_feasible(inst.a, inst.x, inst.b, tol);
    return inst;
}

Matrix assemble_block(const Matrix& a, const Matrix& x, const Matrix& b) {
    require_same_square(a, x, b);
    const std::size_t n = a.rows();
    Matrix h(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = a(i, j);
            h(i, n + j) = x(i, j);
            h(n + i, j) = std::conj(x(j, i));
            h(n + i, n + j) = b(i, j);
        }
    }
    return h;
}

Matrix assemble_block(const ProblemInstance& inst) {
    return assemble_block(inst.a, inst.x, inst.b);
}

bool schur_feasible(const Matrix& a, const Matrix& x, const Matrix& b,
                    const ToleranceConfig& tol) {
    require_same_square(a, x, b);
    const Matrix ainv = pd_inverse(a, tol);
    const Matrix slack = hermitize(b - x.adjoint() * ainv * x);
    return is_psd(slack, tol);
}

double norm_gap(const ProblemInstance& inst) {
    const Matrix h = assemble_block(inst);
    return operator_norm(h) - operator_norm(inst.a + inst.b);
}

ZeroSlackSides zero_slack_sides(const Matrix& a, const Matrix& x) {
    if (!a.is_square() || !x.is_square() || a.rows() != x.rows()) {
        throw Error(Errc::DimensionMismatch, "a and x must be square of equal size");
    }
    const EigenDecomposition eig = herm_eigen(a);
    if (eig.values.back() <= ToleranceConfig{}.abs_tol) {
        throw Error(Errc::NotPositiveDefinite, "a must be positive definite");
    }
    const std::size_t n = a.rows();
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(eig.values[i]);
    Matrix root_inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                sum += eig.vectors(i, k) * inv_sqrt[k] * std::conj(eig.vectors(j, k));
            }
            root_inv(i, j) = sum;
        }
    }
    const Matrix ainv = hermitize(root_inv * root_inv);

    ZeroSlackSides sides{};
    sides.block_side = operator_norm(hermitize(a + root_inv * (x * x.adjoint()) * root_inv));
    sides.sum_side = operator_norm(hermitize(a + x.adjoint() * ainv * x));
    return sides;
}

FloorNorms floor_norms(const Matrix& a, const Matrix& x) {
    if (!a.is_square() || !x.is_square() || a.rows() != x.rows()) {
        throw Error(Errc::DimensionMismatch, "a and x must be square of equal size");
    }
    const Matrix ainv = pd_inverse(a);
    FloorNorms out{};
    out.direct = operator_norm(hermitize(a + x.adjoint() * ainv * x));
    out.swapped = operator_norm(hermitize(a + x * ainv * x.adjoint()));
    return out;
}

Trichotomy classify_trichotomy(const Matrix& a, const Matrix& x, const ToleranceConfig& tol) {
    tol.validate();
    const FloorNorms fn = floor_norms(a, x);
    const double band = tol.indeterminate_band * std::max(fn.direct, fn.swapped);
    if (fn.direct - fn.swapped > band) return Trichotomy::DirectHolds;
    if (fn.swapped - fn.direct > band) return Trichotomy::SwappedHolds;
    return Trichotomy::BothHold;
}

std::optional<ResolventWitness> resolvent_witness(const ProblemInstance& inst,
                                                  const ToleranceConfig& tol) {
    tol.validate();
    const Matrix h = assemble_block(inst);
    const EigenDecomposition heig = herm_eigen(h, tol);
    // Top eigenvalue equals the operator norm whenever the diagonal blocks
    // are PSD, which is the regime the witness argument lives in.
    const double lambda = heig.values.front();
    const double sum_norm = operator_norm(inst.a + inst.b);
    const double gap = lambda - sum_norm;

    const double scale = std::max(1.0, sum_norm);
    const double clear_zero = tol.abs_tol + tol.rel_tol * scale;
    const double band = tol.indeterminate_band * scale;
    if (gap <= clear_zero) return std::nullopt;
    if (gap <= band) {
        throw Error(Errc::NumericalDegeneracy,
                    "gap " + std::to_string(gap) + " inside the indeterminate band");
    }

    const std::size_t n = inst.a.rows();
    Matrix xi(n, 1);
    Matrix eta(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        xi(i, 0) = heig.vectors(i, 0);
        eta(i, 0) = heig.vectors(n + i, 0);
    }
    if (vector_norm(xi) <= 1e-10) {
        throw Error(Errc::NumericalDegeneracy, "upper witness component vanished");
    }

    Matrix resolvent;
    try {
        const Matrix shifted = hermitize(Matrix::identity(n) * lambda - inst.b);
        resolvent = pd_inverse(shifted, tol);
        pd_inverse(hermitize(Matrix::identity(n) * lambda - inst.a), tol);
    } catch (const Error&) {
        throw Error(Errc::NumericalDegeneracy, "lambda - A or lambda - B not safely invertible");
    }

    const Matrix lhs = inst.a * xi + inst.x * (resolvent * (inst.x.adjoint() * xi));
    const double residual = vector_norm(lhs - xi * lambda);
    if (residual > band) {
        throw Error(Errc::NumericalDegeneracy,
                    "resolvent residual " + std::to_string(residual) + " beyond band");
    }
    return ResolventWitness{lambda, xi, eta, residual};
}

InversePairBound inverse_pair_bound(const Matrix& a, const Matrix& u,
                                    const ToleranceConfig& tol) {
    tol.validate();
    require_unitary(u, tol, "u");
    if (a.rows() != u.rows() || !a.is_square()) {
        throw Error(Errc::DimensionMismatch, "a and u must be square of equal size");
    }
    const EigenDecomposition eig = herm_eigen(a, tol);
    if (eig.values.back() <= tol.abs_tol) {
        throw Error(Errc::NotPositiveDefinite, "a must be positive definite");
    }
    const Matrix ainv = pd_inverse(a, tol);
    InversePairBound out{};
    out.plain = operator_norm(hermitize(a + ainv));
    out.conjugated = operator_norm(hermitize(a + u.adjoint() * ainv * u));
    const double lo = eig.values.back();
    const double hi = eig.values.front();
    out.endpoint_formula = std::max(lo + 1.0 / lo, hi + 1.0 / hi);
    const double scale = std::max(1.0, std::max(out.plain, out.conjugated));
    out.holds = out.plain <= out.conjugated + tol.abs_tol + tol.rel_tol * scale;
    return out;
}

bool both_arrangements_psd(const ProblemInstance& inst, const ToleranceConfig& tol) {
    return is_psd(assemble_block(inst.a, inst.x, inst.b), tol) &&
           is_psd(assemble_block(inst.a, inst.x.adjoint(), inst.b), tol);
}

ReferenceCounterexample reference_counterexample() {
    const Matrix a = Matrix::diagonal(std::vector<double>{1.0, 2.0, 3.0});
    const Matrix u{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    const Matrix c = Matrix::diagonal(std::vector<double>{1.0, 0.5, 2.0});
    const Matrix b = hermitize(u.adjoint() * c * u);

    ReferenceCounterexample out{};
    out.instance = make_problem_instance(a, u, b);
    out.sum_norm = operator_norm(a + b);
    out.block_lower_bound = 0.5 * (5.0 + std::sqrt(5.0));
    return out;
}

double norm_additivity_gap(const Matrix& d, const Matrix& u, const ToleranceConfig& tol) {
    tol.validate();
    if (!is_psd(d, tol)) throw Error(Errc::NotPsd, "d must be PSD");
    require_unitary(u, tol, "u");
    if (d.rows() != u.rows()) throw Error(Errc::DimensionMismatch, "d and u sizes differ");
    return 2.0 * operator_norm(d) - operator_norm(hermitize(d + u.adjoint() * d * u));
}

std::optional<ViolationCertificate> violation_from_additivity(const Matrix& d, const Matrix& u,
                                                              const ToleranceConfig& tol) {
    tol.validate();
    require_unitary(u, tol, "u");
    const EigenDecomposition eig = herm_eigen(d, tol);
    if (eig.values.back() <= tol.abs_tol) {
        throw Error(Errc::NotPositiveDefinite, "d must be positive definite");
    }
    const Matrix b = hermitize(u.adjoint() * d * u);
    const ProblemInstance inst = make_problem_instance(d, d * u, b, tol);
    return certify(inst, tol);
}

std::optional<Matrix> aligned_top_vector(const Matrix& d, const Matrix& u,
                                         const ToleranceConfig& tol) {
    const double d_norm = operator_norm(d);
    const Matrix sum = hermitize(d + u.adjoint() * d * u);
    const double band = tol.indeterminate_band * std::max(1.0, 2.0 * d_norm);
    if (std::abs(2.0 * d_norm - operator_norm(sum)) > band) return std::nullopt;

    const EigenDecomposition eig = herm_eigen(sum, tol);
    Matrix xi = eig.vectors.col(0);
    const double r1 = vector_norm(d * xi - xi * d_norm);
    const double r2 = vector_norm(u.adjoint() * (d * (u * xi)) - xi * d_norm);
    if (r1 > band || r2 > band) return std::nullopt;
    return xi;
}

bool scaled_additivity_holds(const Matrix& a, const Matrix& b, double s, double t,
                             const ToleranceConfig& tol) {
    tol.validate();
    if (s < 0.0 || t < 0.0) throw Error(Errc::NonPositiveInput, "scales must be nonnegative");
    const double na = operator_norm(a);
    const double nb = operator_norm(b);
    const double nab = operator_norm(a + b);
    const double hypothesis_defect = (na + nb) - nab;
    const double hyp_tol = tol.abs_tol + tol.rel_tol * std::max(1.0, na + nb);
    if (hypothesis_defect > hyp_tol) {
        throw Error(Errc::HypothesisNotMet, "||a+b|| < ||a|| + ||b|| beyond tolerance");
    }
    const double expected = s * na + t * nb;
    const double actual = operator_norm(a * s + b * t);
    const double slack = tol.abs_tol + tol.rel_tol * std::max(1.0, expected) +
                         std::max(s, t) * std::max(0.0, hypothesis_defect);
    return std::abs(actual - expected) <= slack;
}

ProblemInstance peel_instance(const Matrix& d, const Matrix& u, const Matrix& q, double k,
                              const ToleranceConfig& tol) {
    tol.validate();
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw Error(Errc::NonPositiveInput, "k must be positive");
    }
    if (!q.is_square() || q.rows() != d.rows() || d.rows() != u.rows()) {
        throw Error(Errc::DimensionMismatch, "d, u, q must be square of equal size");
    }
    const double band = tol.indeterminate_band;
    if (frobenius_distance(q, q.adjoint()) > band ||
        frobenius_distance(q * q, q) > band * std::max(1.0, q.frobenius_norm())) {
        throw Error(Errc::NotProjection, "q is not an orthogonal projection");
    }
    const double d_scale = std::max(1.0, d.frobenius_norm());
    if (frobenius_distance(q * d, d * q) > band * d_scale) {
        throw Error(Errc::NotCommuting, "q does not commute with d");
    }
    if (frobenius_distance(q * u, u * q) > band * std::max(1.0, u.frobenius_norm())) {
        throw Error(Errc::NotCommuting, "q does not commute with u");
    }

    const std::size_t n = d.rows();
    const Matrix p = Matrix::identity(n) - q;
    const Matrix dp = hermitize(d * p);
    if (dp.frobenius_norm() <= tol.abs_tol * static_cast<double>(n)) {
        throw Error(Errc::DpZero, "d vanishes on the complement of q");
    }

    const Matrix a = hermitize(dp * k + q);
    const Matrix x = d * u;
    const Matrix ainv = pd_inverse(a, tol);
    const Matrix b = hermitize(x.adjoint() * ainv * x);
    return make_problem_instance(a, x, b, tol);
}

ViolationEvaluation evaluate_violation(const ProblemInstance& inst, const ToleranceConfig& tol) {
    tol.validate();
    ViolationEvaluation ev{};
    ev.block_norm = operator_norm(assemble_block(inst));
    ev.sum_norm = operator_norm(inst.a + inst.b);
    ev.gap = ev.block_norm - ev.sum_norm;
    ev.margin = kCertifyMarginFactor * std::max(1.0, ev.sum_norm);
    ev.certified = inst.feasible && ev.gap > ev.margin;
    return ev;
}

std::optional<ViolationCertificate> certify(const ProblemInstance& inst,
                                            const ToleranceConfig& tol) {
    const ViolationEvaluation ev = evaluate_violation(inst, tol);
    if (!ev.certified) return std::nullopt;
    return ViolationCertificate{inst, ev.block_norm, ev.sum_norm, ev.gap, ev.margin};
}

}  // namespace blocknorm
