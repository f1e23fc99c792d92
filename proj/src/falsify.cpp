#include "blocknorm/falsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blocknorm {

namespace {

Matrix normalized(const Matrix& v) {
    const double nrm = vector_norm(v);
    return v * (1.0 / nrm);
}

}  // namespace

FalsifyOutcome peel_falsify(const Matrix& x, const ToleranceConfig& tol, double k_max) {
    tol.validate();
    if (!x.is_square()) throw Error(Errc::NotSquare, "peel_falsify needs a square matrix");
    if (!(k_max >= 1.0) || !std::isfinite(k_max)) {
        throw Error(Errc::InvalidConfig, "k_max must be >= 1");
    }
    const std::size_t n = x.rows();

    const PolarPair polar = polar_left(x, tol);
    const Matrix& d = polar.d;
    const Matrix& u = polar.u;

    const EigenDecomposition deig = herm_eigen(d, tol);
    const double top = std::max(0.0, deig.values.front());
    const double sep_band = tol.indeterminate_band * std::max(1.0, top);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (deig.values[i] - deig.values[i + 1] <= sep_band) {
            throw Error(Errc::EigenvalueCollision,
                        "eigenvalues of (x x*)^(1/2) are not separated at index " +
                            std::to_string(i));
        }
    }

    Matrix p = Matrix::identity(n);
    for (int stage = 0; stage < static_cast<int>(n); ++stage) {
        const Matrix dp = hermitize(d * p);
        const double dp_norm = operator_norm(dp);
        const Matrix pair_sum = hermitize(dp + u.adjoint() * dp * u);
        const double cond_gap = 2.0 * dp_norm - operator_norm(pair_sum);

        const double stage_scale = std::max(1.0, 2.0 * dp_norm);
        const double fail_thr = tol.indeterminate_band * stage_scale;
        const double eq_tol =
            std::min(tol.abs_tol + tol.rel_tol * stage_scale, 0.5 * fail_thr);

        if (cond_gap > fail_thr) {
            // Additivity fails outright: concentrate the instance on the
            // unpeeled space and certify. Small k gives the largest gap, so
            // the schedule starts at 1.
            const Matrix q = hermitize(Matrix::identity(n) - p);
            double required = 0.0;
            double best_gap = -std::numeric_limits<double>::infinity();
            for (double k = 1.0; k <= k_max; k *= 2.0) {
                ProblemInstance inst;
                try {
                    inst = peel_instance(d, u, q, k, tol);
                } catch (const Error&) {
                    break;  // singular D on the unpeeled space, nothing to build
                }
                const ViolationEvaluation ev = evaluate_violation(inst, tol);
                if (ev.certified) {
                    return ViolationOutcome{
                        ViolationCertificate{inst, ev.block_norm, ev.sum_norm, ev.gap, ev.margin},
                        stage, k};
                }
                required = ev.margin;
                best_gap = std::max(best_gap, ev.gap);
            }
            return IndeterminateOutcome{stage, required - best_gap};
        }
        if (cond_gap > eq_tol) {
            // Near-tie: refusing to classify beats guessing.
            return IndeterminateOutcome{stage, fail_thr - cond_gap};
        }

        // Additivity holds: extract the aligned top eigenvector on range(p).
        Matrix xi(n, 1);
        if (dp_norm <= eq_tol) {
            xi = herm_eigen(p, tol).vectors.col(0);
        } else {
            xi = herm_eigen(pair_sum, tol).vectors.col(0);
        }
        xi = normalized(p * xi);

        const double resid_thr = tol.indeterminate_band * std::max(1.0, top);
        const Matrix uxi = u * xi;
        const double r1 = vector_norm(d * xi - xi * dp_norm);
        const double r2 = vector_norm(d * uxi - uxi * dp_norm);
        const Matrix q_new = xi * xi.adjoint();
        const double comm_u = frobenius_distance(u * q_new, q_new * u);
        const double comm_d = frobenius_distance(d * q_new, q_new * d) / std::max(1.0, top);
        const double worst = std::max({r1, r2, comm_u, comm_d});
        if (worst > resid_thr) {
            return IndeterminateOutcome{stage, worst - resid_thr};
        }
        p = hermitize(p - q_new);
    }

    const double defect = commutator_defect(x);
    const double defect_thr = tol.indeterminate_band * std::max(1.0, top * top);
    if (defect <= defect_thr) {
        return NormalCertifiedOutcome{defect};
    }
    return IndeterminateOutcome{static_cast<int>(n), defect - defect_thr};
}

}  // namespace blocknorm
