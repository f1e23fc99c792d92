#include "blocknorm/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace blocknorm {

namespace {

constexpr int kMaxSweeps = 64;

// One complex Jacobi rotation G (identity except in the p/q plane):
//   G[p][p] = c      G[p][q] = s
//   G[q][p] = -u s   G[q][q] = u c
// with u the unit phase that makes the (p,q) entry real. Applying
// G* A G annihilates A[p][q].
struct Rotation {
    double c;
    double s;
    Complex u;
};

Rotation make_rotation(double app, double aqq, Complex apq) {
    const double g = std::abs(apq);
    Rotation rot{1.0, 0.0, Complex(1.0, 0.0)};
    if (g == 0.0) return rot;
    rot.u = std::conj(apq) / g;
    const double tau = (aqq - app) / (2.0 * g);
    double t;
    if (tau >= 0.0) {
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    } else {
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    }
    rot.c = 1.0 / std::sqrt(1.0 + t * t);
    rot.s = t * rot.c;
    return rot;
}

// B <- B G, touching only columns p and q.
void apply_right(Matrix& b, std::size_t p, std::size_t q, const Rotation& r) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
        const Complex bp = b(i, p);
        const Complex bq = b(i, q);
        b(i, p) = r.c * bp - r.u * r.s * bq;
        b(i, q) = r.s * bp + r.u * r.c * bq;
    }
}

// B <- G* B, touching only rows p and q.
void apply_left_adjoint(Matrix& b, std::size_t p, std::size_t q, const Rotation& r) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const Complex bp = b(p, j);
        const Complex bq = b(q, j);
        b(p, j) = r.c * bp - std::conj(r.u) * r.s * bq;
        b(q, j) = r.s * bp + std::conj(r.u) * r.c * bq;
    }
}

double off_diagonal_frobenius(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

// Stable descending sort permutation.
std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

Matrix reorder_columns(const Matrix& m, const std::vector<std::size_t>& order) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < order.size(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, order[j]);
    }
    return out;
}

// Rebuild V f(diag) V* for a spectral function f given as mapped values.
Matrix from_spectrum(const EigenDecomposition& eig, const std::vector<double>& mapped) {
    const std::size_t n = eig.vectors.rows();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                sum += eig.vectors(i, k) * mapped[k] * std::conj(eig.vectors(j, k));
            }
            out(i, j) = sum;
        }
    }
    return hermitize(out);
}

// Deterministic completion: orthonormalize standard basis vectors against
// the first `known` columns of v, filling the remaining columns in order.
void complete_basis(Matrix& v, std::size_t known) {
    const std::size_t n = v.rows();
    std::size_t next = known;
    for (std::size_t e = 0; e < n && next < n; ++e) {
        std::vector<Complex> cand(n, Complex(0.0, 0.0));
        cand[e] = 1.0;
        // Two orthogonalization passes keep the completion orthonormal.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < next; ++j) {
                Complex proj(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(v(i, j)) * cand[i];
                for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * v(i, j);
            }
        }
        double nrm = 0.0;
        for (const Complex& c : cand) nrm += std::norm(c);
        nrm = std::sqrt(nrm);
        if (nrm < 0.5) continue;  // e_j already spanned, try the next one
        for (std::size_t i = 0; i < n; ++i) v(i, next) = cand[i] / nrm;
        ++next;
    }
}

}  // namespace

EigenDecomposition herm_eigen(const Matrix& m, const ToleranceConfig& tol) {
    tol.validate();
    if (!m.is_square()) throw Error(Errc::NotSquare, "herm_eigen needs a square matrix");
    const std::size_t n = m.rows();

    const double scale = std::max(1.0, m.frobenius_norm());
    const double asym = frobenius_distance(m, m.adjoint());
    if (asym > tol.abs_tol + tol.rel_tol * scale) {
        throw Error(Errc::NotHermitian, "asymmetry " + std::to_string(asym) + " beyond tolerance");
    }

    Matrix a = hermitize(m);
    Matrix v = Matrix::identity(n);

    const double stop = 1e-15 * scale;
    bool converged = (n == 1) || off_diagonal_frobenius(a) <= stop;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                if (std::abs(apq) <= stop / static_cast<double>(n)) continue;
                const Rotation rot = make_rotation(a(p, p).real(), a(q, q).real(), apq);
                apply_right(a, p, q, rot);
                apply_left_adjoint(a, p, q, rot);
                a(p, q) = Complex(0.0, 0.0);
                a(q, p) = Complex(0.0, 0.0);
                apply_right(v, p, q, rot);
            }
        }
        converged = off_diagonal_frobenius(a) <= stop;
    }
    if (!converged) throw Error(Errc::NoConvergence, "Jacobi sweep limit exceeded");

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
    const auto order = descending_order(values);

    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = values[order[i]];
    out.vectors = reorder_columns(v, order);
    return out;
}

double operator_norm(const Matrix& m) {
    if (m.empty()) throw Error(Errc::MalformedInput, "operator_norm of an empty matrix");
    const Matrix gram = hermitize(m.adjoint() * m);
    const EigenDecomposition eig = herm_eigen(gram);
    return std::sqrt(std::max(0.0, eig.values.front()));
}

double two_by_two_norm(double a, double c) {
    if (!(a > 0.0) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(c)) {
        throw Error(Errc::NonPositiveInput, "two_by_two_norm needs a > 0 and c > 0");
    }
    return 0.5 * (a + c + std::hypot(a - c, 2.0));
}

bool is_psd(const Matrix& m, const ToleranceConfig& tol) {
    const EigenDecomposition eig = herm_eigen(m, tol);
    const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    return eig.values.back() >= -(tol.abs_tol + tol.rel_tol * top);
}

Matrix pd_inverse(const Matrix& m, const ToleranceConfig& tol) {
    const EigenDecomposition eig = herm_eigen(m, tol);
    if (eig.values.back() <= tol.abs_tol) {
        throw Error(Errc::NotPositiveDefinite,
                    "minimal eigenvalue " + std::to_string(eig.values.back()) + " too small");
    }
    std::vector<double> inv(eig.values.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / eig.values[i];
    return from_spectrum(eig, inv);
}

Matrix psd_sqrt(const Matrix& m, const ToleranceConfig& tol) {
    const EigenDecomposition eig = herm_eigen(m, tol);
    const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    const double floor = tol.abs_tol + tol.rel_tol * top;
    std::vector<double> roots(eig.values.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double lam = eig.values[i];
        if (lam < -floor) {
            throw Error(Errc::NotPsd, "eigenvalue " + std::to_string(lam) + " below -tolerance");
        }
        roots[i] = std::sqrt(std::max(0.0, lam));
    }
    return from_spectrum(eig, roots);
}

PolarPair polar_left(const Matrix& x, const ToleranceConfig& tol) {
    tol.validate();
    if (!x.is_square()) throw Error(Errc::NotSquare, "polar_left needs a square matrix");
    const std::size_t n = x.rows();

    // One-sided Jacobi on the columns of x: x V = W diag(sigma). Small
    // singular values come out with high relative accuracy, so exact rank
    // deficiency is cleanly separated from roundoff.
    Matrix a = x;
    Matrix v = Matrix::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();
    bool converged = (n == 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    app += std::norm(a(i, p));
                    aqq += std::norm(a(i, q));
                    apq += std::conj(a(i, p)) * a(i, q);
                }
                if (std::abs(apq) <= 16.0 * eps * std::sqrt(app * aqq) || std::abs(apq) == 0.0) {
                    continue;
                }
                converged = false;
                const Rotation rot = make_rotation(app, aqq, apq);
                apply_right(a, p, q, rot);
                apply_right(v, p, q, rot);
            }
        }
    }
    if (!converged) throw Error(Errc::NoConvergence, "one-sided Jacobi sweep limit exceeded");

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = vector_norm(a.col(j));
    const auto order = descending_order(sigma);

    std::vector<double> sorted_sigma(n);
    for (std::size_t j = 0; j < n; ++j) sorted_sigma[j] = sigma[order[j]];
    Matrix w_sorted = Matrix::identity(n);
    Matrix v_sorted = reorder_columns(v, order);

    const double cut =
        std::max(tol.abs_tol, 64.0 * eps * static_cast<double>(n) * (sorted_sigma.empty() ? 0.0 : sorted_sigma[0]));
    std::size_t rank = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (sorted_sigma[j] > cut) {
            for (std::size_t i = 0; i < n; ++i) w_sorted(i, j) = a(i, order[j]) / sorted_sigma[j];
            ++rank;
        } else {
            sorted_sigma[j] = 0.0;
            for (std::size_t i = 0; i < n; ++i) w_sorted(i, j) = Complex(0.0, 0.0);
        }
    }
    complete_basis(w_sorted, rank);
    if (rank < n) {
        // Null directions of v get the same deterministic identity completion.
        Matrix v_known(n, n);
        for (std::size_t j = 0; j < rank; ++j) {
            for (std::size_t i = 0; i < n; ++i) v_known(i, j) = v_sorted(i, j);
        }
        complete_basis(v_known, rank);
        v_sorted = v_known;
    }

    // d = W diag(sigma) W*, u = W V*.
    Matrix d(n, n);
    Matrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sd(0.0, 0.0), su(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                sd += w_sorted(i, k) * sorted_sigma[k] * std::conj(w_sorted(j, k));
                su += w_sorted(i, k) * std::conj(v_sorted(j, k));
            }
            d(i, j) = sd;
            u(i, j) = su;
        }
    }
    return PolarPair{hermitize(d), u};
}

double commutator_defect(const Matrix& x) {
    if (!x.is_square()) throw Error(Errc::NotSquare, "commutator_defect needs a square matrix");
    return operator_norm(x * x.adjoint() - x.adjoint() * x);
}

bool is_line_segment_range(const Matrix& x, const ToleranceConfig& tol) {
    if (x.rows() != 2 || x.cols() != 2) {
        throw Error(Errc::WrongDimension, "numerical range test supports 2x2 only");
    }
    const double nrm = operator_norm(x);
    return commutator_defect(x) <= tol.abs_tol + tol.rel_tol * std::max(1.0, nrm * nrm);
}

}  // namespace blocknorm
