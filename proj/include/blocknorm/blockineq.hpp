#pragma once

#include <optional>

#include "blocknorm/matcore.hpp"
#include "blocknorm/matrix.hpp"

namespace blocknorm {

/// A certified violation must clear this fraction of max(1, ||A+B||).
inline constexpr double kCertifyMarginFactor = 1e-6;

/// A triple (A, X, B) for the block matrix [[A, X], [X*, B]].
/// A is positive definite, B Hermitian; `feasible` records whether the
/// Schur complement B - X* A^-1 X is PSD, i.e. whether the block matrix
/// itself is PSD.
struct ProblemInstance {
    Matrix a;
    Matrix x;
    Matrix b;
    bool feasible = false;
};

/// Validates shapes, positivity of a, Hermiticity of b, and computes
/// feasibility.
ProblemInstance make_problem_instance(const Matrix& a, const Matrix& x, const Matrix& b,
                                      const ToleranceConfig& tol = {});

/// The two competing norms that decide which arrangement of the block
/// inequality is guaranteed. `direct` is || A + X* A^-1 X ||, the norm of A
/// plus the minimal feasible lower-right block; `swapped` is
/// || A + X A^-1 X* ||, the same quantity for the arrangement with X and X*
/// exchanged.
struct FloorNorms {
    double direct;
    double swapped;
};

/// Which block-norm inequality is guaranteed for (A, X).
/// DirectHolds:  || [[A,X],[X*,B]] || <= ||A+B|| for every feasible B.
/// SwappedHolds: the mirrored inequality holds for every feasible C.
/// BothHold:     the two floor norms tie within the indeterminate band,
///               and both inequalities hold up to that band.
enum class Trichotomy { DirectHolds, SwappedHolds, BothHold };

const char* trichotomy_name(Trichotomy t);

/// Witness extracted from the top eigenpair of the block matrix when the
/// inequality fails: lambda is the top eigenvalue, (upper, lower) the split
/// eigenvector, and the residual measures the eigenvalue relation
/// (A + X (lambda - B)^-1 X*) upper = lambda upper.
struct ResolventWitness {
    double lambda;
    Matrix upper;
    Matrix lower;
    double resolvent_residual;
};

/// A feasible instance whose block norm exceeds ||A+B|| by more than a
/// certification margin, both norms recomputed directly.
struct ViolationCertificate {
    ProblemInstance instance;
    double block_norm;
    double sum_norm;
    double gap;
    double margin;
};

/// Both sides of || A + A^-1 || <= || A + U* A^-1 U || for unitary U,
/// plus the endpoint formula max(l + 1/l, h + 1/h) over the spectral
/// endpoints l, h of A, which equals the left side.
struct InversePairBound {
    double plain;
    double conjugated;
    bool holds;
    double endpoint_formula;
};

/// The two sides of the zero-slack comparison:
/// block_side = || A + A^-1/2 X X* A^-1/2 ||, which equals the norm of the
/// block matrix with B = X* A^-1 X, and sum_side = || A + X* A^-1 X ||.
struct ZeroSlackSides {
    double block_side;
    double sum_side;
};

/// The explicit 3x3 violating instance together with the exact value of
/// ||A+B|| and a closed-form lower bound on the block norm.
struct ReferenceCounterexample {
    ProblemInstance instance;
    double sum_norm;
    double block_lower_bound;
};

// --- block assembly and feasibility ---

Matrix assemble_block(const Matrix& a, const Matrix& x, const Matrix& b);
Matrix assemble_block(const ProblemInstance& inst);

/// True iff B - X* A^-1 X is PSD; equivalent to PSD-ness of the block.
bool schur_feasible(const Matrix& a, const Matrix& x, const Matrix& b,
                    const ToleranceConfig& tol = {});

/// || [[A,X],[X*,B]] || - || A + B ||. Positive means the inequality fails.
double norm_gap(const ProblemInstance& inst);

// --- the trichotomy ---

ZeroSlackSides zero_slack_sides(const Matrix& a, const Matrix& x);

FloorNorms floor_norms(const Matrix& a, const Matrix& x);

Trichotomy classify_trichotomy(const Matrix& a, const Matrix& x, const ToleranceConfig& tol = {});

/// Absent when the gap is clearly nonpositive; a witness when the gap
/// clearly exceeds the indeterminate band; NumericalDegeneracy in between.
std::optional<ResolventWitness> resolvent_witness(const ProblemInstance& inst,
                                                  const ToleranceConfig& tol = {});

// --- sufficient conditions and special cases ---

InversePairBound inverse_pair_bound(const Matrix& a, const Matrix& u,
                                    const ToleranceConfig& tol = {});

/// True iff both [[A,X],[X*,B]] and [[A,X*],[X,B]] are PSD. When true the
/// inequality is guaranteed to hold.
bool both_arrangements_psd(const ProblemInstance& inst, const ToleranceConfig& tol = {});

ReferenceCounterexample reference_counterexample();

// --- norm additivity machinery ---

/// 2||D|| - ||D + U* D U|| for PSD d and unitary u. Always >= 0 up to
/// roundoff; strictly positive values convert into violating instances.
double norm_additivity_gap(const Matrix& d, const Matrix& u, const ToleranceConfig& tol = {});

/// When the additivity gap clears the certification margin, builds and
/// certifies the instance A = D, X = DU, B = U* D U (feasible with zero
/// slack). Requires d positive definite.
std::optional<ViolationCertificate> violation_from_additivity(const Matrix& d, const Matrix& u,
                                                              const ToleranceConfig& tol = {});

/// Unit vector xi with D xi = ||D|| xi and D U xi = ||D|| U xi, extracted
/// from the top eigenvector of D + U* D U. Absent when the additivity
/// equality ||D + U* D U|| = 2||D|| fails beyond tolerance. Ties are broken
/// deterministically by the eigensolver ordering.
std::optional<Matrix> aligned_top_vector(const Matrix& d, const Matrix& u,
                                         const ToleranceConfig& tol = {});

/// Given ||a+b|| = ||a|| + ||b|| (hypothesis, else HypothesisNotMet),
/// checks ||s a + t b|| = s||a|| + t||b|| within a scaled tolerance.
bool scaled_additivity_holds(const Matrix& a, const Matrix& b, double s, double t,
                             const ToleranceConfig& tol = {});

/// Instance A = k D p + q, X = D U, B = X* A^-1 X for a projection q that
/// commutes with d and u, p = 1 - q. Concentrates the block norm on the
/// complement of q: || block || >= (k + 1/k) ||D p||.
ProblemInstance peel_instance(const Matrix& d, const Matrix& u, const Matrix& q, double k,
                              const ToleranceConfig& tol = {});

/// Direct recomputation gate: returns a certificate iff the instance is
/// feasible and its recomputed gap exceeds the certification margin.
std::optional<ViolationCertificate> certify(const ProblemInstance& inst,
                                            const ToleranceConfig& tol = {});

/// Like certify but always reports the recomputed quantities.
struct ViolationEvaluation {
    double block_norm;
    double sum_norm;
    double gap;
    double margin;
    bool certified;
};

ViolationEvaluation evaluate_violation(const ProblemInstance& inst,
                                       const ToleranceConfig& tol = {});

}  // namespace blocknorm
