#pragma once

#include <variant>

#include "blocknorm/blockineq.hpp"

namespace blocknorm {

/// Default cap for the doubling search over the concentration constant k.
inline constexpr double kDefaultKMax = 1048576.0;  // 2^20

struct ViolationOutcome {
    ViolationCertificate certificate;
    int stage;
    double k;
};

struct NormalCertifiedOutcome {
    double commutator_defect;
};

struct IndeterminateOutcome {
    int stage;
    double margin_shortfall;
};

using FalsifyOutcome = std::variant<ViolationOutcome, NormalCertifiedOutcome, IndeterminateOutcome>;

/// Decides whether x behaves like a normal matrix under the block-norm
/// inequality, by peeling rank-one spectral projections of D = (x x*)^(1/2).
///
/// Requires the eigenvalues of D to be pairwise separated by more than the
/// indeterminate band (EigenvalueCollision otherwise). Each stage tests the
/// norm additivity condition ||Dp + U* Dp U|| = 2 ||Dp|| on the unpeeled
/// projection p. A strict failure is converted into a concrete violating
/// instance (searching k = 1, 2, 4, ... up to k_max) and re-verified by
/// direct norm evaluation before being reported; a clean success peels the
/// aligned top eigenvector and continues. Near-ties return Indeterminate
/// rather than guessing.
FalsifyOutcome peel_falsify(const Matrix& x, const ToleranceConfig& tol = {},
                            double k_max = kDefaultKMax);

}  // namespace blocknorm
