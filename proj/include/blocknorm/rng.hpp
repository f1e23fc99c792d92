#pragma once

#include <cstdint>
#include <vector>

#include "blocknorm/matrix.hpp"

namespace blocknorm {

/// Deterministic splittable random stream. A given (master_seed,
/// stream_index) pair always reproduces the same draw sequence, independent
/// of scheduling, platform or worker count.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    double uniform();                         // [0, 1)
    double uniform(double lo, double hi);     // [lo, hi)
    double log_uniform(double lo, double hi); // lo, hi > 0
    double normal();                          // standard Gaussian
    Complex complex_normal();                 // independent N(0,1) parts

private:
    std::uint64_t state_;
};

/// n x m matrix with independent complex standard Gaussian entries.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RngStream& rng);

/// Hermitian Gaussian perturbation direction, (G + G*)/2.
Matrix hermitian_gaussian(std::size_t n, RngStream& rng);

/// Hermitian positive definite with condition number at most cond_cap:
/// eigenvalues uniform in [1/sqrt(cond_cap), sqrt(cond_cap)] conjugated by
/// a Haar unitary.
Matrix random_pd(std::size_t n, double cond_cap, RngStream& rng);

/// Haar-distributed unitary: complex Gaussian matrix orthonormalized with
/// the phase convention that makes the triangular factor's diagonal
/// positive (which Gram-Schmidt produces directly).
Matrix random_unitary(std::size_t n, RngStream& rng);

/// Random normal matrix V diag(lambda) V* with complex Gaussian lambda.
Matrix random_normal_matrix(std::size_t n, RngStream& rng);

/// n positive values sorted descending with pairwise gaps bounded away
/// from zero (slotted sampling keeps the separation deterministic).
std::vector<double> distinct_positive_values(std::size_t n, RngStream& rng);

/// Random normal matrix whose eigenvalue moduli are distinct with a
/// guaranteed margin, so (x x*)^(1/2) has well separated eigenvalues.
Matrix random_normal_distinct_moduli(std::size_t n, RngStream& rng);

}  // namespace blocknorm
