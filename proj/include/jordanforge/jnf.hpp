#pragma once

// Approximate Jordan normal form A ~ V_hat J_hat V_hat^{-1} of an exact
// Gaussian-integer matrix, assembled from the exact Frobenius form, certified
// eigenvalues and a rounded confluent Vandermonde similarity per companion block.

#include "jordanforge/frobenius.hpp"
#include "jordanforge/linalg.hpp"
#include "jordanforge/matrix.hpp"
#include "jordanforge/rootfinder.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace jforge {

struct JordanBlockSpec {
    DyadicComplex eigenvalue;  // numerator scale 2^exp; divide by ApproxJNF::eigen_den
    std::size_t size = 1;
    std::size_t source_block = 0;  // index into the Frobenius blocks
};

struct JnfDiagnostics {
    std::optional<KappaEnclosure> kappa_V;
    std::optional<Rational> residual_max_sq;  // ||A V - V J||_max^2
};

struct ApproxJNF {
    std::vector<JordanBlockSpec> blocks;
    DyadicMatrix V_hat;  // exponent working_bits
    std::uint64_t accuracy_bits = 0;
    std::uint64_t working_bits = 0;
    /// Eigenvalues are eigenvalue / eigen_den; 1 except for jnf_rational.
    BigInt eigen_den{1};
    JnfDiagnostics diagnostics;

    std::size_t dim() const { return V_hat.rows(); }
    GaussRat eigenvalue(std::size_t block) const;
    /// eigen_den * J_hat as a dyadic matrix with exponent working_bits.
    DyadicMatrix scaled_J() const;
    /// First column of Jordan block i.
    std::size_t offset(std::size_t i) const;
};

struct JnfOptions {
    /// C in b' = b + C a n^3 ceil(log2(n+1)).
    std::uint64_t bprime_constant = 8;
};

std::uint64_t working_precision(std::uint64_t b, std::size_t a, std::size_t n, std::uint64_t constant);

/// lambda^1 .. lambda^r, each power rounded to b_prime bits from the previous one.
std::vector<DyadicComplex> approx_powers(const DyadicComplex& lambda, std::size_t r, std::uint64_t b_prime);

/// Confluent Vandermonde similarity of the row companion of block.poly
/// (ones on the superdiagonal): entry (r, c) of the part for a root of
/// multiplicity m is binom(r, c) lambda^(r-c), c < m.
struct BrandResult {
    DyadicMatrix W_hat;
    std::vector<JordanBlockSpec> jordan_blocks;
};
BrandResult brand_similarity(const CompanionBlock& block, const std::vector<RootCluster>& clusters, std::uint64_t b_prime);

/// Unimodular Hankel matrix S with C_col(p) S = S C_row(p), where C_col is
/// the Frobenius companion and C_row its transpose orientation.
IntMatrix symmetrizer(const IntPoly& p);

ApproxJNF jnf(const IntMatrix& a, std::uint64_t b, const JnfOptions& opts = {});
/// Approximate JNF of a / q with b bits of accuracy.
ApproxJNF jnf_rational(const IntMatrix& a, const BigInt& q, std::uint64_t b, const JnfOptions& opts = {});

/// Jordan blocks sorted by eigenvalue (real, then imaginary part), larger
/// blocks first among equal eigenvalues, then by source block.
bool block_order(const JordanBlockSpec& x, const JordanBlockSpec& y);

}  // namespace jforge
