#pragma once

// Certified roots with exact multiplicities for polynomials over Z[i].
//
// Multiplicities come from an exact squarefree decomposition; each
// squarefree factor is solved by Aberth iteration in MPFR and every
// approximation is certified with exact dyadic arithmetic (disjoint
// Weierstrass inclusion disks of radius below 2^-(b'+2)).

#include "jordanforge/poly.hpp"
#include "jordanforge/scalars.hpp"

#include <cstdint>
#include <vector>

namespace jforge {

struct RootCluster {
    DyadicComplex value;  // exponent b'
    std::size_t multiplicity = 1;
};

/// ceil(k * n * log2 n), computed exactly.
std::uint64_t ceil_k_n_log2_n(std::uint64_t k, std::uint64_t n);

/// Smallest admissible working precision a*n + ceil(4 n log2 n).
std::uint64_t min_root_bits(const IntPoly& p);

/// 2^-(a n + ceil(2 n log2 n)). Polynomials with non-real coefficients are
/// measured through p * conj(p), which has integer coefficients and
/// contains every root of p.
Rational mahler_mingap_bound(const IntPoly& p);

/// sum (|Re c_k| + |Im c_k|) / max(|Re lead|, |Im lead|), an upper bound on |z|.
Rational root_bound(const IntPoly& p);

/// Distinct roots of a squarefree polynomial, each rounded to exponent
/// b_prime and within 2^-b_prime of its root. Real polynomials yield
/// exactly real roots and exactly conjugate pairs. Sorted canonically.
std::vector<DyadicComplex> isolate_squarefree_roots(const IntPoly& f, std::uint64_t b_prime);

/// Root clusters: one entry per distinct root with its exact
/// multiplicity. Throws PreconditionError when b_prime < min_root_bits(p).
std::vector<RootCluster> approx_roots_with_mults(const IntPoly& p, std::uint64_t b_prime);

/// Canonical order on complex values: real part, then imaginary part.
bool canonical_less(const DyadicComplex& x, const DyadicComplex& y);

}  // namespace jforge
