#pragma once

// Exact linear algebra over Z[i] and Q(i): inversion, determinants,
// characteristic polynomials, row reduction, and certified norm and
// singular-value enclosures.

#include "jordanforge/matrix.hpp"
#include "jordanforge/poly.hpp"

#include <optional>
#include <vector>

namespace jforge {

GaussInt determinant(const IntMatrix& a);
/// A^{-1} with a common denominator, via fraction-free elimination.
RatMatrix exact_inverse(const IntMatrix& a);
RatMatrix exact_inverse(const RatMatrix& a);

/// det(xI - A). Companion matrices in the Frobenius orientation are read off
/// directly; everything else goes through the division-free Berkowitz recurrence.
IntPoly char_poly(const IntMatrix& a);

/// Reduced row echelon form over Q(i); `pivots` receives the pivot columns.
QiMatrix rref(QiMatrix m, std::vector<std::size_t>& pivots);
std::size_t rank(const QiMatrix& m);
/// Basis of {x : m x = 0}, one column per free variable, with an identity
/// pattern in the free coordinates.
QiMatrix nullspace(const QiMatrix& m);
/// Some solution of m x = b, or nothing if the system is inconsistent.
std::optional<std::vector<GaussRat>> solve(const QiMatrix& m, const std::vector<GaussRat>& b);

QiMatrix to_qi(const IntMatrix& m);
QiMatrix operator*(const QiMatrix& a, const QiMatrix& b);
std::vector<GaussRat> operator*(const QiMatrix& a, const std::vector<GaussRat>& v);

/// Enclosure of the max-entry norm max |m_ij|.
Interval max_norm(const RatMatrix& m);
/// lower <= ||M||_2 <= upper with lower = ||M||_max and upper = max(r,c) ||M||_max
/// (endpoints rounded outward when the max norm is irrational).
struct NormBounds {
    Rational lower;
    Rational upper;
};
NormBounds op_norm_bounds(const RatMatrix& m);

/// Certified enclosure of the j-th largest singular value of M (1-based),
/// for j <= cols(M). Uses the exact characteristic polynomial of M*M on a
/// truncated copy of M together with Weyl's inequality. The width is at
/// most 2^-target_bits * min(1, lower end), or the result is [0, eps] with
/// eps <= 2^-target_bits when the singular value is zero.
Interval singular_value(const RatMatrix& m, std::size_t j, std::uint64_t target_bits = 64);
/// sigma_min of a matrix with at least as many rows as columns.
Interval sigma_min_estimate(const RatMatrix& m, std::uint64_t target_bits = 64);
Interval sigma_min_estimate(const DyadicMatrix& m, std::uint64_t target_bits = 64);
Interval sigma_max_enclosure(const RatMatrix& m, std::uint64_t target_bits = 64);
/// kappa = sigma_max / sigma_min; hi is infinite (reported as nullopt upper) for singular input.
struct KappaEnclosure {
    Rational lo;
    std::optional<Rational> hi;
};
KappaEnclosure kappa_enclosure(const RatMatrix& m, std::uint64_t target_bits = 32);

}  // namespace jforge
