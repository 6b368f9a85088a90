#pragma once

// Reference computations for the acceptance suite. They share only the
// scalar and matrix containers with the library; every algorithm here is a
// separate, deliberately simple implementation.

#include "jordanforge/matrix.hpp"
#include "jordanforge/poly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace jforge::oracle {

/// Axis-aligned complex box with rational corners.
struct Box {
    Interval re;
    Interval im;
};

Box point(const GaussRat& z);

/// Interval Newton on x^2 - k from [1, k] (k > 1 not a square) until the
/// width is below 2^-bits. Endpoints are rounded outward to dyadics.
Interval newton_sqrt(const Rational& k, std::uint64_t bits);

/// Largest squared distance from z to a point of the box.
Rational far_distance_sq(const DyadicComplex& z, const Box& b);
/// Smallest squared distance between two boxes.
Rational gap_sq(const Box& a, const Box& b);

/// A real integer polynomial with known roots.
struct ConstructedRoot {
    Box box;
    std::size_t multiplicity = 1;
    std::string label;
};
struct ConstructedPoly {
    IntPoly poly;
    std::vector<ConstructedRoot> roots;
};
/// Product of 2-4 distinct factors (q x - p), x^2 - k, x^2 - 2ux + u^2 + v^2,
/// x^2 - 2ux + u^2 + k, each raised to a power in 1..3.
ConstructedPoly constructed_poly(std::mt19937_64& rng, std::uint64_t enclosure_bits);

/// Sum_{i+j=k} Q_i^* Q_j for all k.
std::vector<RatMatrix> star_product(const std::vector<RatMatrix>& q);

/// det(t I - H) by the Faddeev-LeVerrier recurrence; c[k] multiplies t^k.
std::vector<GaussRat> faddeev_leverrier(const QiMatrix& h);
/// Number of negative eigenvalues of a Hermitian matrix, from the sign
/// pattern of its real-rooted characteristic polynomial.
std::size_t negative_inertia(const RatMatrix& h);

/// ||(A/q) V - V J||_max^2 straight from the definition.
Rational jnf_residual_sq(const IntMatrix& a, const RatMatrix& v, const RatMatrix& j, const BigInt& q = 1);

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi);
/// L U with unit diagonals and entries in {-1, 0, 1}; det = 1.
IntMatrix unimodular(std::mt19937_64& rng, std::size_t n);
/// Direct sum of Jordan blocks J_size(lambda).
IntMatrix jordan_matrix(const std::vector<std::pair<long, std::size_t>>& blocks);
/// S T S^-1 with T upper triangular, diagonal in the open upper half plane,
/// and all entries of the result at most max_bits bits.
IntMatrix upper_half_plane_matrix(std::mt19937_64& rng, std::size_t n, std::size_t max_bits);
/// Coefficients (low to high) of (x I - A_1) ... (x I - A_d).
std::vector<RatMatrix> monic_product(const std::vector<IntMatrix>& factors);

}  // namespace jforge::oracle
