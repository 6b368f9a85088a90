#pragma once

// Exact Frobenius (rational canonical) form A = U F U^{-1}, computed with a
// deterministic maximal-vector construction over Q(i).

#include "jordanforge/matrix.hpp"
#include "jordanforge/poly.hpp"

#include <vector>

namespace jforge {

struct CompanionBlock {
    IntPoly poly;  // monic
    std::size_t dim() const { return static_cast<std::size_t>(poly.degree()); }
};

struct FrobeniusDecomposition {
    RatMatrix U;
    RatMatrix U_inv;
    /// Invariant factors in increasing degree order; each divides the next.
    std::vector<CompanionBlock> blocks;

    /// F = direct sum of the companion blocks.
    IntMatrix F() const;
    /// First column of U belonging to block i.
    std::size_t offset(std::size_t i) const;
};

/// Companion matrix with ones on the subdiagonal and -p_0..-p_{n-1} in the
/// last column, so that det(xI - C) = p.
IntMatrix companion_realize(const IntPoly& p);

FrobeniusDecomposition frobenius_form(const IntMatrix& a);

/// Minimal polynomial of v under m (monic, over Q(i)).
QiPoly minimal_polynomial(const QiMatrix& m, const std::vector<GaussRat>& v);

}  // namespace jforge
