#pragma once

// Data-parallel inner loops over big-integer matrices. Every kernel has a
// serial reference twin; the parallel versions split independent rows or
// entries across OpenMP threads and produce bit-identical results.

#include "jordanforge/matrix.hpp"

#include <cstddef>

namespace jforge::kernels {

/// Worker thread count used by the dispatching entry points (default 1).
void set_threads(int n);
int threads();

IntMatrix matmul_serial(const IntMatrix& a, const IntMatrix& b);
IntMatrix matmul_parallel(const IntMatrix& a, const IntMatrix& b);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);

/// Upper-triangular form produced by fraction-free (Bareiss) elimination of
/// the first `pivot_cols` columns; trailing columns are carried along.
struct Elimination {
    IntMatrix m;
    std::size_t rank = 0;
    bool negate = false;  // odd number of row swaps
};

Elimination bareiss_serial(IntMatrix m, std::size_t pivot_cols);
Elimination bareiss_parallel(IntMatrix m, std::size_t pivot_cols);
Elimination bareiss(IntMatrix m, std::size_t pivot_cols);

/// Given a full-rank Bareiss form [U | B] of an n x n system, returns
/// d * U^{-1} B where d = U(n-1, n-1); all divisions are exact.
IntMatrix back_substitute_serial(const IntMatrix& ub, std::size_t n);
IntMatrix back_substitute_parallel(const IntMatrix& ub, std::size_t n);
IntMatrix back_substitute(const IntMatrix& ub, std::size_t n);

}  // namespace jforge::kernels
