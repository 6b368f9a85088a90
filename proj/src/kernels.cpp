#include "jordanforge/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jforge::kernels {

namespace {

std::atomic<int> g_threads{1};

// sum_k a(i,k) * b(k,j) with fused multiply-adds on the limbs.
GaussInt dot_entry(const IntMatrix& a, const IntMatrix& b, std::size_t i, std::size_t j) {
    GaussInt acc;
    for (std::size_t k = 0; k < a.cols(); ++k) {
        const GaussInt& x = a(i, k);
        const GaussInt& y = b(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        mpz_addmul(acc.re.get_mpz_t(), x.re.get_mpz_t(), y.re.get_mpz_t());
        if (!x.is_real() || !y.is_real()) {
            mpz_submul(acc.re.get_mpz_t(), x.im.get_mpz_t(), y.im.get_mpz_t());
            mpz_addmul(acc.im.get_mpz_t(), x.re.get_mpz_t(), y.im.get_mpz_t());
            mpz_addmul(acc.im.get_mpz_t(), x.im.get_mpz_t(), y.re.get_mpz_t());
        }
    }
    return acc;
}

void check_conformable(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

// Row i of the Bareiss update for pivot (r, k):
//   m(i,j) <- (m(r,k) m(i,j) - m(i,k) m(r,j)) / prev,  j > k.
void bareiss_row(IntMatrix& m, std::size_t r, std::size_t k, std::size_t i, const GaussInt& prev) {
    const GaussInt& piv = m(r, k);
    GaussInt lead = m(i, k);
    if (lead.is_zero()) {
        if (!(prev == piv)) {
            for (std::size_t j = k + 1; j < m.cols(); ++j) {
                if (!m(i, j).is_zero()) m(i, j) = divexact(piv * m(i, j), prev);
            }
        }
        return;
    }
    for (std::size_t j = k + 1; j < m.cols(); ++j) {
        GaussInt t = piv * m(i, j) - lead * m(r, j);
        m(i, j) = divexact(t, prev);
    }
    m(i, k) = GaussInt(0);
}

// Pivot search and swap for column k starting at row r; false if the
// column has no nonzero entry at or below r.
bool select_pivot(IntMatrix& m, std::size_t r, std::size_t k, bool& negate) {
    for (std::size_t p = r; p < m.rows(); ++p) {
        if (!m(p, k).is_zero()) {
            if (p != r) {
                m.swap_rows(p, r);
                negate = !negate;
            }
            return true;
        }
    }
    return false;
}

GaussInt back_entry(const IntMatrix& ub, std::size_t n, std::size_t c, std::size_t i, const std::vector<GaussInt>& x,
                    const GaussInt& d) {
    GaussInt acc = d * ub(i, n + c);
    for (std::size_t j = i + 1; j < n; ++j) {
        if (!ub(i, j).is_zero()) acc -= ub(i, j) * x[j];
    }
    return divexact(acc, ub(i, i));
}

void back_column(const IntMatrix& ub, std::size_t n, std::size_t c, IntMatrix& out) {
    const GaussInt& d = ub(n - 1, n - 1);
    std::vector<GaussInt> x(n);
    for (std::size_t ii = n; ii-- > 0;) x[ii] = back_entry(ub, n, c, ii, x, d);
    for (std::size_t ii = 0; ii < n; ++ii) out(ii, c) = std::move(x[ii]);
}

void check_triangular_form(const IntMatrix& ub, std::size_t n) {
    if (ub.rows() != n || ub.cols() < n) throw DimensionMismatch("back_substitute: expected n x (n+m) input");
    for (std::size_t i = 0; i < n; ++i)
        if (ub(i, i).is_zero()) throw SingularMatrix("back_substitute: zero pivot");
}

}  // namespace

void set_threads(int n) { g_threads.store(n < 1 ? 1 : n); }
int threads() { return g_threads.load(); }

IntMatrix matmul_serial(const IntMatrix& a, const IntMatrix& b) {
    check_conformable(a, b);
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = dot_entry(a, b, i, j);
    return c;
}

IntMatrix matmul_parallel(const IntMatrix& a, const IntMatrix& b) {
    check_conformable(a, b);
    IntMatrix c(a.rows(), b.cols());
    const auto total = static_cast<long>(a.rows() * b.cols());
    const std::size_t nc = b.cols();
#pragma omp parallel for schedule(dynamic) num_threads(threads())
    for (long t = 0; t < total; ++t) {
        auto i = static_cast<std::size_t>(t) / nc;
        auto j = static_cast<std::size_t>(t) % nc;
        c(i, j) = dot_entry(a, b, i, j);
    }
    return c;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    return threads() > 1 ? matmul_parallel(a, b) : matmul_serial(a, b);
}

Elimination bareiss_serial(IntMatrix m, std::size_t pivot_cols) {
    Elimination out;
    GaussInt prev(1);
    std::size_t r = 0;
    for (std::size_t k = 0; k < pivot_cols && r < m.rows(); ++k) {
        if (!select_pivot(m, r, k, out.negate)) continue;
        for (std::size_t i = r + 1; i < m.rows(); ++i) bareiss_row(m, r, k, i, prev);
        prev = m(r, k);
        ++r;
    }
    out.rank = r;
    out.m = std::move(m);
    return out;
}

Elimination bareiss_parallel(IntMatrix m, std::size_t pivot_cols) {
    Elimination out;
    GaussInt prev(1);
    std::size_t r = 0;
    for (std::size_t k = 0; k < pivot_cols && r < m.rows(); ++k) {
        if (!select_pivot(m, r, k, out.negate)) continue;
        const auto first = static_cast<long>(r + 1);
        const auto last = static_cast<long>(m.rows());
#pragma omp parallel for schedule(dynamic) num_threads(threads())
        for (long i = first; i < last; ++i) bareiss_row(m, r, k, static_cast<std::size_t>(i), prev);
        prev = m(r, k);
        ++r;
    }
    out.rank = r;
    out.m = std::move(m);
    return out;
}

Elimination bareiss(IntMatrix m, std::size_t pivot_cols) {
    return threads() > 1 ? bareiss_parallel(std::move(m), pivot_cols) : bareiss_serial(std::move(m), pivot_cols);
}

IntMatrix back_substitute_serial(const IntMatrix& ub, std::size_t n) {
    check_triangular_form(ub, n);
    IntMatrix out(n, ub.cols() - n);
    for (std::size_t c = 0; c < out.cols(); ++c) back_column(ub, n, c, out);
    return out;
}

IntMatrix back_substitute_parallel(const IntMatrix& ub, std::size_t n) {
    check_triangular_form(ub, n);
    IntMatrix out(n, ub.cols() - n);
    const auto m = static_cast<long>(out.cols());
#pragma omp parallel for schedule(dynamic) num_threads(threads())
    for (long c = 0; c < m; ++c) back_column(ub, n, static_cast<std::size_t>(c), out);
    return out;
}

IntMatrix back_substitute(const IntMatrix& ub, std::size_t n) {
    return threads() > 1 ? back_substitute_parallel(ub, n) : back_substitute_serial(ub, n);
}

}  // namespace jforge::kernels
