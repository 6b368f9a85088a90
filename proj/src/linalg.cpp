#include "jordanforge/linalg.hpp"

#include "jordanforge/kernels.hpp"

#include <algorithm>

namespace jforge {

namespace {

IntMatrix augment_identity(const IntMatrix& a) {
    IntMatrix m(a.rows(), 2 * a.cols());
    m.set_block(0, 0, a);
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, a.cols() + i) = GaussInt(1);
    return m;
}

// Ones on the subdiagonal, the negated coefficients in the last column.
bool is_frobenius_companion(const IntMatrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) {
            GaussInt want(i == j + 1 ? 1 : 0);
            if (!(a(i, j) == want)) return false;
        }
    return true;
}

}  // namespace

GaussInt determinant(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("determinant of a non-square matrix");
    if (a.rows() == 0) return GaussInt(1);
    auto e = kernels::bareiss(a, a.cols());
    if (e.rank < a.rows()) return GaussInt(0);
    GaussInt d = e.m(a.rows() - 1, a.cols() - 1);
    return e.negate ? -d : d;
}

RatMatrix exact_inverse(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return RatMatrix(IntMatrix());
    auto e = kernels::bareiss(augment_identity(a), n);
    if (e.rank < n) throw SingularMatrix("exact_inverse: matrix is singular");
    IntMatrix x = kernels::back_substitute(e.m, n);  // d * A^{-1}
    const GaussInt& d = e.m(n - 1, n - 1);
    if (d.is_real()) return RatMatrix(std::move(x), d.re);
    return RatMatrix(scale(x, conj(d)), norm(d));
}

RatMatrix exact_inverse(const RatMatrix& a) {
    RatMatrix inv = exact_inverse(a.num);
    return RatMatrix(scale(inv.num, GaussInt(a.den)), inv.den);
}

IntPoly char_poly(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("char_poly of a non-square matrix");
    const std::size_t n = a.rows();
    if (n > 0 && is_frobenius_companion(a)) {
        std::vector<GaussInt> c(n + 1);
        for (std::size_t i = 0; i < n; ++i) c[i] = -a(i, n - 1);
        c[n] = GaussInt(1);
        return IntPoly(std::move(c));
    }
    // Berkowitz: p_{r+1} = T_r p_r with the Toeplitz column
    // (1, -a_rr, -R S, -R A_r S, ..., -R A_r^{r-1} S); coefficients highest first.
    std::vector<GaussInt> p{GaussInt(1)};
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<GaussInt> col{GaussInt(1), -a(r, r)};
        std::vector<GaussInt> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            GaussInt dot;
            for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * v[i];
            col.push_back(-dot);
            if (k + 1 < r) {
                std::vector<GaussInt> w(r);
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j)
                        if (!a(i, j).is_zero() && !v[j].is_zero()) w[i] += a(i, j) * v[j];
                v = std::move(w);
            }
        }
        std::vector<GaussInt> q(r + 2);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j)
                if (i - j < col.size()) q[i] += col[i - j] * p[j];
        p = std::move(q);
    }
    std::reverse(p.begin(), p.end());
    return IntPoly(std::move(p));
}

QiMatrix rref(QiMatrix m, std::vector<std::size_t>& pivots) {
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t k = 0; k < m.cols() && r < m.rows(); ++k) {
        std::size_t p = r;
        while (p < m.rows() && m(p, k).is_zero()) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        GaussRat inv = GaussRat(1) / m(r, k);
        for (std::size_t j = k; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, k).is_zero()) continue;
            GaussRat f = m(i, k);
            for (std::size_t j = k; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(k);
        ++r;
    }
    return m;
}

std::size_t rank(const QiMatrix& m) {
    std::vector<std::size_t> piv;
    rref(m, piv);
    return piv.size();
}

QiMatrix nullspace(const QiMatrix& m) {
    std::vector<std::size_t> piv;
    QiMatrix r = rref(m, piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto k : piv) is_pivot[k] = true;
    std::vector<std::size_t> free;
    for (std::size_t k = 0; k < m.cols(); ++k)
        if (!is_pivot[k]) free.push_back(k);
    QiMatrix basis(m.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        basis(free[f], f) = GaussRat(1);
        for (std::size_t i = 0; i < piv.size(); ++i) basis(piv[i], f) = -r(i, free[f]);
    }
    return basis;
}

std::optional<std::vector<GaussRat>> solve(const QiMatrix& m, const std::vector<GaussRat>& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length");
    QiMatrix aug(m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
    std::vector<std::size_t> piv;
    QiMatrix r = rref(aug, piv);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<GaussRat> x(m.cols(), GaussRat(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, m.cols());
    return x;
}

QiMatrix to_qi(const IntMatrix& m) {
    QiMatrix q(m.rows(), m.cols());
    for (std::size_t t = 0; t < m.flat().size(); ++t) q.flat()[t] = GaussRat(m.flat()[t]);
    return q;
}

QiMatrix operator*(const QiMatrix& a, const QiMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("QiMatrix product");
    QiMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) c(i, j) = c(i, j) + a(i, k) * b(k, j);
        }
    return c;
}

std::vector<GaussRat> operator*(const QiMatrix& a, const std::vector<GaussRat>& v) {
    if (a.cols() != v.size()) throw DimensionMismatch("QiMatrix times vector");
    std::vector<GaussRat> r(a.rows(), GaussRat(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + a(i, j) * v[j];
    return r;
}

Interval max_norm(const RatMatrix& m) {
    if (is_real(m.num)) {
        BigInt best = 0;
        for (const auto& z : m.num.flat())
            if (abs(z.re) > best) best = abs(z.re);
        Rational v(best, m.den);
        v.canonicalize();
        return {v, v};
    }
    return sqrt_enclosure(max_abs_sq(m), 96);
}

NormBounds op_norm_bounds(const RatMatrix& m) {
    Interval mx = max_norm(m);
    return {mx.lo, mx.hi * static_cast<long>(std::max(m.rows(), m.cols()))};
}

namespace {

// mu with N(mu) >= k and N(t) < k just below it, where N counts the roots <= t
// of a polynomial whose roots are all real and nonnegative.
class RootBisector {
public:
    RootBisector(RatPoly chi, std::size_t k) : chi_(std::move(chi)), k_(k) {}

    bool count_ok(const Rational& t) const { return count_roots_at_most(chi_, t) >= k_; }

    /// Initial bracket (lo, hi]; returns false when the root is exactly zero.
    bool bracket(Rational& lo, Rational& hi) const {
        if (count_ok(Rational(0))) return false;
        std::size_t z = 0;
        while (sgn(chi_.c[z]) == 0) ++z;
        const Rational& h0 = chi_.c[z];
        const Rational& lead = chi_.lead();
        Rational mx = 0;
        for (std::size_t i = z + 1; i < chi_.c.size(); ++i) mx = std::max(mx, Rational(abs(chi_.c[i])));
        Rational upper = 1 + mx / abs(lead);
        Rational maxlow = 0;
        for (std::size_t i = z + 1; i < chi_.c.size(); ++i) maxlow = std::max(maxlow, Rational(abs(chi_.c[i])));
        Rational lower = abs(h0) / (abs(h0) + maxlow);
        std::int64_t elo = floor_log2(lower) - 1;
        std::int64_t ehi = floor_log2(upper) + 1;
        while (ehi - elo > 1) {
            std::int64_t mid = elo + (ehi - elo) / 2;
            if (count_ok(pow2q(mid))) ehi = mid;
            else elo = mid;
        }
        lo = pow2q(elo);
        hi = pow2q(ehi);
        return true;
    }

    void step(Rational& lo, Rational& hi) const {
        Rational mid = (lo + hi) / 2;
        if (count_ok(mid)) hi = mid;
        else lo = mid;
    }

private:
    RatPoly chi_;
    std::size_t k_;
};

std::uint64_t sqrt_bits(const Rational& x, std::uint64_t target) {
    std::int64_t lg = sgn(x) > 0 ? floor_log2(x) : 0;
    return target + 8 + static_cast<std::uint64_t>(std::max<std::int64_t>(0, lg / 2 + 1));
}

}  // namespace

Interval singular_value(const RatMatrix& m, std::size_t j, std::uint64_t target_bits) {
    const std::size_t c = m.cols();
    if (j < 1 || j > c) throw PreconditionError("singular_value: index out of range");
    if (c == 0) return {Rational(0), Rational(0)};
    const std::size_t k = c - j + 1;  // k-th smallest eigenvalue of M*M
    const std::size_t bits_n = max_bits(m.num);
    const Rational tol = pow2q(-static_cast<std::int64_t>(target_bits));
    const long dim = static_cast<long>(std::max(m.rows(), c));
    std::size_t keep = target_bits + 32;
    for (;;) {
        const std::size_t s = bits_n > keep ? bits_n - keep : 0;
        IntMatrix t = m.num;
        if (s > 0)
            for (auto& z : t.flat()) {
                mpz_fdiv_q_2exp(z.re.get_mpz_t(), z.re.get_mpz_t(), s);
                mpz_fdiv_q_2exp(z.im.get_mpz_t(), z.im.get_mpz_t(), s);
            }
        // ||M - 2^s T / den|| <= 2^s/den * ||E||_F with |E_ij| < sqrt(2).
        const Rational f = pow2q(static_cast<std::int64_t>(s)) / Rational(m.den);
        const Rational delta = s > 0 ? Rational(2 * dim) : Rational(0);
        RootBisector bis(to_real(char_poly(conj_transpose(t) * t)), k);
        Rational lo;
        Rational hi;
        Interval sig{Rational(0), Rational(0)};
        if (bis.bracket(lo, hi)) {
            for (;;) {
                Interval a = sqrt_enclosure(lo, sqrt_bits(lo * f * f, target_bits));
                Interval b = sqrt_enclosure(hi, sqrt_bits(hi * f * f, target_bits));
                sig = {a.lo, b.hi};
                Rational w = f * sig.width();
                Rational allowed = tol * std::min(Rational(1), Rational(f * sig.lo)) / 4;
                if (w <= allowed) break;
                bis.step(lo, hi);
            }
        }
        Rational lo_out = f * (sig.lo - delta);
        if (sgn(lo_out) < 0) lo_out = 0;
        Rational hi_out = f * (sig.hi + delta);
        Interval out{lo_out, hi_out};
        if (out.width() <= tol * std::min(Rational(1), out.lo) || s == 0) return out;
        keep *= 2;
    }
}

Interval sigma_min_estimate(const RatMatrix& m, std::uint64_t target_bits) {
    return singular_value(m, m.cols(), target_bits);
}

Interval sigma_min_estimate(const DyadicMatrix& m, std::uint64_t target_bits) {
    return sigma_min_estimate(m.to_rat(), target_bits);
}

Interval sigma_max_enclosure(const RatMatrix& m, std::uint64_t target_bits) {
    return singular_value(m, 1, target_bits);
}

KappaEnclosure kappa_enclosure(const RatMatrix& m, std::uint64_t target_bits) {
    Interval smax = sigma_max_enclosure(m, target_bits);
    Interval smin = sigma_min_estimate(m, target_bits);
    KappaEnclosure k;
    k.lo = sgn(smax.hi) == 0 ? Rational(0) : (sgn(smin.hi) == 0 ? smax.lo : smax.lo / smin.hi);
    if (sgn(smin.lo) > 0) k.hi = smax.hi / smin.lo;
    return k;
}

}  // namespace jforge
