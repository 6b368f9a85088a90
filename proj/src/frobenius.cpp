#include "jordanforge/frobenius.hpp"

#include "jordanforge/linalg.hpp"

namespace jforge {

namespace {

using Vec = std::vector<GaussRat>;

Vec unit_vector(std::size_t n, std::size_t i) {
    Vec e(n, GaussRat(0));
    e[i] = GaussRat(1);
    return e;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// h(M) v by Horner.
Vec apply_poly(const QiMatrix& m, const QiPoly& h, const Vec& v) {
    Vec acc(v.size(), GaussRat(0));
    for (std::size_t k = h.c.size(); k-- > 0;) {
        acc = m * acc;
        if (!h.c[k].is_zero())
            for (std::size_t i = 0; i < v.size(); ++i) acc[i] = acc[i] + h.c[k] * v[i];
    }
    return acc;
}

// Krylov columns v, Mv, ..., M^{k-1} v.
QiMatrix krylov(const QiMatrix& m, Vec v, std::size_t k) {
    QiMatrix out(v.size(), k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < v.size(); ++i) out(i, j) = v[i];
        if (j + 1 < k) v = m * v;
    }
    return out;
}

// A vector whose minimal polynomial is the minimal polynomial of m: combine
// unit vectors pairwise, splitting lcm(p, q) into coprime factors p' | p, q' | q.
std::pair<Vec, QiPoly> maximal_vector(const QiMatrix& m) {
    const std::size_t n = m.rows();
    Vec z = unit_vector(n, 0);
    QiPoly p = minimal_polynomial(m, z);
    for (std::size_t i = 1; i < n && static_cast<std::size_t>(p.degree()) < n; ++i) {
        Vec e = unit_vector(n, i);
        QiPoly q = minimal_polynomial(m, e);
        if (divmod(p, q).second.is_zero()) continue;
        QiPoly pp = p;
        QiPoly qq = divexact(q, gcd(p, q));
        for (QiPoly g = gcd(pp, qq); g.degree() >= 1; g = gcd(pp, qq)) {
            pp = divexact(pp, g);
            qq = qq * g;
        }
        z = add(apply_poly(m, divexact(p, pp), z), apply_poly(m, divexact(q, qq), e));
        p = monic(pp * qq);
    }
    return {z, p};
}

// Gaussian-integer primitive multiple of a vector over Q(i).
std::vector<GaussInt> integral_multiple(const Vec& v) {
    BigInt den = 1;
    for (const auto& z : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), denominator(z).get_mpz_t());
    std::vector<GaussInt> out;
    BigInt g = 0;
    for (const auto& z : v) {
        Rational re = z.re * den;
        Rational im = z.im * den;
        out.emplace_back(re.get_num(), im.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), re.get_num_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), im.get_num_mpz_t());
    }
    if (g > 1)
        for (auto& z : out) z = divexact(z, g);
    return out;
}

IntPoly integral_monic(const QiPoly& p) {
    std::vector<GaussInt> c;
    for (const auto& z : p.c) {
        if (denominator(z) != 1) throw InternalError("invariant factor with non-integral coefficient");
        c.emplace_back(z.re.get_num(), z.im.get_num());
    }
    return IntPoly(std::move(c));
}

}  // namespace

QiPoly minimal_polynomial(const QiMatrix& m, const Vec& v) {
    const std::size_t n = m.rows();
    bool nonzero = false;
    for (const auto& z : v) nonzero = nonzero || !z.is_zero();
    if (!nonzero) return QiPoly::constant(GaussRat(1));
    std::vector<Vec> powers{v};
    for (std::size_t k = 1; k <= n; ++k) {
        Vec next = m * powers.back();
        QiMatrix basis(n, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) basis(i, j) = powers[j][i];
        if (auto c = solve(basis, next)) {
            std::vector<GaussRat> coeffs(k + 1);
            for (std::size_t j = 0; j < k; ++j) coeffs[j] = -(*c)[j];
            coeffs[k] = GaussRat(1);
            return QiPoly(std::move(coeffs));
        }
        powers.push_back(std::move(next));
    }
    throw InternalError("minimal_polynomial: Krylov sequence did not terminate");
}

IntMatrix companion_realize(const IntPoly& p) {
    if (p.degree() < 1 || !(p.lead() == GaussInt(1))) throw PreconditionError("companion_realize needs a monic polynomial of degree >= 1");
    const auto n = static_cast<std::size_t>(p.degree());
    IntMatrix c(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) c(i + 1, i) = GaussInt(1);
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.c[i];
    return c;
}

IntMatrix FrobeniusDecomposition::F() const {
    std::vector<IntMatrix> parts;
    for (const auto& b : blocks) parts.push_back(companion_realize(b.poly));
    return direct_sum(parts);
}

std::size_t FrobeniusDecomposition::offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < i; ++k) off += blocks[k].dim();
    return off;
}

FrobeniusDecomposition frobenius_form(const IntMatrix& a) {
    if (!a.square()) throw DimensionMismatch("frobenius_form of a non-square matrix");
    const std::size_t n = a.rows();
    QiMatrix m = to_qi(a);
    QiMatrix basis = to_qi(IntMatrix::identity(n));  // columns span the current invariant subspace
    std::vector<std::pair<IntPoly, IntMatrix>> found;
    while (m.rows() > 0) {
        auto [v, p] = maximal_vector(m);
        const auto k = static_cast<std::size_t>(p.degree());

        // Krylov block of the original matrix on the lifted vector.
        auto u = integral_multiple(basis * v);
        IntMatrix kb(n, k);
        for (std::size_t i = 0; i < n; ++i) kb(i, 0) = u[i];
        for (std::size_t j = 1; j < k; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                GaussInt s;
                for (std::size_t l = 0; l < n; ++l)
                    if (!a(i, l).is_zero()) s += a(i, l) * kb(l, j - 1);
                kb(i, j) = s;
            }
        }
        found.emplace_back(integral_monic(p), std::move(kb));
        if (k == m.rows()) break;

        // Invariant complement: kernel of R = [f; fM; ...; fM^{k-1}] where
        // f vanishes on v, ..., M^{k-2} v and is one on M^{k-1} v.
        QiMatrix kv = krylov(m, v, k);
        auto f = solve(kv.transpose(), unit_vector(k, k - 1));
        if (!f) throw InternalError("frobenius_form: Krylov block lost rank");
        QiMatrix r(k, m.rows());
        Vec row = *f;
        QiMatrix mt = m.transpose();
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < m.rows(); ++i) r(j, i) = row[i];
            row = mt * row;
        }
        QiMatrix nb = nullspace(r);
        std::vector<std::size_t> piv;
        rref(r, piv);
        std::vector<bool> is_pivot(m.rows(), false);
        for (auto c : piv) is_pivot[c] = true;
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < m.rows(); ++c)
            if (!is_pivot[c]) free.push_back(c);
        QiMatrix mn = m * nb;
        QiMatrix restricted(free.size(), free.size());
        for (std::size_t i = 0; i < free.size(); ++i)
            for (std::size_t j = 0; j < free.size(); ++j) restricted(i, j) = mn(free[i], j);
        basis = basis * nb;
        m = std::move(restricted);
    }

    FrobeniusDecomposition out;
    IntMatrix u(n, n);
    std::size_t col = 0;
    for (auto it = found.rbegin(); it != found.rend(); ++it) {
        u.set_block(0, col, it->second);
        col += it->second.cols();
        out.blocks.push_back({it->first});
    }
    out.U = RatMatrix(std::move(u));
    out.U_inv = exact_inverse(out.U);
    return out;
}

}  // namespace jforge
