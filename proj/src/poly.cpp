#include "jordanforge/poly.hpp"

#include <ostream>

namespace jforge {

QiPoly to_qi(const IntPoly& p) {
    std::vector<GaussRat> v;
    v.reserve(p.c.size());
    for (const auto& z : p.c) v.emplace_back(z);
    return QiPoly(std::move(v));
}

IntPoly primitive_part(const QiPoly& p) {
    BigInt den = 1;
    for (const auto& z : p.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), denominator(z).get_mpz_t());
    std::vector<GaussInt> v;
    v.reserve(p.c.size());
    BigInt g = 0;
    for (const auto& z : p.c) {
        Rational re = z.re * den;
        Rational im = z.im * den;
        v.emplace_back(re.get_num(), im.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), re.get_num_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), im.get_num_mpz_t());
    }
    if (g > 1)
        for (auto& z : v) z = divexact(z, g);
    return IntPoly(std::move(v));
}

RatPoly to_real(const IntPoly& p) {
    std::vector<Rational> v;
    v.reserve(p.c.size());
    for (const auto& z : p.c) {
        if (!z.is_real()) throw PreconditionError("to_real: polynomial has a non-real coefficient");
        v.emplace_back(z.re);
    }
    return RatPoly(std::move(v));
}

std::vector<std::pair<QiPoly, std::size_t>> squarefree_decomposition(const QiPoly& p) {
    std::vector<std::pair<QiPoly, std::size_t>> out;
    if (p.degree() < 1) return out;
    QiPoly f = monic(p);
    QiPoly df = derivative(f);
    QiPoly a = gcd(f, df);
    QiPoly b = divexact(f, a);
    QiPoly c = divexact(df, a);
    QiPoly d = c - derivative(b);
    for (std::size_t k = 1; b.degree() >= 1; ++k) {
        QiPoly g = gcd(b, d);
        if (g.degree() >= 1) out.emplace_back(g, k);
        b = divexact(b, g);
        c = divexact(d, g);
        d = c - derivative(b);
    }
    return out;
}

std::vector<QiPoly> gcd_free_basis(const std::vector<QiPoly>& polys) {
    std::vector<QiPoly> basis;
    for (const auto& p : polys) {
        for (auto& [f0, mult] : squarefree_decomposition(p)) {
            (void)mult;
            QiPoly f = f0;
            std::vector<QiPoly> next;
            for (auto& b : basis) {
                if (f.degree() < 1) {
                    next.push_back(std::move(b));
                    continue;
                }
                QiPoly g = gcd(f, b);
                if (g.degree() < 1) {
                    next.push_back(std::move(b));
                    continue;
                }
                QiPoly rest = monic(divexact(b, g));
                if (rest.degree() >= 1) next.push_back(std::move(rest));
                f = monic(divexact(f, g));
                next.push_back(std::move(g));
            }
            if (f.degree() >= 1) next.push_back(std::move(f));
            basis = std::move(next);
        }
    }
    return basis;
}

std::size_t sign_variations(const RatPoly& p) {
    std::size_t v = 0;
    int last = 0;
    for (const auto& x : p.c) {
        int s = sgn(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

std::size_t count_roots_at_most(const RatPoly& p, const Rational& t) {
    if (p.is_zero()) throw PreconditionError("count_roots_at_most of the zero polynomial");
    RatPoly s = taylor_shift(p, t);
    std::size_t k = 0;
    while (k < s.c.size() && sgn(s.c[k]) == 0) ++k;
    RatPoly stripped(std::vector<Rational>(s.c.begin() + static_cast<long>(k), s.c.end()));
    return static_cast<std::size_t>(p.degree()) - sign_variations(stripped);
}

std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t k = p.c.size(); k-- > 0;) {
        if (p.c[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << p.c[k] << ")";
        if (k > 0) os << "x^" << k;
    }
    return os;
}

}  // namespace jforge
