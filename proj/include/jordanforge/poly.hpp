#pragma once

// Dense univariate polynomials. Coefficients are stored in increasing
// degree order and kept trimmed, so the zero polynomial has no coefficients.

#include "jordanforge/errors.hpp"
#include "jordanforge/scalars.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace jforge {

inline bool is_zero_scalar(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero_scalar(const BigInt& x) { return sgn(x) == 0; }
inline bool is_zero_scalar(const GaussInt& x) { return x.is_zero(); }
inline bool is_zero_scalar(const GaussRat& x) { return x.is_zero(); }

template <class T>
struct Poly {
    std::vector<T> c;  // c[k] multiplies x^k

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly monomial(T coef, std::size_t k) {
        std::vector<T> v(k + 1);
        v[k] = std::move(coef);
        return Poly(std::move(v));
    }
    static Poly constant(T coef) { return Poly(std::vector<T>{std::move(coef)}); }

    void trim() {
        while (!c.empty() && is_zero_scalar(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const T& lead() const {
        if (c.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
        return c.back();
    }
    T coeff(std::size_t k) const { return k < c.size() ? c[k] : T(0); }
    bool operator==(const Poly& o) const { return c == o.c; }
};

using IntPoly = Poly<GaussInt>;
using QiPoly = Poly<GaussRat>;
using RatPoly = Poly<Rational>;

template <class T>
Poly<T> operator+(const Poly<T>& p, const Poly<T>& q) {
    std::vector<T> r(std::max(p.c.size(), q.c.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = p.coeff(k) + q.coeff(k);
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator-(const Poly<T>& p, const Poly<T>& q) {
    std::vector<T> r(std::max(p.c.size(), q.c.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = p.coeff(k) - q.coeff(k);
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator*(const Poly<T>& p, const Poly<T>& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<T> r(p.c.size() + q.c.size() - 1, T(0));
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (is_zero_scalar(p.c[i])) continue;
        for (std::size_t j = 0; j < q.c.size(); ++j) r[i + j] = r[i + j] + p.c[i] * q.c[j];
    }
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> scale(const Poly<T>& p, const T& k) {
    std::vector<T> r(p.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = p.c[i] * k;
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> derivative(const Poly<T>& p) {
    if (p.c.size() <= 1) return {};
    std::vector<T> r(p.c.size() - 1);
    for (std::size_t k = 1; k < p.c.size(); ++k) r[k - 1] = p.c[k] * T(static_cast<long>(k));
    return Poly<T>(std::move(r));
}

/// Horner evaluation; X must absorb T by multiplication and addition.
template <class T, class X>
X eval(const Poly<T>& p, const X& x) {
    X acc(0);
    for (std::size_t k = p.c.size(); k-- > 0;) acc = acc * x + X(p.c[k]);
    return acc;
}

/// Quotient and remainder over a field (T = Rational or GaussRat).
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly<T>(), a};
    std::vector<T> rem = a.c;
    std::vector<T> quo(a.c.size() - b.c.size() + 1, T(0));
    const T& lb = b.lead();
    for (std::size_t k = quo.size(); k-- > 0;) {
        T f = rem[k + b.c.size() - 1] / lb;
        quo[k] = f;
        if (is_zero_scalar(f)) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) rem[k + j] = rem[k + j] - f * b.c[j];
    }
    rem.resize(b.c.size() - 1);
    return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

template <class T>
Poly<T> monic(const Poly<T>& p) {
    if (p.is_zero()) return p;
    T inv = T(1) / p.lead();
    return scale(p, inv);
}

/// Monic gcd over a field; gcd(0, 0) = 0.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Exact quotient a / b; throws if b does not divide a.
template <class T>
Poly<T> divexact(const Poly<T>& a, const Poly<T>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InternalError("polynomial division left a remainder");
    return q;
}

template <class T>
Poly<T> lcm(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return monic(divexact(a * b, gcd(a, b)));
}

/// p(x + t).
template <class T>
Poly<T> taylor_shift(const Poly<T>& p, const T& t) {
    std::vector<T> a = p.c;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) a[j - 1] = a[j - 1] + t * a[j];
    return Poly<T>(std::move(a));
}

QiPoly to_qi(const IntPoly& p);
/// Clears denominators and the integer content; the result is a Gaussian
/// integer multiple of p with coprime integer parts.
IntPoly primitive_part(const QiPoly& p);
/// Real part view of a polynomial with zero imaginary parts.
RatPoly to_real(const IntPoly& p);

/// Squarefree factorization p = c * prod f_k^k (Yun); returns the nonconstant
/// monic f_k with their multiplicities k.
std::vector<std::pair<QiPoly, std::size_t>> squarefree_decomposition(const QiPoly& p);

/// Pairwise coprime squarefree monic polynomials whose products generate
/// every input: each input equals (up to a constant) a product of powers of
/// basis elements.
std::vector<QiPoly> gcd_free_basis(const std::vector<QiPoly>& polys);

/// Sign changes in the coefficient sequence, zeros skipped.
std::size_t sign_variations(const RatPoly& p);

/// For p with only real roots: the number of roots <= t counted with
/// multiplicity (Descartes' rule is exact for real-rooted polynomials).
std::size_t count_roots_at_most(const RatPoly& p, const Rational& t);

std::ostream& operator<<(std::ostream& os, const IntPoly& p);

}  // namespace jforge
