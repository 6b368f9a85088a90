#include "jordanforge/scalars.hpp"

#include "jordanforge/errors.hpp"

#include <algorithm>
#include <ostream>

namespace jforge {

std::size_t bit_length(const BigInt& x) {
    if (sgn(x) == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

BitLength bit_length(const Rational& x) {
    return {bit_length(BigInt(x.get_num())), bit_length(BigInt(x.get_den()))};
}

BigInt pow2(std::uint64_t e) {
    BigInt r;
    mpz_setbit(r.get_mpz_t(), e);
    return r;
}

Rational pow2q(std::int64_t e) {
    if (e >= 0) return Rational(pow2(static_cast<std::uint64_t>(e)));
    return Rational(BigInt(1), pow2(static_cast<std::uint64_t>(-e)));
}

std::int64_t floor_log2(const Rational& x) {
    if (sgn(x) == 0) throw PreconditionError("floor_log2 of zero");
    BigInt p = abs(x.get_num());
    BigInt q = x.get_den();
    auto e = static_cast<std::int64_t>(bit_length(p)) - static_cast<std::int64_t>(bit_length(q));
    // p/q lies in (2^(e-1), 2^(e+1))
    BigInt lhs = p;
    BigInt rhs = q;
    if (e >= 0) {
        rhs <<= static_cast<mp_bitcnt_t>(e);
    } else {
        lhs <<= static_cast<mp_bitcnt_t>(-e);
    }
    return lhs >= rhs ? e : e - 1;
}

BigInt parse_bigint(const std::string& s) {
    BigInt r;
    if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
    return r;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_bigint(s));
    BigInt p = parse_bigint(s.substr(0, slash));
    BigInt q = parse_bigint(s.substr(slash + 1));
    if (sgn(q) == 0) throw ParseError("zero denominator: '" + s + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str(10);
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

// ---------------------------------------------------------------- Dyadic

Rational Dyadic::value() const {
    Rational r(num, pow2(exp));
    r.canonicalize();
    return r;
}

Dyadic Dyadic::canonical() const {
    if (sgn(num) == 0) return {BigInt(0), 0};
    auto tz = static_cast<std::uint64_t>(mpz_scan1(num.get_mpz_t(), 0));
    auto k = std::min(tz, exp);
    BigInt n;
    mpz_tdiv_q_2exp(n.get_mpz_t(), num.get_mpz_t(), k);
    return {n, exp - k};
}

Dyadic Dyadic::with_exp(std::uint64_t e) const {
    if (e < exp) throw PreconditionError("Dyadic::with_exp cannot lower the exponent");
    BigInt n = num;
    n <<= static_cast<mp_bitcnt_t>(e - exp);
    return {n, e};
}

Dyadic operator+(const Dyadic& x, const Dyadic& y) {
    auto e = std::max(x.exp, y.exp);
    return {x.with_exp(e).num + y.with_exp(e).num, e};
}

Dyadic operator-(const Dyadic& x, const Dyadic& y) {
    auto e = std::max(x.exp, y.exp);
    return {x.with_exp(e).num - y.with_exp(e).num, e};
}

Dyadic operator-(const Dyadic& x) { return {-x.num, x.exp}; }

Dyadic operator*(const Dyadic& x, const Dyadic& y) { return {x.num * y.num, x.exp + y.exp}; }

std::strong_ordering value_compare(const Dyadic& x, const Dyadic& y) {
    auto e = std::max(x.exp, y.exp);
    int c = cmp(x.with_exp(e).num, y.with_exp(e).num);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool value_equal(const Dyadic& x, const Dyadic& y) { return value_compare(x, y) == 0; }

BitLength bit_length(const Dyadic& x) {
    auto c = x.canonical();
    return {bit_length(c.num), static_cast<std::size_t>(c.exp) + 1};
}

BigInt round_div(const BigInt& x, const BigInt& d) {
    BigInt f;
    BigInt r;
    mpz_fdiv_qr(f.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    BigInt twice = r * 2;
    int side = cmp(twice, d);
    if (side > 0 || (side == 0 && mpz_odd_p(f.get_mpz_t()))) f += 1;
    return f;
}

GaussInt round_div(const GaussInt& x, const BigInt& d) { return {round_div(x.re, d), round_div(x.im, d)}; }

Dyadic round_c(const Rational& x, std::uint64_t c) {
    BigInt p = x.get_num();
    p <<= static_cast<mp_bitcnt_t>(c);
    return {round_div(p, x.get_den()), c};
}

// -------------------------------------------------------------- GaussInt

GaussInt operator+(const GaussInt& x, const GaussInt& y) { return {x.re + y.re, x.im + y.im}; }
GaussInt operator-(const GaussInt& x, const GaussInt& y) { return {x.re - y.re, x.im - y.im}; }
GaussInt operator-(const GaussInt& x) { return {-x.re, -x.im}; }

GaussInt operator*(const GaussInt& x, const GaussInt& y) {
    if (x.is_real() && y.is_real()) return {x.re * y.re, BigInt(0)};
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

GaussInt operator*(const GaussInt& x, const BigInt& y) { return {x.re * y, x.im * y}; }

GaussInt& operator+=(GaussInt& x, const GaussInt& y) {
    x.re += y.re;
    x.im += y.im;
    return x;
}

GaussInt& operator-=(GaussInt& x, const GaussInt& y) {
    x.re -= y.re;
    x.im -= y.im;
    return x;
}

GaussInt conj(const GaussInt& x) { return {x.re, -x.im}; }
BigInt norm(const GaussInt& x) { return x.re * x.re + x.im * x.im; }

GaussInt divexact(const GaussInt& x, const BigInt& y) {
    GaussInt r;
    mpz_divexact(r.re.get_mpz_t(), x.re.get_mpz_t(), y.get_mpz_t());
    mpz_divexact(r.im.get_mpz_t(), x.im.get_mpz_t(), y.get_mpz_t());
    return r;
}

GaussInt divexact(const GaussInt& x, const GaussInt& y) {
    if (y.is_real()) return divexact(x, y.re);
    return divexact(x * conj(y), norm(y));
}

GaussInt shift_left(const GaussInt& x, std::uint64_t bits) {
    GaussInt r = x;
    r.re <<= static_cast<mp_bitcnt_t>(bits);
    r.im <<= static_cast<mp_bitcnt_t>(bits);
    return r;
}

std::size_t bit_length(const GaussInt& x) { return std::max(bit_length(x.re), bit_length(x.im)); }

// -------------------------------------------------------------- GaussRat

GaussRat operator+(const GaussRat& x, const GaussRat& y) { return {x.re + y.re, x.im + y.im}; }
GaussRat operator-(const GaussRat& x, const GaussRat& y) { return {x.re - y.re, x.im - y.im}; }
GaussRat operator-(const GaussRat& x) { return {-x.re, -x.im}; }

GaussRat operator*(const GaussRat& x, const GaussRat& y) {
    if (x.is_real() && y.is_real()) return {x.re * y.re, Rational(0)};
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

GaussRat operator/(const GaussRat& x, const GaussRat& y) {
    if (y.is_zero()) throw PreconditionError("division by zero in Q(i)");
    if (y.is_real()) return {x.re / y.re, x.im / y.re};
    Rational n = abs_squared(y);
    GaussRat t = x * conj(y);
    return {t.re / n, t.im / n};
}

GaussRat conj(const GaussRat& x) { return {x.re, -x.im}; }
Rational abs_squared(const GaussRat& x) { return x.re * x.re + x.im * x.im; }

BigInt denominator(const GaussRat& x) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), x.re.get_den_mpz_t(), x.im.get_den_mpz_t());
    return l;
}

// --------------------------------------------------------- DyadicComplex

GaussRat DyadicComplex::value() const {
    Rational r(re, pow2(exp));
    Rational i(im, pow2(exp));
    r.canonicalize();
    i.canonicalize();
    return {r, i};
}

DyadicComplex DyadicComplex::canonical() const {
    if (is_zero()) return {BigInt(0), BigInt(0), 0};
    std::uint64_t tz = exp;
    if (sgn(re) != 0) tz = std::min<std::uint64_t>(tz, mpz_scan1(re.get_mpz_t(), 0));
    if (sgn(im) != 0) tz = std::min<std::uint64_t>(tz, mpz_scan1(im.get_mpz_t(), 0));
    DyadicComplex r;
    mpz_tdiv_q_2exp(r.re.get_mpz_t(), re.get_mpz_t(), tz);
    mpz_tdiv_q_2exp(r.im.get_mpz_t(), im.get_mpz_t(), tz);
    r.exp = exp - tz;
    return r;
}

DyadicComplex DyadicComplex::with_exp(std::uint64_t e) const {
    if (e < exp) throw PreconditionError("DyadicComplex::with_exp cannot lower the exponent");
    DyadicComplex r = *this;
    r.re <<= static_cast<mp_bitcnt_t>(e - exp);
    r.im <<= static_cast<mp_bitcnt_t>(e - exp);
    r.exp = e;
    return r;
}

DyadicComplex operator+(const DyadicComplex& x, const DyadicComplex& y) {
    auto e = std::max(x.exp, y.exp);
    auto a = x.with_exp(e);
    auto b = y.with_exp(e);
    return {a.re + b.re, a.im + b.im, e};
}

DyadicComplex operator-(const DyadicComplex& x, const DyadicComplex& y) {
    auto e = std::max(x.exp, y.exp);
    auto a = x.with_exp(e);
    auto b = y.with_exp(e);
    return {a.re - b.re, a.im - b.im, e};
}

DyadicComplex operator-(const DyadicComplex& x) { return {-x.re, -x.im, x.exp}; }

DyadicComplex operator*(const DyadicComplex& x, const DyadicComplex& y) {
    GaussInt p = x.numerator() * y.numerator();
    return {p.re, p.im, x.exp + y.exp};
}

DyadicComplex operator*(const DyadicComplex& x, const BigInt& k) { return {x.re * k, x.im * k, x.exp}; }

DyadicComplex conj(const DyadicComplex& x) { return {x.re, -x.im, x.exp}; }

Dyadic abs_squared(const DyadicComplex& x) { return {x.re * x.re + x.im * x.im, 2 * x.exp}; }

bool value_equal(const DyadicComplex& x, const DyadicComplex& y) {
    return value_compare(x, y) == std::strong_ordering::equal;
}

std::strong_ordering value_compare(const DyadicComplex& x, const DyadicComplex& y) {
    auto c = value_compare(x.real(), y.real());
    if (c != 0) return c;
    return value_compare(x.imag(), y.imag());
}

DyadicComplex round_c(const GaussRat& x, std::uint64_t c) {
    auto r = round_c(x.re, c);
    auto i = round_c(x.im, c);
    return {r.num, i.num, c};
}

DyadicComplex round_c(const DyadicComplex& x, std::uint64_t c) {
    if (x.exp <= c) return x.with_exp(c);
    return round_c(x.value(), c);
}

std::ostream& operator<<(std::ostream& os, const Dyadic& x) { return os << x.value().get_str(); }

std::ostream& operator<<(std::ostream& os, const GaussRat& x) {
    os << x.re.get_str();
    if (sgn(x.im) >= 0) os << '+';
    return os << x.im.get_str() << 'i';
}

std::ostream& operator<<(std::ostream& os, const DyadicComplex& x) { return os << x.value(); }

std::ostream& operator<<(std::ostream& os, const GaussInt& x) { return os << GaussRat(x); }

Interval sqrt_enclosure(const Rational& x, std::uint64_t bits) {
    if (sgn(x) < 0) throw PreconditionError("sqrt of a negative rational");
    if (sgn(x) == 0) return {Rational(0), Rational(0)};
    BigInt s = x.get_num() * x.get_den();
    const BigInt& q = x.get_den();
    auto have = bit_length(s) / 2;
    std::uint64_t k = have >= bits ? 0 : bits - have + 2;
    s <<= static_cast<mp_bitcnt_t>(2 * k);
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    BigInt den = q;
    den <<= static_cast<mp_bitcnt_t>(k);
    Rational lo(r, den);
    lo.canonicalize();
    BigInt up = r;
    if (r * r != s) up += 1;
    Rational hi(up, den);
    hi.canonicalize();
    return {lo, hi};
}

}  // namespace jforge
