#pragma once

// Exact scalar types: integers, rationals, dyadic rationals and their
// Gaussian (complex) counterparts. Everything here is a value type with
// exact arithmetic; nothing ever rounds except round_c.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace jforge {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Bit lengths of the canonical numerator and denominator.
struct BitLength {
    std::size_t num_bits = 0;
    std::size_t den_bits = 1;
    bool operator==(const BitLength&) const = default;
};

std::size_t bit_length(const BigInt& x);
BitLength bit_length(const Rational& x);

BigInt pow2(std::uint64_t e);
Rational pow2q(std::int64_t e);

/// floor(log2 |x|) for x != 0.
std::int64_t floor_log2(const Rational& x);

BigInt parse_bigint(const std::string& s);
/// Accepts "p", "-p" or "p/q".
Rational parse_rational(const std::string& s);
std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

/// value = num / 2^exp. The exponent is stored as given; canonical() strips
/// common factors of two.
struct Dyadic {
    BigInt num;
    std::uint64_t exp = 0;

    Dyadic() = default;
    Dyadic(BigInt n, std::uint64_t e) : num(std::move(n)), exp(e) {}

    Rational value() const;
    Dyadic canonical() const;
    /// Same value expressed over 2^e; requires e >= exp.
    Dyadic with_exp(std::uint64_t e) const;
    bool is_zero() const { return sgn(num) == 0; }
};

Dyadic operator+(const Dyadic& x, const Dyadic& y);
Dyadic operator-(const Dyadic& x, const Dyadic& y);
Dyadic operator-(const Dyadic& x);
Dyadic operator*(const Dyadic& x, const Dyadic& y);
/// Value comparison (exponents may differ).
bool value_equal(const Dyadic& x, const Dyadic& y);
std::strong_ordering value_compare(const Dyadic& x, const Dyadic& y);
BitLength bit_length(const Dyadic& x);

/// Nearest rational with denominator 2^c; ties go to the even numerator.
Dyadic round_c(const Rational& x, std::uint64_t c);

/// Gaussian integer re + i*im.
struct GaussInt {
    BigInt re;
    BigInt im;

    GaussInt() = default;
    GaussInt(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussInt(BigInt r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
};

GaussInt operator+(const GaussInt& x, const GaussInt& y);
GaussInt operator-(const GaussInt& x, const GaussInt& y);
GaussInt operator-(const GaussInt& x);
GaussInt operator*(const GaussInt& x, const GaussInt& y);
GaussInt operator*(const GaussInt& x, const BigInt& y);
GaussInt& operator+=(GaussInt& x, const GaussInt& y);
GaussInt& operator-=(GaussInt& x, const GaussInt& y);
GaussInt conj(const GaussInt& x);
BigInt norm(const GaussInt& x);  // re^2 + im^2
/// x / y where y divides x exactly in Z[i]; undefined otherwise.
GaussInt divexact(const GaussInt& x, const GaussInt& y);
GaussInt divexact(const GaussInt& x, const BigInt& y);
GaussInt shift_left(const GaussInt& x, std::uint64_t bits);
/// max(bit_length(re), bit_length(im)).
std::size_t bit_length(const GaussInt& x);

/// Nearest integer to x / d for d > 0; ties go to the even quotient.
BigInt round_div(const BigInt& x, const BigInt& d);
GaussInt round_div(const GaussInt& x, const BigInt& d);

/// Gaussian rational with independent rational parts; used for field
/// arithmetic in Q(i) (Frobenius form, polynomial gcds).
struct GaussRat {
    Rational re;
    Rational im;

    GaussRat() = default;
    GaussRat(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rational r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRat(const GaussInt& z) : re(z.re), im(z.im) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

GaussRat operator+(const GaussRat& x, const GaussRat& y);
GaussRat operator-(const GaussRat& x, const GaussRat& y);
GaussRat operator-(const GaussRat& x);
GaussRat operator*(const GaussRat& x, const GaussRat& y);
GaussRat operator/(const GaussRat& x, const GaussRat& y);
GaussRat conj(const GaussRat& x);
Rational abs_squared(const GaussRat& x);
/// Least common denominator of re and im.
BigInt denominator(const GaussRat& x);

/// Complex dyadic (re + i*im) / 2^exp with one shared exponent.
struct DyadicComplex {
    BigInt re;
    BigInt im;
    std::uint64_t exp = 0;

    DyadicComplex() = default;
    DyadicComplex(BigInt r, BigInt i, std::uint64_t e) : re(std::move(r)), im(std::move(i)), exp(e) {}
    static DyadicComplex from_int(const GaussInt& z) { return {z.re, z.im, 0}; }

    GaussRat value() const;
    DyadicComplex canonical() const;
    DyadicComplex with_exp(std::uint64_t e) const;
    GaussInt numerator() const { return {re, im}; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    Dyadic real() const { return {re, exp}; }
    Dyadic imag() const { return {im, exp}; }
};

DyadicComplex operator+(const DyadicComplex& x, const DyadicComplex& y);
DyadicComplex operator-(const DyadicComplex& x, const DyadicComplex& y);
DyadicComplex operator-(const DyadicComplex& x);
DyadicComplex operator*(const DyadicComplex& x, const DyadicComplex& y);
DyadicComplex operator*(const DyadicComplex& x, const BigInt& k);
DyadicComplex conj(const DyadicComplex& x);
/// |x|^2 as a dyadic with exponent 2*exp.
Dyadic abs_squared(const DyadicComplex& x);
bool value_equal(const DyadicComplex& x, const DyadicComplex& y);
/// Lexicographic (real part, imaginary part) order on values.
std::strong_ordering value_compare(const DyadicComplex& x, const DyadicComplex& y);

/// Componentwise round_c.
DyadicComplex round_c(const GaussRat& x, std::uint64_t c);
DyadicComplex round_c(const DyadicComplex& x, std::uint64_t c);

std::ostream& operator<<(std::ostream& os, const Dyadic& x);
std::ostream& operator<<(std::ostream& os, const DyadicComplex& x);
std::ostream& operator<<(std::ostream& os, const GaussInt& x);
std::ostream& operator<<(std::ostream& os, const GaussRat& x);

/// Enclosure [lo, hi] with rational endpoints.
struct Interval {
    Rational lo;
    Rational hi;
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Rational width() const { return hi - lo; }
};

/// Outward-rounded square-root enclosure with relative width about 2^-bits.
Interval sqrt_enclosure(const Rational& x, std::uint64_t bits = 96);

}  // namespace jforge
