#include "jordanforge/matrix.hpp"

#include "jordanforge/kernels.hpp"

#include <algorithm>

namespace jforge {

namespace {

void check_same_shape(const IntMatrix& a, const IntMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch(std::string(what) + ": shape mismatch");
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    check_same_shape(a, b, "matrix add");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t t = 0; t < c.flat().size(); ++t) c.flat()[t] = a.flat()[t] + b.flat()[t];
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    check_same_shape(a, b, "matrix sub");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t t = 0; t < c.flat().size(); ++t) c.flat()[t] = a.flat()[t] - b.flat()[t];
    return c;
}

IntMatrix operator-(const IntMatrix& a) {
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t t = 0; t < c.flat().size(); ++t) c.flat()[t] = -a.flat()[t];
    return c;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return kernels::matmul(a, b); }

IntMatrix scale(const IntMatrix& a, const GaussInt& k) {
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t t = 0; t < c.flat().size(); ++t) c.flat()[t] = a.flat()[t] * k;
    return c;
}

IntMatrix conj_transpose(const IntMatrix& a) {
    IntMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = conj(a(i, j));
    return t;
}

IntMatrix direct_sum(const std::vector<IntMatrix>& blocks) {
    std::size_t r = 0;
    std::size_t c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    IntMatrix m(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

IntMatrix from_integers(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw DimensionMismatch("from_integers: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = GaussInt(rows[i][j]);
    }
    return m;
}

bool is_real(const IntMatrix& a) {
    return std::all_of(a.flat().begin(), a.flat().end(), [](const GaussInt& z) { return z.is_real(); });
}

bool is_zero(const IntMatrix& a) {
    return std::all_of(a.flat().begin(), a.flat().end(), [](const GaussInt& z) { return z.is_zero(); });
}

bool is_hermitian(const IntMatrix& a) { return a.square() && conj_transpose(a) == a; }

std::size_t max_bits(const IntMatrix& a) {
    std::size_t m = 0;
    for (const auto& z : a.flat()) m = std::max(m, bit_length(z));
    return m;
}

BigInt max_abs_sq(const IntMatrix& a) {
    BigInt m = 0;
    for (const auto& z : a.flat()) {
        BigInt v = norm(z);
        if (v > m) m = v;
    }
    return m;
}

BigInt content(const IntMatrix& a) {
    BigInt g = 0;
    for (const auto& z : a.flat()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.re.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.im.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// -------------------------------------------------------------- RatMatrix

RatMatrix RatMatrix::from_qi(const QiMatrix& m) {
    BigInt den = 1;
    for (const auto& z : m.flat()) den = lcm(den, denominator(z));
    IntMatrix num(m.rows(), m.cols());
    for (std::size_t t = 0; t < m.flat().size(); ++t) {
        const GaussRat& z = m.flat()[t];
        Rational re = z.re * den;
        Rational im = z.im * den;
        num.flat()[t] = GaussInt(re.get_num(), im.get_num());
    }
    return RatMatrix(std::move(num), den);
}

GaussRat RatMatrix::at(std::size_t i, std::size_t j) const {
    Rational re(num(i, j).re, den);
    Rational im(num(i, j).im, den);
    re.canonicalize();
    im.canonicalize();
    return {re, im};
}

QiMatrix RatMatrix::to_qi() const {
    QiMatrix m(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) m(i, j) = at(i, j);
    return m;
}

void RatMatrix::normalize() {
    if (sgn(den) == 0) throw PreconditionError("RatMatrix with zero denominator");
    if (sgn(den) < 0) {
        den = -den;
        num = -num;
    }
    if (den == 1) return;
    BigInt g = content(num);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
    if (g == 0 || g == 1) {
        if (g == 0) den = 1;  // zero matrix
        return;
    }
    for (auto& z : num.flat()) z = divexact(z, g);
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    BigInt l = lcm(a.den, b.den);
    return RatMatrix(scale(a.num, GaussInt(BigInt(l / a.den))) + scale(b.num, GaussInt(BigInt(l / b.den))), l);
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    BigInt l = lcm(a.den, b.den);
    return RatMatrix(scale(a.num, GaussInt(BigInt(l / a.den))) - scale(b.num, GaussInt(BigInt(l / b.den))), l);
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return RatMatrix(a.num * b.num, a.den * b.den); }

RatMatrix conj_transpose(const RatMatrix& a) { return RatMatrix(conj_transpose(a.num), a.den); }

Rational max_abs_sq(const RatMatrix& a) {
    Rational r(max_abs_sq(a.num), a.den * a.den);
    r.canonicalize();
    return r;
}

std::size_t max_bits(const RatMatrix& a) { return std::max(max_bits(a.num), bit_length(a.den)); }

// ----------------------------------------------------------- DyadicMatrix

void DyadicMatrix::set(std::size_t i, std::size_t j, const DyadicComplex& v) {
    if (v.exp > exp) throw PreconditionError("DyadicMatrix::set: entry exponent exceeds the shared exponent");
    auto w = v.with_exp(exp);
    num(i, j) = GaussInt(w.re, w.im);
}

DyadicMatrix DyadicMatrix::with_exp(std::uint64_t e) const {
    if (e < exp) throw PreconditionError("DyadicMatrix::with_exp cannot lower the exponent");
    DyadicMatrix r(num, e);
    if (e != exp)
        for (auto& z : r.num.flat()) z = shift_left(z, e - exp);
    return r;
}

DyadicMatrix operator+(const DyadicMatrix& a, const DyadicMatrix& b) {
    auto e = std::max(a.exp, b.exp);
    return {a.with_exp(e).num + b.with_exp(e).num, e};
}

DyadicMatrix operator-(const DyadicMatrix& a, const DyadicMatrix& b) {
    auto e = std::max(a.exp, b.exp);
    return {a.with_exp(e).num - b.with_exp(e).num, e};
}

DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b) { return {a.num * b.num, a.exp + b.exp}; }

DyadicMatrix operator*(const IntMatrix& a, const DyadicMatrix& b) { return {a * b.num, b.exp}; }

DyadicMatrix conj_transpose(const DyadicMatrix& a) { return {conj_transpose(a.num), a.exp}; }

Rational max_abs_sq(const DyadicMatrix& a) {
    Rational r(max_abs_sq(a.num), pow2(2 * a.exp));
    r.canonicalize();
    return r;
}

DyadicMatrix round_c(const RatMatrix& a, std::uint64_t c) {
    DyadicMatrix out(IntMatrix(a.rows(), a.cols()), c);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, round_c(a.at(i, j), c));
    return out;
}

DyadicMatrix round_c(const DyadicMatrix& a, std::uint64_t c) {
    if (a.exp <= c) return a.with_exp(c);
    DyadicMatrix out(IntMatrix(a.rows(), a.cols()), c);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, round_c(a.at(i, j), c));
    return out;
}

DyadicMatrix to_dyadic(const RatMatrix& a) {
    if (mpz_popcount(a.den.get_mpz_t()) != 1) throw PreconditionError("to_dyadic: denominator is not a power of two");
    auto e = static_cast<std::uint64_t>(mpz_scan1(a.den.get_mpz_t(), 0));
    return {a.num, e};
}

}  // namespace jforge
