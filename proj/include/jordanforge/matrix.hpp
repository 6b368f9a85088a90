#pragma once

// Dense exact matrices. IntMatrix is a matrix over the Gaussian integers;
// real integer matrices are the special case with zero imaginary parts.
// RatMatrix and DyadicMatrix keep one common denominator for all entries
// (an arbitrary positive integer, respectively a power of two).

#include "jordanforge/errors.hpp"
#include "jordanforge/scalars.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace jforge {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<T> flat() { return data_; }
    std::span<const T> flat() const { return data_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionMismatch("set_block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix m(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    bool operator==(const Matrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<GaussInt>;
using QiMatrix = Matrix<GaussRat>;

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
/// Exact product, dispatched to the OpenMP kernel when threads > 1.
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix scale(const IntMatrix& a, const GaussInt& k);
IntMatrix conj_transpose(const IntMatrix& a);
IntMatrix direct_sum(const std::vector<IntMatrix>& blocks);
IntMatrix from_integers(const std::vector<std::vector<long>>& rows);
bool is_real(const IntMatrix& a);
bool is_zero(const IntMatrix& a);
bool is_hermitian(const IntMatrix& a);
/// a = max entry bit length (max over real and imaginary parts).
std::size_t max_bits(const IntMatrix& a);
/// max |a_ij|^2, exact.
BigInt max_abs_sq(const IntMatrix& a);
/// gcd of all real and imaginary parts (0 for the zero matrix).
BigInt content(const IntMatrix& a);

/// num / den, den >= 1, shared by all entries.
struct RatMatrix {
    IntMatrix num;
    BigInt den{1};

    RatMatrix() = default;
    RatMatrix(IntMatrix n, BigInt d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    explicit RatMatrix(IntMatrix n) : num(std::move(n)), den(1) {}

    static RatMatrix identity(std::size_t n) { return RatMatrix(IntMatrix::identity(n)); }
    static RatMatrix from_qi(const QiMatrix& m);

    std::size_t rows() const { return num.rows(); }
    std::size_t cols() const { return num.cols(); }
    GaussRat at(std::size_t i, std::size_t j) const;
    QiMatrix to_qi() const;
    /// Removes common factors between the entries and den; den > 0 afterwards.
    void normalize();
    bool is_integral() const { return den == 1; }
    bool operator==(const RatMatrix& o) const { return num == o.num && den == o.den; }
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix conj_transpose(const RatMatrix& a);
Rational max_abs_sq(const RatMatrix& a);
/// Bit length of the common-denominator representation: max(entry bits, den bits).
std::size_t max_bits(const RatMatrix& a);

/// num / 2^exp with one shared exponent.
struct DyadicMatrix {
    IntMatrix num;
    std::uint64_t exp = 0;

    DyadicMatrix() = default;
    DyadicMatrix(IntMatrix n, std::uint64_t e) : num(std::move(n)), exp(e) {}

    std::size_t rows() const { return num.rows(); }
    std::size_t cols() const { return num.cols(); }
    DyadicComplex at(std::size_t i, std::size_t j) const { return {num(i, j).re, num(i, j).im, exp}; }
    void set(std::size_t i, std::size_t j, const DyadicComplex& v);
    DyadicMatrix with_exp(std::uint64_t e) const;
    RatMatrix to_rat() const { return RatMatrix(num, pow2(exp)); }
    bool operator==(const DyadicMatrix& o) const = default;
};

DyadicMatrix operator+(const DyadicMatrix& a, const DyadicMatrix& b);
DyadicMatrix operator-(const DyadicMatrix& a, const DyadicMatrix& b);
DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b);
DyadicMatrix operator*(const IntMatrix& a, const DyadicMatrix& b);
DyadicMatrix conj_transpose(const DyadicMatrix& a);
Rational max_abs_sq(const DyadicMatrix& a);
/// Entrywise round_c.
DyadicMatrix round_c(const RatMatrix& a, std::uint64_t c);
DyadicMatrix round_c(const DyadicMatrix& a, std::uint64_t c);
/// Dyadic view of a rational matrix whose denominator is a power of two.
DyadicMatrix to_dyadic(const RatMatrix& a);

}  // namespace jforge
