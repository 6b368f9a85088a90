#pragma once

// Minimal RAII layer over MPFR used by the Aberth iteration. Only the
// operations the iteration needs are provided; everything rounds to nearest.

#include "jordanforge/scalars.hpp"

#include <mpfr.h>

#include <utility>

namespace jforge::detail {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    void raise_precision(mpfr_prec_t p) { mpfr_prec_round(v_, p, MPFR_RNDN); }

private:
    mpfr_t v_;
};

struct BigComplex {
    BigFloat re;
    BigFloat im;
    explicit BigComplex(mpfr_prec_t p) : re(p), im(p) {}
};

inline void set(BigComplex& z, const GaussInt& c) {
    mpfr_set_z(z.re.get(), c.re.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(z.im.get(), c.im.get_mpz_t(), MPFR_RNDN);
}

inline void add(BigComplex& r, const BigComplex& x, const BigComplex& y) {
    mpfr_add(r.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
}

inline void sub(BigComplex& r, const BigComplex& x, const BigComplex& y) {
    mpfr_sub(r.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
}

// r may alias neither x nor y.
inline void mul(BigComplex& r, const BigComplex& x, const BigComplex& y, BigFloat& t) {
    mpfr_mul(r.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r.im.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_mul(t.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
}

inline void abs_sq(BigFloat& r, const BigComplex& x, BigFloat& t) {
    mpfr_sqr(r.get(), x.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), x.im.get(), MPFR_RNDN);
    mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDN);
}

// r = x / y; false when y is zero. r may not alias x or y.
inline bool div(BigComplex& r, const BigComplex& x, const BigComplex& y, BigFloat& t, BigFloat& n) {
    abs_sq(n, y, t);
    if (mpfr_zero_p(n.get())) return false;
    // x * conj(y) / |y|^2
    mpfr_mul(r.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r.im.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
    mpfr_div(r.re.get(), r.re.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), r.im.get(), n.get(), MPFR_RNDN);
    return true;
}

/// round(x * 2^e) as an integer.
inline BigInt scaled_integer(const BigFloat& x, std::uint64_t e) {
    BigFloat t(x.prec());
    mpfr_mul_2ui(t.get(), x.get(), e, MPFR_RNDN);
    BigInt r;
    mpfr_get_z(r.get_mpz_t(), t.get(), MPFR_RNDN);
    return r;
}

}  // namespace jforge::detail
