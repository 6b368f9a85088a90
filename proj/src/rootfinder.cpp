#include "jordanforge/rootfinder.hpp"

#include "bigfloat.hpp"

#include <algorithm>
#include <optional>

namespace jforge {

using detail::BigComplex;
using detail::BigFloat;

namespace {

bool is_real_poly(const IntPoly& p) {
    return std::all_of(p.c.begin(), p.c.end(), [](const GaussInt& z) { return z.is_real(); });
}

std::size_t coeff_bits(const IntPoly& p) {
    std::size_t a = 0;
    for (const auto& z : p.c) a = std::max(a, bit_length(z));
    return a;
}

// ceil(log2 x) for x >= 1.
std::uint64_t ceil_log2(const BigInt& x) {
    if (x <= 1) return 0;
    return bit_length(BigInt(x - 1));
}

IntPoly conj_poly(const IntPoly& p) {
    std::vector<GaussInt> c;
    for (const auto& z : p.c) c.push_back(conj(z));
    return IntPoly(std::move(c));
}

// ---------------------------------------------------------------- pre-pass

constexpr std::size_t kMaxPrepassBits = 20;
constexpr std::size_t kMaxCandidates = 4096;

std::vector<BigInt> positive_divisors(const BigInt& x) {
    std::vector<BigInt> small;
    std::vector<BigInt> large;
    BigInt ax = abs(x);
    for (BigInt d = 1; d * d <= ax; ++d) {
        if (ax % d != 0) continue;
        small.push_back(d);
        if (d * d != ax) large.push_back(ax / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Rational roots of a real squarefree polynomial with small end coefficients,
// divided out exactly. Returns the roots and leaves the cofactor in f.
std::vector<Rational> split_rational_roots(IntPoly& f) {
    std::vector<Rational> roots;
    if (f.degree() < 2 || !is_real_poly(f)) return roots;
    const BigInt& c0 = f.c.front().re;
    const BigInt& cn = f.lead().re;
    if (sgn(c0) == 0 || bit_length(c0) > kMaxPrepassBits || bit_length(cn) > kMaxPrepassBits) return roots;
    auto num = positive_divisors(c0);
    auto den = positive_divisors(cn);
    if (num.size() * den.size() > kMaxCandidates) return roots;
    RatPoly g = to_real(f);
    for (const auto& e : den)
        for (const auto& d : num)
            for (int s : {1, -1}) {
                BigInt dd = s * d;
                BigInt gg;
                mpz_gcd(gg.get_mpz_t(), dd.get_mpz_t(), e.get_mpz_t());
                if (gg != 1) continue;
                Rational r(dd, e);
                if (g.degree() >= 1 && sgn(eval(g, r)) == 0) {
                    roots.push_back(r);
                    g = divexact(g, RatPoly(std::vector<Rational>{-r, Rational(1)}));
                }
            }
    if (!roots.empty()) {
        std::vector<GaussRat> c;
        for (const auto& x : g.c) c.emplace_back(x);
        f = primitive_part(QiPoly(std::move(c)));
    }
    return roots;
}

// ------------------------------------------------------------------ Aberth

class Aberth {
public:
    Aberth(const IntPoly& f, mpfr_prec_t prec) : f_(f), n_(static_cast<std::size_t>(f.degree())), prec_(prec) {
        load_coefficients();
        BigFloat radius(prec_);
        Rational rb = root_bound(f_);
        mpfr_set_q(radius.get(), rb.get_mpq_t(), MPFR_RNDU);
        BigFloat angle(prec_);
        BigFloat s(prec_);
        BigFloat c(prec_);
        for (std::size_t k = 0; k < n_; ++k) {
            // 2 pi k / n + 0.4, then z = R e^{i angle}
            mpfr_const_pi(angle.get(), MPFR_RNDN);
            mpfr_mul_ui(angle.get(), angle.get(), 2 * k, MPFR_RNDN);
            mpfr_div_ui(angle.get(), angle.get(), n_, MPFR_RNDN);
            mpfr_add_d(angle.get(), angle.get(), 0.4, MPFR_RNDN);
            mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
            BigComplex z(prec_);
            mpfr_mul(z.re.get(), radius.get(), c.get(), MPFR_RNDN);
            mpfr_mul(z.im.get(), radius.get(), s.get(), MPFR_RNDN);
            z_.push_back(std::move(z));
        }
    }

    void raise_precision(mpfr_prec_t prec) {
        prec_ = prec;
        for (auto& z : z_) {
            z.re.raise_precision(prec);
            z.im.raise_precision(prec);
        }
        load_coefficients();
    }

    mpfr_prec_t precision() const { return prec_; }
    const std::vector<BigComplex>& roots() const { return z_; }

    /// One Jacobi sweep; true when every correction is below 2^-(prec-24) relative.
    bool step() {
        BigComplex fz(prec_), dfz(prec_), tmp(prec_), ratio(prec_), sum(prec_), inv(prec_), diff(prec_), one(prec_);
        BigFloat t(prec_), nn(prec_), wmag(prec_), zmag(prec_);
        mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
        std::vector<BigComplex> w;
        w.reserve(n_);
        bool converged = true;
        for (std::size_t k = 0; k < n_; ++k) {
            const BigComplex& z = z_[k];
            horner(z, fz, dfz, tmp, t, coeffs_);
            BigComplex wk(prec_);
            if (mpfr_zero_p(fz.re.get()) && mpfr_zero_p(fz.im.get())) {
                w.push_back(std::move(wk));
                continue;
            }
            if (!div(ratio, fz, dfz, t, nn)) {
                // stationary point: nudge off it
                mpfr_set_d(wk.re.get(), 1e-3, MPFR_RNDN);
                mpfr_set_d(wk.im.get(), 1e-3, MPFR_RNDN);
                w.push_back(std::move(wk));
                converged = false;
                continue;
            }
            mpfr_set_zero(sum.re.get(), 1);
            mpfr_set_zero(sum.im.get(), 1);
            for (std::size_t j = 0; j < n_; ++j) {
                if (j == k) continue;
                sub(diff, z, z_[j]);
                if (div(inv, one, diff, t, nn)) add(sum, sum, inv);
            }
            mul(tmp, ratio, sum, t);
            sub(tmp, one, tmp);
            if (!div(wk, ratio, tmp, t, nn)) wk = ratio;
            abs_sq(wmag, wk, t);
            abs_sq(zmag, z, t);
            if (mpfr_cmp_ui(zmag.get(), 1) < 0) mpfr_set_ui(zmag.get(), 1, MPFR_RNDN);
            mpfr_mul_2si(zmag.get(), zmag.get(), -2 * (static_cast<long>(prec_) - 24), MPFR_RNDN);
            if (mpfr_cmp(wmag.get(), zmag.get()) > 0) converged = false;
            w.push_back(std::move(wk));
        }
        for (std::size_t k = 0; k < n_; ++k) sub(z_[k], z_[k], w[k]);
        return converged;
    }

    /// One Newton step on every approximation, for use once they are isolated.
    /// f' only needs about half the bits for the step to stay quadratic.
    void newton_step() {
        const mpfr_prec_t half = prec_ / 2 + 64;
        BigComplex fz(prec_), tmp(prec_), w(prec_);
        BigComplex zh(half), fh(half), dfz(half), tmph(half);
        BigFloat t(prec_), th(half), nn(half);
        std::vector<BigComplex> coeffs_half;
        for (const auto& c : f_.c) {
            BigComplex z(half);
            detail::set(z, c);
            coeffs_half.push_back(std::move(z));
        }
        for (auto& z : z_) {
            fz = coeffs_[n_];
            for (std::size_t j = n_; j-- > 0;) {
                mul(tmp, fz, z, t);
                add(fz, tmp, coeffs_[j]);
            }
            mpfr_set(zh.re.get(), z.re.get(), MPFR_RNDN);
            mpfr_set(zh.im.get(), z.im.get(), MPFR_RNDN);
            horner(zh, fh, dfz, tmph, th, coeffs_half);
            if (!div(w, fz, dfz, t, nn)) continue;
            sub(tmp, z, w);
            std::swap(z, tmp);
        }
    }

private:
    void horner(const BigComplex& z, BigComplex& fz, BigComplex& dfz, BigComplex& tmp, BigFloat& t,
                const std::vector<BigComplex>& coeffs) const {
        fz = coeffs[n_];
        mpfr_set_zero(dfz.re.get(), 1);
        mpfr_set_zero(dfz.im.get(), 1);
        for (std::size_t j = n_; j-- > 0;) {
            mul(tmp, dfz, z, t);
            add(dfz, tmp, fz);
            mul(tmp, fz, z, t);
            add(fz, tmp, coeffs[j]);
        }
    }

    void load_coefficients() {
        coeffs_.clear();
        for (const auto& c : f_.c) {
            BigComplex z(prec_);
            detail::set(z, c);
            coeffs_.push_back(std::move(z));
        }
    }

    const IntPoly& f_;
    std::size_t n_;
    mpfr_prec_t prec_;
    std::vector<BigComplex> coeffs_;
    std::vector<BigComplex> z_;
};

// ----------------------------------------------------------- certification

// Makes real polynomials' approximations exactly conjugation-symmetric:
// self-paired centers become real, mutual pairs become exact conjugates.
bool symmetrize(std::vector<GaussInt>& c) {
    const std::size_t n = c.size();
    std::vector<std::size_t> partner(n);
    for (std::size_t i = 0; i < n; ++i) {
        GaussInt target = conj(c[i]);
        std::size_t best = i;
        BigInt best_d = norm(target - c[i]);
        for (std::size_t j = 0; j < n; ++j) {
            BigInt d = norm(target - c[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        partner[i] = best;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = partner[i];
        if (partner[j] != i) return false;
        if (j == i) c[i].im = 0;
        else if (sgn(c[i].im) > 0) c[j] = conj(c[i]);
        else if (sgn(c[i].im) == 0) return false;
    }
    return true;
}

// Checks that the disks D(z_i, n |W_i|), z_i = C_i / 2^E, have radius below
// 2^-(b'+2) and are pairwise disjoint, so each holds exactly one root of f.
// Separation is exact. The radius uses directed rounding: the product of
// distances is bounded below, |f(z_i)| above by a floating Horner value plus
// its a priori error 16 n 2^-p sum |f_k| |z_i|^k (complex Horner with
// round-to-nearest stays below 6 n 2^-p times that sum). This replaces an
// exact evaluation whose integers would grow to n E bits.
bool certify(const IntPoly& f, const std::vector<GaussInt>& c, std::uint64_t e, std::uint64_t b_prime) {
    const std::size_t n = c.size();
    const BigInt sep = pow2(2 * (e - b_prime - 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (norm(c[i] - c[j]) <= sep) return false;

    constexpr mpfr_prec_t lo = 64;
    const auto se = static_cast<long>(e);
    BigFloat lead_lo(lo), t(lo), u(lo), bound(lo), allowed(lo);
    mpfr_set_z(t.get(), norm(f.lead()).get_mpz_t(), MPFR_RNDD);
    mpfr_sqrt(lead_lo.get(), t.get(), MPFR_RNDD);
    std::vector<BigFloat> abs_coeff;
    for (const auto& a : f.c) {
        BigFloat x(lo);
        mpfr_set_z(t.get(), norm(a).get_mpz_t(), MPFR_RNDU);
        mpfr_sqrt(x.get(), t.get(), MPFR_RNDU);
        abs_coeff.push_back(std::move(x));
    }
    const std::size_t a_bits = coeff_bits(f);

    for (std::size_t i = 0; i < n; ++i) {
        // allowed = 2^-(b'+2) |lead| prod |z_i - z_j| / n, rounded down
        mpfr_set_ui(u.get(), 1, MPFR_RNDD);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            mpfr_set_z(t.get(), norm(c[i] - c[j]).get_mpz_t(), MPFR_RNDD);
            mpfr_mul(u.get(), u.get(), t.get(), MPFR_RNDD);
        }
        mpfr_sqrt(allowed.get(), u.get(), MPFR_RNDD);
        mpfr_mul(allowed.get(), allowed.get(), lead_lo.get(), MPFR_RNDD);
        mpfr_div_ui(allowed.get(), allowed.get(), static_cast<unsigned long>(n), MPFR_RNDD);
        mpfr_mul_2si(allowed.get(), allowed.get(), -se * static_cast<long>(n - 1) - static_cast<long>(b_prime + 2), MPFR_RNDD);
        if (mpfr_zero_p(allowed.get())) return false;

        // sum |f_k| |z|^k, rounded up
        const std::size_t zbits = std::max(bit_length(c[i].re), bit_length(c[i].im)) + 2;
        BigFloat zabs(lo);
        {
            BigFloat re(lo), im(lo);
            mpfr_set_z(re.get(), c[i].re.get_mpz_t(), MPFR_RNDU);
            mpfr_set_z(im.get(), c[i].im.get_mpz_t(), MPFR_RNDU);
            mpfr_abs(re.get(), re.get(), MPFR_RNDU);
            mpfr_abs(im.get(), im.get(), MPFR_RNDU);
            mpfr_hypot(zabs.get(), re.get(), im.get(), MPFR_RNDU);
            mpfr_mul_2si(zabs.get(), zabs.get(), -se, MPFR_RNDU);
        }
        mpfr_set(bound.get(), abs_coeff[n].get(), MPFR_RNDU);
        for (std::size_t k = n; k-- > 0;) {
            mpfr_mul(bound.get(), bound.get(), zabs.get(), MPFR_RNDU);
            mpfr_add(bound.get(), bound.get(), abs_coeff[k].get(), MPFR_RNDU);
        }
        mpfr_mul_ui(bound.get(), bound.get(), 16 * static_cast<unsigned long>(n), MPFR_RNDU);

        // Working precision so the rounding error uses at most a quarter of allowed.
        mpfr_div(u.get(), bound.get(), allowed.get(), MPFR_RNDU);
        const long need = mpfr_get_exp(u.get()) + 2;
        const auto p = static_cast<mpfr_prec_t>(std::max<long>({need, static_cast<long>(zbits), static_cast<long>(a_bits) + 2, lo}));
        if (static_cast<std::uint64_t>(p) > n * (e + a_bits + 64) + 4096) return false;

        BigComplex z(p), h(p), tmp(p);
        BigFloat tt(p);
        detail::set(z, c[i]);
        mpfr_mul_2si(z.re.get(), z.re.get(), -se, MPFR_RNDN);
        mpfr_mul_2si(z.im.get(), z.im.get(), -se, MPFR_RNDN);
        detail::set(h, f.lead());
        for (std::size_t k = n; k-- > 0;) {
            BigComplex a(p);
            detail::set(a, f.c[k]);
            detail::mul(tmp, h, z, tt);
            detail::add(h, tmp, a);
        }
        BigFloat fabs(lo);
        mpfr_abs(h.re.get(), h.re.get(), MPFR_RNDN);
        mpfr_abs(h.im.get(), h.im.get(), MPFR_RNDN);
        mpfr_hypot(fabs.get(), h.re.get(), h.im.get(), MPFR_RNDU);
        mpfr_mul_2si(bound.get(), bound.get(), -static_cast<long>(p), MPFR_RNDU);
        mpfr_add(fabs.get(), fabs.get(), bound.get(), MPFR_RNDU);
        if (!(mpfr_cmp(fabs.get(), allowed.get()) < 0)) return false;
    }
    return true;
}

std::vector<DyadicComplex> solve_numerically(const IntPoly& f, std::uint64_t b_prime) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    // Rounding the centers costs up to n * 2^-E in the Weierstrass radius.
    std::uint64_t guard = 4;
    while ((std::size_t{1} << (guard - 4)) < n) ++guard;
    const std::uint64_t e = b_prime + guard;
    const bool real = is_real_poly(f);
    Rational rb = root_bound(f);
    const auto mag = static_cast<mpfr_prec_t>(std::max<std::int64_t>(0, floor_log2(rb) + 1));
    const mpfr_prec_t target = static_cast<mpfr_prec_t>(e) + mag + 64;
    const mpfr_prec_t cap = 64 * target + (1 << 16);
    mpfr_prec_t prec = std::min<mpfr_prec_t>(128 + static_cast<mpfr_prec_t>(coeff_bits(f)), target);
    Aberth solver(f, prec);
    auto round_centers = [&] {
        std::vector<GaussInt> c;
        for (const auto& z : solver.roots())
            c.emplace_back(detail::scaled_integer(z.re, e), detail::scaled_integer(z.im, e));
        return c;
    };
    auto finish = [&](std::vector<GaussInt>& c) {
        std::vector<DyadicComplex> out;
        for (const auto& z : c) out.push_back(round_c(DyadicComplex(z.re, z.im, e), b_prime));
        return out;
    };

    // Aberth until the approximations settle at a modest precision.
    std::size_t budget = 200 + 40 * n;
    bool converged = false;
    for (;;) {
        for (std::size_t it = 0; it < budget && !converged; ++it) converged = solver.step();
        if (converged) break;
        if (prec >= cap) throw InternalError("root isolation did not converge");
        prec *= 2;
        solver.raise_precision(prec);
    }

    // Newton doubles the correct bits per step, so one step per precision level.
    if (prec < target) {
        while (prec < target) {
            prec = std::min(2 * prec, target);
            solver.raise_precision(prec);
            solver.newton_step();
        }
        solver.newton_step();
        auto c = round_centers();
        if ((!real || symmetrize(c)) && certify(f, c, e, b_prime)) return finish(c);
    }

    // Fallback: full Aberth sweeps with growing precision.
    budget = 60;
    for (;;) {
        converged = false;
        for (std::size_t it = 0; it < budget && !converged; ++it) converged = solver.step();
        if (converged && prec >= target) {
            auto c = round_centers();
            if ((!real || symmetrize(c)) && certify(f, c, e, b_prime)) return finish(c);
        }
        if (prec >= cap) throw InternalError("root isolation did not certify");
        prec = (converged && prec < target) ? std::min(2 * prec, target) : 2 * prec;
        solver.raise_precision(prec);
    }
}

}  // namespace

bool canonical_less(const DyadicComplex& x, const DyadicComplex& y) { return value_compare(x, y) < 0; }

std::uint64_t ceil_k_n_log2_n(std::uint64_t k, std::uint64_t n) {
    if (n <= 1) return 0;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, k * n);
    return ceil_log2(p);
}

std::uint64_t min_root_bits(const IntPoly& p) {
    const auto n = static_cast<std::uint64_t>(std::max<long>(p.degree(), 0));
    return coeff_bits(p) * n + ceil_k_n_log2_n(4, n);
}

Rational mahler_mingap_bound(const IntPoly& p) {
    if (p.degree() < 2) throw PreconditionError("mahler_mingap_bound needs degree >= 2");
    IntPoly q = is_real_poly(p) ? p : p * conj_poly(p);
    const auto n = static_cast<std::uint64_t>(q.degree());
    return pow2q(-static_cast<std::int64_t>(coeff_bits(q) * n + ceil_k_n_log2_n(2, n)));
}

Rational root_bound(const IntPoly& p) {
    if (p.is_zero()) throw PreconditionError("root_bound of the zero polynomial");
    BigInt sum = 0;
    for (const auto& z : p.c) sum += abs(z.re) + abs(z.im);
    BigInt lead = std::max(BigInt(abs(p.lead().re)), BigInt(abs(p.lead().im)));
    Rational r(sum, lead);
    r.canonicalize();
    return r;
}

std::vector<DyadicComplex> isolate_squarefree_roots(const IntPoly& f_in, std::uint64_t b_prime) {
    std::vector<DyadicComplex> out;
    if (f_in.degree() < 1) return out;
    IntPoly f = f_in;
    for (const auto& r : split_rational_roots(f)) out.push_back(round_c(GaussRat(r), b_prime));
    if (f.degree() == 1) {
        GaussRat root = GaussRat(-f.c[0]) / GaussRat(f.c[1]);
        out.push_back(round_c(root, b_prime));
    } else if (f.degree() >= 2) {
        auto num = solve_numerically(f, b_prime);
        out.insert(out.end(), num.begin(), num.end());
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<RootCluster> approx_roots_with_mults(const IntPoly& p, std::uint64_t b_prime) {
    if (p.degree() < 1) throw PreconditionError("approx_roots_with_mults needs degree >= 1");
    if (b_prime < min_root_bits(p))
        throw PreconditionError("working precision " + std::to_string(b_prime) + " is below a*n + 4n log n = " +
                                std::to_string(min_root_bits(p)));
    std::vector<RootCluster> out;
    std::size_t zeros = 0;
    while (p.c[zeros].is_zero()) ++zeros;
    if (zeros > 0) out.push_back({DyadicComplex(0, 0, b_prime), zeros});
    std::vector<GaussRat> shifted;
    for (std::size_t k = zeros; k < p.c.size(); ++k) shifted.emplace_back(p.c[k]);
    QiPoly rest(std::move(shifted));
    for (auto& [g, m] : squarefree_decomposition(rest))
        for (auto& v : isolate_squarefree_roots(primitive_part(g), b_prime)) out.push_back({v, m});
    std::sort(out.begin(), out.end(), [](const RootCluster& x, const RootCluster& y) { return canonical_less(x.value, y.value); });
    return out;
}

}  // namespace jforge
