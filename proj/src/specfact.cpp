#include "jordanforge/specfact.hpp"

#include "jordanforge/linalg.hpp"

#include <algorithm>

namespace jforge {

namespace {

std::uint64_t ceil_log2_u(std::uint64_t x) {
    std::uint64_t k = 0;
    while ((std::uint64_t{1} << k) < x) ++k;
    return k;
}

RatMatrix scale(const RatMatrix& m, const Rational& x) {
    return RatMatrix(scale(m.num, GaussInt(BigInt(x.get_num()))), BigInt(m.den * x.get_den()));
}

// Searches lambda, then lambda -/+ 2^-k for growing k, for a point where P
// is indefinite.
std::optional<Rational> find_witness(const MatrixPolynomial& p, const Rational& lambda, std::uint64_t max_k) {
    if (!evaluate_and_check_psd_sample(p, lambda).psd()) return lambda;
    for (std::uint64_t k = 0; k <= max_k; ++k) {
        const Rational h = pow2q(-static_cast<std::int64_t>(k));
        for (const Rational& x : {Rational(lambda - h), Rational(lambda + h)})
            if (!evaluate_and_check_psd_sample(p, x).psd()) return x;
    }
    return std::nullopt;
}

void validate_factor_input(const MatrixPolynomial& p) {
    if (p.n == 0) throw PreconditionError("matrix polynomial of dimension zero");
    if (p.degree() == 0 || p.degree() % 2 != 0) throw PreconditionError("spectral factorization needs even degree >= 2");
    for (const auto& c : p.coeffs)
        if (c.rows() != p.n || c.cols() != p.n) throw DimensionMismatch("coefficient has the wrong shape");
    if (!p.is_hermitian()) throw PreconditionError("spectral factorization needs Hermitian coefficients");
}

}  // namespace

RatMatrix MatrixPolynomial::coeff(std::size_t i) const {
    if (monic && i == coeffs.size()) return RatMatrix::identity(n);
    if (i >= coeffs.size()) return RatMatrix(IntMatrix(n, n));
    return coeffs[i];
}

RatMatrix MatrixPolynomial::evaluate(const Rational& x) const {
    const std::size_t m = degree();
    RatMatrix acc = coeff(m);
    for (std::size_t k = m; k-- > 0;) acc = scale(acc, x) + coeffs[k];
    return acc;
}

bool MatrixPolynomial::is_hermitian() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const RatMatrix& c) { return jforge::is_hermitian(c.num); });
}

RatMatrix SpectralFactor::coeff(std::size_t i) const {
    if (i < coeffs.size()) return coeffs[i].to_rat();
    if (i == coeffs.size()) return leading ? *leading : RatMatrix::identity(coeffs.empty() ? 0 : coeffs[0].rows());
    throw PreconditionError("SpectralFactor::coeff: index above the degree");
}

RatMatrix block_companion(const MatrixPolynomial& p) {
    if (!p.monic) throw PreconditionError("block_companion needs a monic polynomial");
    const std::size_t n = p.n;
    const std::size_t m = p.degree();
    BigInt q = 1;
    for (const auto& c : p.coeffs) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.den.get_mpz_t());
    IntMatrix a(m * n, m * n);
    for (std::size_t k = 0; k + 1 < m; ++k)
        for (std::size_t i = 0; i < n; ++i) a(k * n + i, (k + 1) * n + i) = GaussInt(q);
    for (std::size_t k = 0; k < m; ++k) {
        const BigInt f = q / p.coeffs[k].den;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a((m - 1) * n + i, k * n + j) = -(p.coeffs[k].num(i, j) * f);
    }
    return RatMatrix(std::move(a), q);
}

EigenPartition classify_eigenvalues(const ApproxJNF& jnf, std::size_t a, std::size_t n, std::size_t d,
                                    std::uint64_t real_threshold_constant) {
    const std::uint64_t nd = static_cast<std::uint64_t>(n) * d;
    const Rational tau = pow2q(-static_cast<std::int64_t>(real_threshold_constant * a * nd * nd));
    EigenPartition part;
    for (std::size_t i = 0; i < jnf.blocks.size(); ++i) {
        const Rational im = jnf.eigenvalue(i).im;
        if (abs(im) <= tau) part.zero.push_back(i);
        else if (sgn(im) > 0) part.plus.push_back(i);
        else part.minus.push_back(i);
    }

    // Conjugate pairing: same size, eigenvalues conjugate up to the accuracy.
    const Rational tol = pow2q(-static_cast<std::int64_t>(jnf.accuracy_bits));
    std::vector<bool> used(part.minus.size(), false);
    for (std::size_t i : part.plus) {
        const GaussRat target = conj(jnf.eigenvalue(i));
        bool found = false;
        for (std::size_t k = 0; k < part.minus.size() && !found; ++k) {
            const std::size_t j = part.minus[k];
            if (used[k] || jnf.blocks[j].size != jnf.blocks[i].size) continue;
            if (abs_squared(jnf.eigenvalue(j) - target) <= tol * tol) used[k] = found = true;
        }
        if (!found) throw InternalError("eigenvalues of the block companion do not pair up under conjugation");
    }
    if (part.plus.size() != part.minus.size())
        throw InternalError("eigenvalues of the block companion do not pair up under conjugation");
    return part;
}

HalfSplit build_half(const std::vector<JordanBlockSpec>& zero_blocks, const std::vector<std::size_t>& zero_offsets) {
    if (zero_blocks.size() != zero_offsets.size()) throw DimensionMismatch("build_half: one offset per block");
    HalfSplit out;
    for (std::size_t i = 0; i < zero_blocks.size(); ++i) {
        const auto& blk = zero_blocks[i];
        if (blk.size % 2 != 0) throw PreconditionError("build_half: real Jordan block of odd size");
        const std::size_t s = blk.size / 2;
        JordanBlockSpec half = blk;
        half.size = s;
        out.blocks.push_back(half);
        for (std::size_t k = 0; k < s; ++k) out.columns.push_back(zero_offsets[i] + k);
    }
    return out;
}

std::uint64_t factor_precision(std::uint64_t b, std::size_t a, std::size_t dn, std::uint64_t constant) {
    const std::uint64_t dn3 = static_cast<std::uint64_t>(dn) * dn * dn;
    return b + constant * a * dn3 * ceil_log2_u(dn + 1);
}

std::size_t input_bits(const MatrixPolynomial& p) {
    std::size_t a = 1;
    for (const auto& c : p.coeffs) a = std::max({a, max_bits(c.num), bit_length(c.den)});
    return a;
}

SpecfactResult spectral_factor(const MatrixPolynomial& p, std::uint64_t b, const SpecfactOptions& opts) {
    if (!p.monic) throw PreconditionError("spectral_factor needs a monic polynomial; use nonmonic_spectral_factor");
    validate_factor_input(p);
    const std::size_t n = p.n;
    const std::size_t d = p.degree() / 2;
    const std::size_t dn = d * n;
    const std::size_t a = input_bits(p);
    const std::uint64_t bpp = factor_precision(b, a, dn, opts.bpp_constant);

    // Step 1: approximate JNF of the block companion and the realness test.
    RatMatrix c = block_companion(p);
    ApproxJNF j = jnf_rational(c.num, c.den, bpp, opts.jnf);
    EigenPartition part = classify_eigenvalues(j, a, n, d, opts.real_threshold_constant);
    for (std::size_t i : part.zero) {
        if (j.blocks[i].size % 2 == 0) continue;
        NotPsdCertificate cert;
        const Rational lambda = j.eigenvalue(i).re;
        cert.real_eigenvalue = DyadicComplex(round_c(lambda, bpp).num, 0, bpp);
        cert.block_size = j.blocks[i].size;
        cert.companion_block = i;
        cert.witness_x = find_witness(p, cert.real_eigenvalue.value().re, bpp);
        return cert;
    }

    // Step 2: V_{>=0} = [V_+, first halves of the real blocks], top dn rows.
    std::vector<std::size_t> columns;
    std::vector<JordanBlockSpec> half_blocks;
    for (std::size_t i : part.plus) {
        for (std::size_t k = 0; k < j.blocks[i].size; ++k) columns.push_back(j.offset(i) + k);
        half_blocks.push_back(j.blocks[i]);
    }
    std::vector<JordanBlockSpec> zero_blocks;
    std::vector<std::size_t> zero_offsets;
    for (std::size_t i : part.zero) {
        JordanBlockSpec snapped = j.blocks[i];
        snapped.eigenvalue.im = 0;
        zero_blocks.push_back(snapped);
        zero_offsets.push_back(j.offset(i));
    }
    HalfSplit half = build_half(zero_blocks, zero_offsets);
    columns.insert(columns.end(), half.columns.begin(), half.columns.end());
    half_blocks.insert(half_blocks.end(), half.blocks.begin(), half.blocks.end());
    if (columns.size() != dn) throw InternalError("V_{>=0} is not square");

    const std::uint64_t w = j.working_bits;
    DyadicMatrix vge(j.V_hat.num.select_columns(columns).block(0, 0, dn, dn), w);

    // Step 3: C_Q = V J V^{-1} with the exact inverse rounded to b''; only its
    // last block row is needed.
    RatMatrix inv;
    try {
        inv = exact_inverse(vge.num);  // inverse of 2^w V_{>=0}
    } catch (const SingularMatrix&) {
        throw SingularVge("V_{>=0} is exactly singular at b'' = " + std::to_string(bpp) +
                          "; retry with a larger b'' constant");
    }
    // round_{b''}(V^{-1}) = round(2^w inv * 2^b'') / 2^b''
    IntMatrix r(dn, dn);
    for (std::size_t row = 0; row < dn; ++row)
        for (std::size_t col = 0; col < dn; ++col)
            r(row, col) = round_div(shift_left(inv.num(row, col), w + bpp), inv.den);

    // J_{>=0} scaled by eigen_den * 2^w.
    IntMatrix jge(dn, dn);
    const GaussInt one(BigInt(j.eigen_den * pow2(w)));
    std::size_t off = 0;
    for (const auto& blk : half_blocks) {
        const GaussInt lam = blk.eigenvalue.with_exp(w).numerator();
        for (std::size_t k = 0; k < blk.size; ++k) {
            jge(off + k, off + k) = lam;
            if (k + 1 < blk.size) jge(off + k, off + k + 1) = one;
        }
        off += blk.size;
    }

    // last block row of C_Q, over eigen_den * 2^(2w + b'')
    IntMatrix last = vge.num.block(dn - n, 0, n, dn) * jge * r;
    const BigInt den = j.eigen_den * pow2(2 * w);
    SpectralFactor out;
    out.accuracy_bits = b;
    out.working_bits = bpp;
    out.half_blocks = half_blocks;
    out.eigen_den = j.eigen_den;
    for (std::size_t k = 0; k < d; ++k) {
        IntMatrix qk(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) qk(i, l) = round_div(-last(i, k * n + l), den);
        out.coeffs.emplace_back(std::move(qk), bpp);
    }
    out.companion_jnf = std::move(j);
    out.V_ge = std::move(vge);
    return out;
}

SpecfactResult nonmonic_spectral_factor(const MatrixPolynomial& p, const RatMatrix& v, std::uint64_t b,
                                        const SpecfactOptions& opts) {
    if (p.monic) {
        if (!(v == RatMatrix::identity(p.n))) throw PreconditionError("monic polynomial with V != I");
        return spectral_factor(p, b, opts);
    }
    if (v.rows() != p.n || v.cols() != p.n) throw DimensionMismatch("V has the wrong shape");
    const RatMatrix vstar = conj_transpose(v);
    if (!(p.coeffs.back() == v * vstar)) throw PreconditionError("leading coefficient is not V V*");
    RatMatrix vinv;
    try {
        vinv = exact_inverse(v);
    } catch (const SingularMatrix&) {
        throw PreconditionError("V is singular");
    }
    const RatMatrix vinv_star = conj_transpose(vinv);
    MatrixPolynomial scaled;
    scaled.n = p.n;
    for (std::size_t i = 0; i + 1 < p.coeffs.size(); ++i) scaled.coeffs.push_back(vinv * p.coeffs[i] * vinv_star);
    SpecfactResult res = spectral_factor(scaled, b, opts);
    // A certificate carries over unchanged: P(x) = V P~(x) V* has the same inertia.
    if (auto* f = std::get_if<SpectralFactor>(&res)) {
        for (auto& q : f->coeffs) {
            const std::uint64_t e = q.exp;
            q = round_c(q.to_rat() * vstar, e);
        }
        f->leading = vstar;
    }
    return res;
}

PsdSample evaluate_and_check_psd_sample(const MatrixPolynomial& p, const Rational& x) {
    PsdSample out;
    out.value = p.evaluate(x);
    // Hermitian, so det(tI - N) is real with only real roots and Descartes'
    // rule on p(-t) counts the negative ones exactly.
    IntPoly cp = char_poly(out.value.num);
    RatPoly r = to_real(cp);
    for (std::size_t k = 1; k < r.c.size(); k += 2) r.c[k] = -r.c[k];
    out.negative_eigenvalues = sign_variations(r);
    return out;
}

}  // namespace jforge
