#include "jordanforge/certify.hpp"

#include "jordanforge/errors.hpp"

#include <algorithm>
#include <cmath>

namespace jforge {

namespace {

std::uint64_t floor_log2_u(std::uint64_t x) {
    std::uint64_t k = 0;
    while (x >>= 1) ++k;
    return k;
}

Rational rpow(const Rational& x, std::uint64_t e) {
    Rational r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= x;
    return r;
}

CeilingCheck make_check(std::string name, const std::optional<Rational>& measured, Rational ceiling) {
    CeilingCheck c;
    c.name = std::move(name);
    c.measured = measured;
    c.ceiling = std::move(ceiling);
    c.ceiling_log2 = approx_log2(c.ceiling);
    c.measured_log2 = measured ? approx_log2(*measured) : INFINITY;
    c.pass = measured.has_value() && *measured <= c.ceiling;
    return c;
}

RatMatrix to_rat(const DyadicMatrix& m) { return m.to_rat(); }

}  // namespace

double approx_log2(const Rational& x) {
    if (sgn(x) <= 0) return -INFINITY;
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
    return std::log2(mn / md) + static_cast<double>(en - ed);
}

Rational jnf_residual(const IntMatrix& a, const ApproxJNF& jnf) {
    const std::size_t n = jnf.dim();
    if (!a.square() || a.rows() != n || jnf.V_hat.rows() != n)
        throw DimensionMismatch("jnf_residual: matrix and JNF dimensions differ");
    if (n == 0) return 0;
    const std::uint64_t w = jnf.working_bits;
    if (jnf.V_hat.exp != w) throw InternalError("jnf_residual: V_hat is not at the working exponent");
    // (A/q) V - V J = (2^w A Vn - Vn Jn) / (q 2^(2w)), Jn = q 2^w J.
    const BigInt scale_av = pow2(w);
    IntMatrix av = a * jnf.V_hat.num;
    for (auto& z : av.flat()) z = shift_left(z, w);
    IntMatrix d = av - jnf.V_hat.num * jnf.scaled_J().num;
    const BigInt den = jnf.eigen_den * scale_av * scale_av;
    return Rational(max_abs_sq(d)) / Rational(den * den);
}

std::vector<RatMatrix> star_product(const std::vector<RatMatrix>& q) {
    if (q.empty()) return {};
    const std::size_t n = q[0].rows();
    std::vector<RatMatrix> qs;
    for (const auto& c : q) qs.push_back(conj_transpose(c));
    std::vector<RatMatrix> out(2 * q.size() - 1, RatMatrix(IntMatrix(n, n)));
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] = out[i + j] + qs[i] * q[j];
    return out;
}

Rational factor_residual(const MatrixPolynomial& p, const SpectralFactor& q) {
    if (p.degree() != 2 * q.degree())
        throw DimensionMismatch("factor_residual: degree(P) = " + std::to_string(p.degree()) + " but degree(Q) = " +
                                std::to_string(q.degree()));
    std::vector<RatMatrix> all;
    for (std::size_t i = 0; i <= q.degree(); ++i) all.push_back(q.coeff(i));
    if (!all.empty() && all[0].rows() != p.n) throw DimensionMismatch("factor_residual: block sizes differ");
    const auto prod = star_product(all);
    Rational worst = 0;
    for (std::size_t k = 0; k < prod.size(); ++k) worst = std::max(worst, max_abs_sq(p.coeff(k) - prod[k]));
    return worst;
}

RatMatrix krylov_stack(const RatMatrix& y, const RatMatrix& k, std::size_t blocks) {
    const std::size_t r = y.rows();
    const std::size_t c = y.cols();
    if (k.rows() != c || k.cols() != c) throw DimensionMismatch("krylov_stack: K must be D x D with D = cols(Y)");
    std::vector<RatMatrix> parts;
    RatMatrix cur = y;
    for (std::size_t b = 0; b < blocks; ++b) {
        parts.push_back(cur);
        if (b + 1 < blocks) cur = cur * k;
    }
    BigInt den = 1;
    for (const auto& p : parts) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.den.get_mpz_t());
    IntMatrix out(r * blocks, c);
    for (std::size_t b = 0; b < blocks; ++b) {
        const BigInt f = den / parts[b].den;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) out(b * r + i, j) = parts[b].num(i, j) * f;
    }
    return RatMatrix(std::move(out), den);
}

SubmatrixConditionReport submatrix_condition_check(const RatMatrix& y, const RatMatrix& k_mat, std::size_t k,
                                                   std::uint64_t target_bits) {
    const std::size_t D = y.cols();
    if (D == 0) throw PreconditionError("submatrix_condition_check: Y has no columns");
    if (k < D) throw PreconditionError("submatrix_condition_check: k < D");
    SubmatrixConditionReport rep;
    rep.D = D;
    rep.k = k;
    // ||K|| >= max(|K_ij|, sigma_max lower end); both are certified lower bounds.
    const Interval smax_k = sigma_max_enclosure(k_mat, target_bits);
    rep.norm_K_sq_lo = std::max(max_abs_sq(k_mat), Rational(smax_k.lo * smax_k.lo));
    if (rep.norm_K_sq_lo < 1) throw PreconditionError("submatrix_condition_check: ||K|| < 1");

    const RatMatrix wk = krylov_stack(y, k_mat, k);
    const RatMatrix wd = krylov_stack(y, k_mat, D);
    if (rank(wk.to_qi()) < D) {
        // sigma_D(W_k) = 0, the right-hand side vanishes.
        rep.rank_deficient = true;
        rep.sigma_Wk = {Rational(0), Rational(0)};
        rep.sigma_WD = singular_value(wd, D, target_bits);
        rep.holds = true;
        return rep;
    }
    rep.sigma_WD = singular_value(wd, D, target_bits);
    rep.sigma_Wk = singular_value(wk, D, target_bits);
    const std::uint64_t e = static_cast<std::uint64_t>(D) * (k - D + 1);
    const Rational lhs = rep.sigma_WD.lo * rep.sigma_WD.lo * Rational(static_cast<unsigned long>(k)) *
                         rpow(Rational(16), e) * rpow(rep.norm_K_sq_lo, e);
    rep.holds = lhs >= rep.sigma_Wk.hi * rep.sigma_Wk.hi;
    return rep;
}

std::uint64_t kappa_ceiling_log2(std::size_t a, std::size_t n, std::uint64_t constant) {
    const std::uint64_t l = 1 + floor_log2_u(std::max<std::size_t>(n, 1));
    return constant * std::max<std::size_t>(a, 1) * n * n * n * l * l;
}

DiagnosticsReport kappa_ceilings(const IntMatrix& a, const ApproxJNF& jnf, std::uint64_t constant) {
    DiagnosticsReport rep;
    rep.residual_sq = jnf_residual(a, jnf);
    const KappaEnclosure kv = kappa_enclosure(to_rat(jnf.V_hat));
    rep.kappa_enclosures.emplace_back("V_hat", kv);
    const std::uint64_t lg = kappa_ceiling_log2(max_bits(a), a.rows(), constant);
    rep.ceilings.push_back(make_check("kappa(V_hat)", kv.hi, Rational(pow2(lg))));
    rep.pass = std::all_of(rep.ceilings.begin(), rep.ceilings.end(), [](const CeilingCheck& c) { return c.pass; });
    return rep;
}

DiagnosticsReport kappa_ceilings(const MatrixPolynomial& p, const SpectralFactor& f, std::uint64_t constant) {
    DiagnosticsReport rep;
    rep.residual_sq = factor_residual(p, f);

    // The companion matrix belongs to the monic polynomial actually factored.
    MatrixPolynomial monic = p;
    if (f.leading) {
        const RatMatrix v = conj_transpose(*f.leading);
        const RatMatrix vi = exact_inverse(v);
        const RatMatrix vis = conj_transpose(vi);
        monic.monic = true;
        monic.coeffs.pop_back();
        for (auto& c : monic.coeffs) c = vi * c * vis;
    }
    const RatMatrix cp = block_companion(monic);
    const std::size_t dim = cp.rows();
    const std::size_t half = dim / 2;

    const KappaEnclosure kv = kappa_enclosure(to_rat(f.companion_jnf.V_hat));
    const KappaEnclosure kge = kappa_enclosure(to_rat(f.V_ge));
    rep.kappa_enclosures.emplace_back("V_hat", kv);
    rep.kappa_enclosures.emplace_back("V_ge", kge);

    const std::uint64_t lg = kappa_ceiling_log2(input_bits(monic), dim, constant);
    rep.ceilings.push_back(make_check("kappa(V_hat)", kv.hi, Rational(pow2(lg))));

    // kappa(V_ge) <= ||V|| ||V^-1|| sqrt(2dn) (4 + 4||C_P||)^(dn(dn+1)), using ||V_ge|| <= ||V||.
    const NormBounds cpn = op_norm_bounds(cp);
    const Rational root_lo = sqrt_enclosure(Rational(static_cast<unsigned long>(dim))).lo;
    const std::uint64_t e = static_cast<std::uint64_t>(half) * (half + 1);
    const Rational rhs = kv.lo * root_lo * rpow(Rational(4) + 4 * cpn.upper, e);
    rep.ceilings.push_back(make_check("kappa(V_ge)", kge.hi, rhs));
    rep.pass = std::all_of(rep.ceilings.begin(), rep.ceilings.end(), [](const CeilingCheck& c) { return c.pass; });
    return rep;
}

}  // namespace jforge
