#include "jordanforge/jnf.hpp"

#include "jordanforge/kernels.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

namespace jforge {

namespace {

std::uint64_t ceil_log2_u(std::uint64_t x) {
    std::uint64_t k = 0;
    while ((std::uint64_t{1} << k) < x) ++k;
    return k;
}

std::uint64_t ceil_log2(const BigInt& x) {
    if (x <= 1) return 0;
    return bit_length(BigInt(x - 1));
}

std::size_t multiplicity(QiPoly p, const QiPoly& g) {
    std::size_t m = 0;
    for (;;) {
        auto [q, r] = divmod(p, g);
        if (!r.is_zero()) return m;
        p = std::move(q);
        ++m;
    }
}


BigInt binomial(std::size_t n, std::size_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

std::uint64_t working_precision(std::uint64_t b, std::size_t a, std::size_t n, std::uint64_t constant) {
    const std::uint64_t n3 = static_cast<std::uint64_t>(n) * n * n;
    return b + constant * a * n3 * ceil_log2_u(n + 1);
}

GaussRat ApproxJNF::eigenvalue(std::size_t block) const {
    GaussRat v = blocks[block].eigenvalue.value();
    if (eigen_den != 1) v = v / GaussRat(Rational(eigen_den));
    return v;
}

DyadicMatrix ApproxJNF::scaled_J() const {
    const std::size_t n = dim();
    DyadicMatrix j(IntMatrix(n, n), working_bits);
    const GaussInt one(BigInt(eigen_den * pow2(working_bits)));
    std::size_t off = 0;
    for (const auto& blk : blocks) {
        const GaussInt lam = blk.eigenvalue.with_exp(working_bits).numerator();
        for (std::size_t k = 0; k < blk.size; ++k) {
            j.num(off + k, off + k) = lam;
            if (k + 1 < blk.size) j.num(off + k, off + k + 1) = one;
        }
        off += blk.size;
    }
    return j;
}

std::size_t ApproxJNF::offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < i; ++k) off += blocks[k].size;
    return off;
}

std::vector<DyadicComplex> approx_powers(const DyadicComplex& lambda, std::size_t r, std::uint64_t b_prime) {
    std::vector<DyadicComplex> out;
    if (r == 0) return out;
    const DyadicComplex base = lambda.with_exp(std::max(lambda.exp, b_prime));
    if (lambda.is_zero()) return std::vector<DyadicComplex>(r, DyadicComplex(0, 0, b_prime));
    out.push_back(round_c(base, b_prime));
    for (std::size_t p = 2; p <= r; ++p) out.push_back(round_c(out.back() * out.front(), b_prime));
    return out;
}

BrandResult brand_similarity(const CompanionBlock& block, const std::vector<RootCluster>& clusters, std::uint64_t b_prime) {
    const std::size_t m = block.dim();
    std::size_t total = 0;
    for (const auto& c : clusters) total += c.multiplicity;
    if (total != m) throw PreconditionError("brand_similarity: multiplicities sum to " + std::to_string(total) +
                                            ", block dimension is " + std::to_string(m));
    BrandResult out;
    out.W_hat = DyadicMatrix(IntMatrix(m, m), b_prime);
    const BigInt unit = pow2(b_prime);
    std::size_t col = 0;
    for (const auto& cl : clusters) {
        // powers[k] = lambda^k scaled by 2^b', k = 0..m-1
        std::vector<GaussInt> powers{GaussInt(unit)};
        for (const auto& p : approx_powers(cl.value, m > 0 ? m - 1 : 0, b_prime)) powers.push_back(p.numerator());
        for (std::size_t c = 0; c < cl.multiplicity; ++c)
            for (std::size_t r = c; r < m; ++r) out.W_hat.num(r, col + c) = powers[r - c] * binomial(r, c);
        out.jordan_blocks.push_back({round_c(cl.value, b_prime).with_exp(b_prime), cl.multiplicity, 0});
        col += cl.multiplicity;
    }
    return out;
}

IntMatrix symmetrizer(const IntPoly& p) {
    const auto n = static_cast<std::size_t>(p.degree());
    IntMatrix s(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; r + c + 1 <= n; ++c) s(r, c) = p.c[r + c + 1];
    return s;
}

bool block_order(const JordanBlockSpec& x, const JordanBlockSpec& y) {
    auto c = value_compare(x.eigenvalue, y.eigenvalue);
    if (c != 0) return c < 0;
    if (x.size != y.size) return x.size > y.size;
    return x.source_block < y.source_block;
}

ApproxJNF jnf(const IntMatrix& a, std::uint64_t b, const JnfOptions& opts) {
    if (!a.square()) throw DimensionMismatch("jnf of a non-square matrix");
    const std::size_t n = a.rows();
    const std::uint64_t bp = working_precision(b, max_bits(a), n, opts.bprime_constant);
    ApproxJNF out;
    out.accuracy_bits = b;
    out.working_bits = bp;
    out.V_hat = DyadicMatrix(IntMatrix(n, n), bp);
    if (n == 0) return out;

    FrobeniusDecomposition frob = frobenius_form(a);
    for (const auto& blk : frob.blocks)
        if (bp < min_root_bits(blk.poly))
            throw PreconditionError("working precision " + std::to_string(bp) + " is below a*n + 4n log n = " +
                                    std::to_string(min_root_bits(blk.poly)) + " for an invariant factor");

    // Joint clustering: every invariant factor is a product of powers of
    // the gcd-free basis, so shared eigenvalues get identical approximations.
    std::vector<QiPoly> polys;
    for (const auto& blk : frob.blocks) polys.push_back(to_qi(blk.poly));
    std::vector<QiPoly> basis = gcd_free_basis(polys);
    std::vector<std::vector<DyadicComplex>> roots(basis.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(kernels::threads())
    for (std::size_t g = 0; g < basis.size(); ++g) {
        try {
            // Linear factors have their root in Q(i); round it directly.
            if (basis[g].degree() == 1) roots[g] = {round_c(-basis[g].c[0] / basis[g].c[1], bp)};
            else roots[g] = isolate_squarefree_roots(primitive_part(basis[g]), bp);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    // U * (direct sum of symmetrizers), then one confluent Vandermonde per block.
    IntMatrix us(n, n);
    {
        std::vector<IntMatrix> parts;
        for (const auto& blk : frob.blocks) parts.push_back(symmetrizer(blk.poly));
        us = frob.U.num * direct_sum(parts);
    }
    const BigInt& den = frob.U.den;

    struct Placed {
        JordanBlockSpec spec;
        std::size_t column;
    };
    std::vector<Placed> placed;
    IntMatrix v(n, n);
    for (std::size_t i = 0; i < frob.blocks.size(); ++i) {
        std::vector<RootCluster> clusters;
        for (std::size_t g = 0; g < basis.size(); ++g) {
            const std::size_t m = multiplicity(polys[i], basis[g]);
            if (m == 0) continue;
            for (const auto& r : roots[g]) clusters.push_back({r, m});
        }
        std::sort(clusters.begin(), clusters.end(),
                  [](const RootCluster& x, const RootCluster& y) { return canonical_less(x.value, y.value); });
        BrandResult br = brand_similarity(frob.blocks[i], clusters, bp);
        const std::size_t off = frob.offset(i);
        const std::size_t m = frob.blocks[i].dim();
        IntMatrix cols = us.block(0, off, n, m) * br.W_hat.num;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                const GaussInt& z = cols(r, c);
                v(r, off + c) = den == 1 ? z : round_div(z, den);
            }
        std::size_t col = off;
        for (auto spec : br.jordan_blocks) {
            spec.source_block = i;
            placed.push_back({spec, col});
            col += spec.size;
        }
    }

    std::stable_sort(placed.begin(), placed.end(), [](const Placed& x, const Placed& y) { return block_order(x.spec, y.spec); });
    std::size_t col = 0;
    for (const auto& p : placed) {
        for (std::size_t k = 0; k < p.spec.size; ++k)
            for (std::size_t r = 0; r < n; ++r) out.V_hat.num(r, col + k) = v(r, p.column + k);
        col += p.spec.size;
        out.blocks.push_back(p.spec);
    }
    return out;
}

ApproxJNF jnf_rational(const IntMatrix& a, const BigInt& q, std::uint64_t b, const JnfOptions& opts) {
    if (q < 1) throw PreconditionError("jnf_rational needs a positive denominator");
    ApproxJNF out = jnf(a, b + ceil_log2(q), opts);
    out.accuracy_bits = b;
    out.eigen_den = q;
    return out;
}

}  // namespace jforge
