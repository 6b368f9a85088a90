#include "oracles.hpp"

#include "jordanforge/linalg.hpp"

#include <algorithm>
#include <set>

namespace jforge::oracle {

namespace {

Rational floor_grid(const Rational& x, std::uint64_t bits) {
    BigInt t = x.get_num() << static_cast<mp_bitcnt_t>(bits);
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), x.get_den_mpz_t());
    return Rational(q) / Rational(pow2(bits));
}

Rational ceil_grid(const Rational& x, std::uint64_t bits) { return -floor_grid(-x, bits); }

Rational abs_q(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    std::vector<GaussInt> c(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(c));
}

IntPoly ipoly(std::vector<long> c) {
    std::vector<GaussInt> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

long pick(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

Box point(const GaussRat& z) { return {{z.re, z.re}, {z.im, z.im}}; }

Interval newton_sqrt(const Rational& k, std::uint64_t bits) {
    if (k <= 1) throw PreconditionError("newton_sqrt needs k > 1");
    const std::uint64_t grid = bits + 16;
    const Rational target = pow2q(-static_cast<std::int64_t>(bits));
    Interval x{Rational(1), k};
    for (int it = 0; it < 400 && x.width() >= target; ++it) {
        const Rational m = floor_grid((x.lo + x.hi) / 2, grid);
        const Rational f = m * m - k;
        // f / [2 lo, 2 hi] with 0 < lo
        Interval q = sgn(f) >= 0 ? Interval{f / (2 * x.hi), f / (2 * x.lo)} : Interval{f / (2 * x.lo), f / (2 * x.hi)};
        x.lo = floor_grid(std::max(x.lo, Rational(m - q.hi)), grid);
        x.hi = ceil_grid(std::min(x.hi, Rational(m - q.lo)), grid);
    }
    if (x.width() >= target) throw InternalError("newton_sqrt did not converge");
    return x;
}

Rational far_distance_sq(const DyadicComplex& z, const Box& b) {
    const GaussRat v = z.value();
    const Rational dx = std::max(abs_q(v.re - b.re.lo), abs_q(v.re - b.re.hi));
    const Rational dy = std::max(abs_q(v.im - b.im.lo), abs_q(v.im - b.im.hi));
    return dx * dx + dy * dy;
}

Rational gap_sq(const Box& a, const Box& b) {
    auto gap = [](const Interval& x, const Interval& y) {
        Rational g = std::max(Rational(x.lo - y.hi), Rational(y.lo - x.hi));
        return sgn(g) > 0 ? g : Rational(0);
    };
    const Rational dx = gap(a.re, b.re);
    const Rational dy = gap(a.im, b.im);
    return dx * dx + dy * dy;
}

ConstructedPoly constructed_poly(std::mt19937_64& rng, std::uint64_t enclosure_bits) {
    static const long small_k[] = {2, 3, 5, 6, 7, 10};
    ConstructedPoly out;
    out.poly = ipoly({1});
    std::set<std::string> seen;
    const long factors = pick(rng, 2, 4);
    long degree = 0;
    for (long f = 0; f < factors; ++f) {
        const long type = pick(rng, 0, 3);
        const std::size_t mult = static_cast<std::size_t>(pick(rng, 1, 3));
        IntPoly fac;
        std::vector<ConstructedRoot> roots;
        std::string key;
        if (type == 0) {
            long p = pick(rng, -5, 5);
            long q = pick(rng, 1, 3);
            const long g = std::gcd(p, q);
            p /= g;
            q /= g;
            key = std::to_string(p) + "/" + std::to_string(q);
            fac = ipoly({-p, q});
            roots.push_back({point(GaussRat(Rational(p, q))), mult, key});
        } else if (type == 1) {
            const long k = small_k[pick(rng, 0, 5)];
            key = "sqrt" + std::to_string(k);
            fac = ipoly({-k, 0, 1});
            Interval s = newton_sqrt(k, enclosure_bits);
            roots.push_back({{s, {0, 0}}, mult, "+" + key});
            roots.push_back({{{-s.hi, -s.lo}, {0, 0}}, mult, "-" + key});
        } else if (type == 2) {
            const long u = pick(rng, -3, 3);
            const long v = pick(rng, 1, 3);
            key = std::to_string(u) + "+-" + std::to_string(v) + "i";
            fac = ipoly({u * u + v * v, -2 * u, 1});
            roots.push_back({point(GaussRat(Rational(u), Rational(v))), mult, key});
            roots.push_back({point(GaussRat(Rational(u), Rational(-v))), mult, key});
        } else {
            const long u = pick(rng, -2, 2);
            const long k = small_k[pick(rng, 0, 2)];
            key = std::to_string(u) + "+-isqrt" + std::to_string(k);
            fac = ipoly({u * u + k, -2 * u, 1});
            Interval s = newton_sqrt(k, enclosure_bits);
            roots.push_back({{{u, u}, s}, mult, key});
            roots.push_back({{{u, u}, {-s.hi, -s.lo}}, mult, key});
        }
        const long d = fac.degree() * static_cast<long>(mult);
        if (seen.count(key) || degree + d > 10) continue;
        seen.insert(key);
        degree += d;
        for (std::size_t m = 0; m < mult; ++m) out.poly = mul(out.poly, fac);
        for (auto& r : roots) out.roots.push_back(std::move(r));
    }
    if (out.roots.empty()) return constructed_poly(rng, enclosure_bits);
    return out;
}

std::vector<RatMatrix> star_product(const std::vector<RatMatrix>& q) {
    const std::size_t n = q.at(0).rows();
    std::vector<QiMatrix> out(2 * q.size() - 1, QiMatrix(n, n));
    for (std::size_t a = 0; a < q.size(); ++a) {
        const QiMatrix qa = q[a].to_qi();
        for (std::size_t b = 0; b < q.size(); ++b) {
            const QiMatrix qb = q[b].to_qi();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t t = 0; t < n; ++t) out[a + b](i, j) = out[a + b](i, j) + conj(qa(t, i)) * qb(t, j);
        }
    }
    std::vector<RatMatrix> r;
    for (const auto& m : out) r.push_back(RatMatrix::from_qi(m));
    return r;
}

std::vector<GaussRat> faddeev_leverrier(const QiMatrix& h) {
    const std::size_t n = h.rows();
    std::vector<GaussRat> c(n + 1);
    c[n] = 1;
    QiMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = H M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(H M_k) / k
        QiMatrix next(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                GaussRat s = i == j ? c[n - k + 1] : GaussRat(0);
                for (std::size_t t = 0; t < n; ++t) s = s + h(i, t) * m(t, j);
                next(i, j) = s;
            }
        m = std::move(next);
        GaussRat tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t) tr = tr + h(i, t) * m(t, i);
        c[n - k] = -(tr / GaussRat(Rational(static_cast<long>(k))));
    }
    return c;
}

std::size_t negative_inertia(const RatMatrix& h) {
    const auto c = faddeev_leverrier(h.to_qi());
    int last = 0;
    std::size_t changes = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!c[k].is_real()) throw InternalError("characteristic polynomial of a Hermitian matrix is not real");
        int s = sgn(c[k].re);
        if (s == 0) continue;
        if (k % 2 == 1) s = -s;  // coefficients of c(-t)
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

Rational jnf_residual_sq(const IntMatrix& a, const RatMatrix& v, const RatMatrix& j, const BigInt& q) {
    return max_abs_sq(RatMatrix(a, q) * v - v * j);
}

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    IntMatrix m(r, c);
    for (auto& z : m.flat()) z = GaussInt(pick(rng, lo, hi));
    return m;
}

IntMatrix unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMatrix l = IntMatrix::identity(n);
    IntMatrix u = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = GaussInt(pick(rng, -1, 1));
            u(j, i) = GaussInt(pick(rng, -1, 1));
        }
    return l * u;
}

IntMatrix jordan_matrix(const std::vector<std::pair<long, std::size_t>>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.second;
    IntMatrix j(n, n);
    std::size_t off = 0;
    for (const auto& [lambda, size] : blocks) {
        for (std::size_t k = 0; k < size; ++k) {
            j(off + k, off + k) = GaussInt(lambda);
            if (k + 1 < size) j(off + k, off + k + 1) = GaussInt(1);
        }
        off += size;
    }
    return j;
}

IntMatrix upper_half_plane_matrix(std::mt19937_64& rng, std::size_t n, std::size_t max_bits_allowed) {
    for (;;) {
        IntMatrix t(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            t(i, i) = GaussInt(pick(rng, -2, 2), pick(rng, 1, 2));
            for (std::size_t j = i + 1; j < n; ++j) t(i, j) = GaussInt(pick(rng, -2, 2), pick(rng, -2, 2));
        }
        const IntMatrix s = unimodular(rng, n);
        RatMatrix a = RatMatrix(s) * RatMatrix(t) * exact_inverse(s);
        if (a.is_integral() && max_bits(a.num) <= max_bits_allowed) return a.num;
    }
}

std::vector<RatMatrix> monic_product(const std::vector<IntMatrix>& factors) {
    const std::size_t n = factors.at(0).rows();
    std::vector<RatMatrix> q{RatMatrix::identity(n)};
    for (const auto& f : factors) {
        const RatMatrix a(f);
        std::vector<RatMatrix> next(q.size() + 1, RatMatrix(IntMatrix(n, n)));
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i + 1] = next[i + 1] + q[i];
            next[i] = next[i] - q[i] * a;
        }
        q = std::move(next);
    }
    return q;
}

}  // namespace jforge::oracle
