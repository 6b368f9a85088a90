#include "doctest.h"
#include "jordanforge/certify.hpp"
#include "jordanforge/frobenius.hpp"

#include <cmath>
#include <random>

using namespace jforge;

namespace {

IntPoly ip(std::vector<long> c) {
    std::vector<GaussInt> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

MatrixPolynomial scalar_poly(std::vector<long> c) {
    MatrixPolynomial p;
    p.n = 1;
    for (long x : c) p.coeffs.emplace_back(from_integers({{x}}));
    return p;
}

IntMatrix random_int(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntMatrix m(r, c);
    for (auto& z : m.flat()) z = GaussInt(dist(rng));
    return m;
}

}  // namespace

TEST_CASE("jnf_residual") {
    IntMatrix d = from_integers({{1, 0}, {0, 2}});
    CHECK(jnf_residual(d, jnf(d, 64)) == 0);

    IntMatrix c = companion_realize(ip({-2, 0, 1}));
    auto r = jnf(c, 64);
    const Rational res = jnf_residual(c, r);
    CHECK(res > 0);
    CHECK(res <= pow2q(-120));

    // Rational input: (1/3) diag(1, 2) is exact at any precision up to rounding of 1/3.
    auto rq = jnf_rational(d, BigInt(3), 64);
    CHECK(jnf_residual(d, rq) <= pow2q(-128));
    CHECK_THROWS_AS(jnf_residual(from_integers({{1}}), r), DimensionMismatch);
}

TEST_CASE("factor_residual on exact factors") {
    auto x2 = scalar_poly({0, 0});
    auto f = std::get<SpectralFactor>(spectral_factor(x2, 64));
    CHECK(factor_residual(x2, f) == 0);

    auto x2p1 = scalar_poly({1, 0});
    auto g = std::get<SpectralFactor>(spectral_factor(x2p1, 64));
    CHECK(factor_residual(x2p1, g) == 0);

    auto quartic = scalar_poly({1, 0, 0, 0});
    CHECK_THROWS_AS(factor_residual(quartic, g), DimensionMismatch);
}

TEST_CASE("krylov_stack") {
    RatMatrix y(from_integers({{1, 0}}));
    RatMatrix k(from_integers({{0, 1}, {1, 0}}), 2);
    RatMatrix w = krylov_stack(y, k, 3);
    CHECK(w.rows() == 3);
    CHECK(w.at(1, 1) == GaussRat(Rational(1, 2)));
    CHECK(w.at(2, 0) == GaussRat(Rational(1, 4)));
}

TEST_CASE("submatrix condition: identity") {
    for (std::size_t n = 1; n <= 3; ++n) {
        auto rep = submatrix_condition_check(RatMatrix::identity(n), RatMatrix::identity(n), n);
        CHECK(rep.holds);
        CHECK(!rep.rank_deficient);
    }
}

TEST_CASE("submatrix condition: random 2x2 and Jordan stress") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        RatMatrix y(random_int(rng, 2, 2, -4, 4));
        RatMatrix k(random_int(rng, 2, 2, -3, 3));
        if (max_abs_sq(k) < 1) continue;
        CHECK(submatrix_condition_check(y, k, 4).holds);
    }
    RatMatrix j(from_integers({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}));
    RatMatrix y(from_integers({{1, 0, 0}}));
    auto rep = submatrix_condition_check(y, j, 6);
    CHECK(rep.holds);
    CHECK(!rep.rank_deficient);
    // Y spans an invariant line: W_k never reaches rank D.
    auto deficient = submatrix_condition_check(RatMatrix(from_integers({{0, 0, 1}})), j, 5);
    CHECK(deficient.rank_deficient);
    CHECK(deficient.holds);
    CHECK_THROWS_AS(submatrix_condition_check(y, RatMatrix(IntMatrix(3, 3)), 4), PreconditionError);
    CHECK_THROWS_AS(submatrix_condition_check(y, j, 2), PreconditionError);
}

TEST_CASE("condition number under perturbation") {
    // kappa(M+E) <= kappa(M) (1 + t) / (1 - t) with t = ||E|| ||M^-1|| <= 1/2.
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix m = random_int(rng, 3, 3, -5, 5);
        if (determinant(m) == GaussInt(0)) continue;
        RatMatrix mr(m);
        Interval smin = sigma_min_estimate(mr);
        RatMatrix e(random_int(rng, 3, 3, -3, 3), pow2(12));
        const Rational t = op_norm_bounds(e).upper / smin.lo;
        if (t > Rational(1, 2)) continue;
        KappaEnclosure k0 = kappa_enclosure(mr);
        KappaEnclosure k1 = kappa_enclosure(mr + e);
        REQUIRE(k0.hi.has_value());
        CHECK(k1.lo <= *k0.hi * (1 + t) / (1 - t));
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("kappa ceilings for JNF runs") {
    IntMatrix id = IntMatrix::identity(3);
    auto r = kappa_ceilings(id, jnf(id, 64));
    CHECK(r.pass);
    REQUIRE(r.kappa_enclosures.size() == 1);
    CHECK(r.kappa_enclosures[0].second.lo <= 1);
    CHECK(*r.kappa_enclosures[0].second.hi >= 1);
    CHECK(*r.kappa_enclosures[0].second.hi <= Rational(1) + pow2q(-20));

    // diag(1,2): compare with the closed form for 2x2 singular values of V_hat.
    IntMatrix d = from_integers({{1, 0}, {0, 2}});
    auto jd = jnf(d, 64);
    auto rd = kappa_ceilings(d, jd);
    CHECK(rd.pass);
    RatMatrix v = jd.V_hat.to_rat();
    double f2 = 0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) f2 += abs_squared(v.at(i, j)).get_d();
    const double det = std::sqrt(abs_squared(v.at(0, 0) * v.at(1, 1) - v.at(0, 1) * v.at(1, 0)).get_d());
    const double kappa = (f2 + std::sqrt(f2 * f2 - 4 * det * det)) / (2 * det);
    const auto& kd = rd.kappa_enclosures[0].second;
    CHECK(kd.lo.get_d() <= kappa * (1 + 1e-9));
    CHECK(kd.hi->get_d() >= kappa * (1 - 1e-9));

    std::mt19937_64 rng(3);
    IntMatrix a = random_int(rng, 4, 4, -8, 7);
    auto ra = kappa_ceilings(a, jnf(a, 64));
    CHECK(ra.pass);
    CHECK(ra.ceilings[0].ceiling_log2 == doctest::Approx(8.0 * 4 * 64 * 9));
}

TEST_CASE("kappa ceilings for spectral factors") {
    auto p = scalar_poly({1, 0, -2, 0});
    auto f = std::get<SpectralFactor>(spectral_factor(p, 64));
    auto rep = kappa_ceilings(p, f);
    CHECK(rep.pass);
    CHECK(*rep.residual_sq == 0);
    CHECK(rep.ceilings.size() == 2);
}
