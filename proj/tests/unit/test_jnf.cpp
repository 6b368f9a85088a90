#include "doctest.h"
#include "jordanforge/jnf.hpp"

#include <random>

using namespace jforge;

namespace {

IntPoly ip(std::vector<long> c) {
    std::vector<GaussInt> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

RatMatrix j_matrix(const ApproxJNF& r) {
    return RatMatrix(r.scaled_J().num, r.eigen_den * pow2(r.working_bits));
}

// ||A V - V J||_max^2 computed with plain rational matrices.
Rational residual_sq(const IntMatrix& a, const ApproxJNF& r, const BigInt& q = 1) {
    RatMatrix v = r.V_hat.to_rat();
    RatMatrix lhs = RatMatrix(a, q) * v;
    return max_abs_sq(lhs - v * j_matrix(r));
}

void check_reconstruction(const IntMatrix& a, std::uint64_t b) {
    ApproxJNF r = jnf(a, b);
    std::size_t total = 0;
    for (const auto& blk : r.blocks) total += blk.size;
    REQUIRE(total == a.rows());
    const Rational n2 = Rational(static_cast<long>(a.rows() * a.rows()));
    Rational bound = pow2q(-2 * static_cast<std::int64_t>(b) + 8) * n2 * n2 * max_abs_sq(r.V_hat) *
                     max_abs_sq(RatMatrix(r.scaled_J().num, pow2(r.working_bits)));
    CHECK(residual_sq(a, r) <= bound);
}

}  // namespace

TEST_CASE("approx_powers") {
    auto ones = approx_powers(DyadicComplex(1, 0, 0), 4, 64);
    for (const auto& p : ones) CHECK(value_equal(p, DyadicComplex(1, 0, 0)));
    auto ip4 = approx_powers(DyadicComplex(0, 1, 0), 4, 64);
    CHECK(value_equal(ip4[0], DyadicComplex(0, 1, 0)));
    CHECK(value_equal(ip4[1], DyadicComplex(-1, 0, 0)));
    CHECK(value_equal(ip4[2], DyadicComplex(0, -1, 0)));
    CHECK(value_equal(ip4[3], DyadicComplex(1, 0, 0)));
    auto zeros = approx_powers(DyadicComplex(0, 0, 64), 3, 64);
    for (const auto& p : zeros) CHECK(p.is_zero());

    // sqrt(2) rounded to 64 bits; fourth power within 2^-58 of 4.
    Interval s = sqrt_enclosure(Rational(2), 200);
    auto r2 = round_c(GaussRat(s.lo), 64);
    auto p = approx_powers(r2, 4, 64);
    Rational err = abs(p[3].value().re - 4);
    CHECK(err <= pow2q(-58));
    for (const auto& x : p) CHECK(x.exp == 64);
}

TEST_CASE("brand_similarity examples") {
    auto w1 = brand_similarity({ip({1, -2, 1})}, {{DyadicComplex(1, 0, 0), 2}}, 16);
    CHECK(w1.W_hat.to_rat() == RatMatrix(from_integers({{1, 0}, {1, 1}})));
    REQUIRE(w1.jordan_blocks.size() == 1);
    CHECK(w1.jordan_blocks[0].size == 2);

    auto w2 = brand_similarity({ip({0, 0, 1})}, {{DyadicComplex(0, 0, 0), 2}}, 16);
    CHECK(w2.W_hat.to_rat() == RatMatrix::identity(2));

    auto w3 = brand_similarity({ip({2, -3, 1})}, {{DyadicComplex(1, 0, 0), 1}, {DyadicComplex(2, 0, 0), 1}}, 16);
    CHECK(w3.W_hat.to_rat() == RatMatrix(from_integers({{1, 1}, {1, 2}})));
    CHECK(w3.jordan_blocks.size() == 2);

    CHECK_THROWS_AS(brand_similarity({ip({2, -3, 1})}, {{DyadicComplex(1, 0, 0), 1}}, 16), PreconditionError);
}

TEST_CASE("symmetrizer intertwines the two companion orientations") {
    for (auto p : {ip({2, -3, 1}), ip({-6, 11, -6, 1}), ip({5, 0, 3, -1, 1}), ip({0, 0, 1})}) {
        IntMatrix c = companion_realize(p);
        IntMatrix s = symmetrizer(p);
        CHECK(c * s == s * c.transpose());
        CHECK(norm(determinant(s)) == 1);
    }
}

TEST_CASE("jnf examples") {
    auto r1 = jnf(from_integers({{1, 1}, {0, 1}}), 64);
    REQUIRE(r1.blocks.size() == 1);
    CHECK(r1.blocks[0].size == 2);
    CHECK(r1.eigenvalue(0) == GaussRat(1));
    CHECK(residual_sq(from_integers({{1, 1}, {0, 1}}), r1) == 0);

    auto r2 = jnf(from_integers({{1, 0}, {0, 2}}), 64);
    REQUIRE(r2.blocks.size() == 2);
    CHECK(r2.eigenvalue(0) == GaussRat(1));
    CHECK(r2.eigenvalue(1) == GaussRat(2));
    CHECK(residual_sq(from_integers({{1, 0}, {0, 2}}), r2) == 0);

    auto c = companion_realize(ip({-2, 0, 1}));
    auto r3 = jnf(c, 64);
    REQUIRE(r3.blocks.size() == 2);
    CHECK(r3.eigenvalue(0).re < 0);
    for (std::size_t i = 0; i < 2; ++i) {
        Rational l = r3.eigenvalue(i).re;
        CHECK(abs(l * l - 2) <= pow2q(-62));
        CHECK(r3.eigenvalue(i).im == 0);
    }
    check_reconstruction(c, 64);

    auto r4 = jnf(IntMatrix(3, 3), 64);
    REQUIRE(r4.blocks.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(r4.blocks[i].eigenvalue.is_zero());
    // a permutation matrix
    RatMatrix v4 = r4.V_hat.to_rat();
    REQUIRE(v4.is_integral());
    CHECK(v4.num * v4.num.transpose() == IntMatrix::identity(3));
}

TEST_CASE("jnf_rational") {
    auto a = from_integers({{2, 0}, {0, 4}});
    auto r = jnf_rational(a, 2, 64);
    CHECK(r.eigenvalue(0) == GaussRat(1));
    CHECK(r.eigenvalue(1) == GaussRat(2));
    CHECK(residual_sq(a, r, 2) == 0);

    auto same = jnf_rational(a, 1, 64);
    auto plain = jnf(a, 64);
    CHECK(same.V_hat == plain.V_hat);

    auto c = companion_realize(ip({-2, 0, 1}));
    auto h = jnf_rational(c, 2, 64);
    for (std::size_t i = 0; i < 2; ++i) {
        Rational l = h.eigenvalue(i).re;
        CHECK(abs(l * l - Rational(1, 2)) <= pow2q(-62));
    }
}

TEST_CASE("jnf structure for conjugated Jordan matrices") {
    // S unimodular, J = J_2(3) + J_1(3) + J_1(-1)
    IntMatrix s = from_integers({{1, 2, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 3}, {0, 0, 0, 1}});
    IntMatrix j = from_integers({{3, 1, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, -1}});
    RatMatrix si = exact_inverse(s);
    RatMatrix ar = RatMatrix(s) * RatMatrix(j) * si;
    REQUIRE(ar.is_integral());
    auto r = jnf(ar.num, 64);
    REQUIRE(r.blocks.size() == 3);
    CHECK(r.eigenvalue(0) == GaussRat(-1));
    CHECK(r.blocks[0].size == 1);
    CHECK(r.eigenvalue(1) == GaussRat(3));
    CHECK(r.blocks[1].size == 2);
    CHECK(r.eigenvalue(2) == GaussRat(3));
    CHECK(r.blocks[2].size == 1);
    CHECK(residual_sq(ar.num, r) == 0);
}

TEST_CASE("jnf reconstruction on random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-20, 20);
    for (std::size_t n = 2; n <= 5; ++n) {
        IntMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) a(i, k) = GaussInt(d(rng), n == 3 ? d(rng) : 0);
        check_reconstruction(a, 64);
    }
}
