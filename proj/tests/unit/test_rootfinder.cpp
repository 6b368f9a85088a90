#include "doctest.h"
#include "jordanforge/rootfinder.hpp"

using namespace jforge;

namespace {

IntPoly ip(std::vector<long> c) {
    std::vector<GaussInt> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

// Interval Newton for sqrt(k): N(X) = m - (m^2 - k) / (2X), intersected with X.
Interval newton_sqrt(long k, int steps) {
    Interval x{Rational(1), Rational(k)};
    for (int s = 0; s < steps; ++s) {
        Rational m = (x.lo + x.hi) / 2;
        Rational f = m * m - k;
        // 2X > 0, so f / (2X) spans [f / (2 hi), f / (2 lo)] (order depends on sign of f)
        Rational a = f / (2 * x.hi);
        Rational b = f / (2 * x.lo);
        Interval n{m - std::max(a, b), m - std::min(a, b)};
        x = {std::max(x.lo, n.lo), std::min(x.hi, n.hi)};
    }
    return x;
}

}  // namespace

TEST_CASE("bounds") {
    CHECK(root_bound(ip({-2, 0, 1})) == 3);
    CHECK(root_bound(ip({0, 0, 0, 1})) == 1);
    CHECK(root_bound(ip({-120, 274, -225, 85, -15, 1})) >= 5);
    CHECK(mahler_mingap_bound(ip({2, -3, 1})) <= 1);
    CHECK(sgn(mahler_mingap_bound(ip({0, 0, 1}))) > 0);
    CHECK_THROWS_AS(mahler_mingap_bound(ip({1, 1})), PreconditionError);
    // (x-1)(x-1-2^-k) scaled: 2^k x^2 - (2^(k+1)+1) x + (2^k+1), gap 2^-k
    for (long k = 1; k <= 8; ++k) {
        long t = 1L << k;
        CHECK(mahler_mingap_bound(ip({t + 1, -(2 * t + 1), t})) <= pow2q(-k));
    }
    CHECK(ceil_k_n_log2_n(4, 2) == 8);
    CHECK(ceil_k_n_log2_n(2, 3) == 10);  // 6 log2 3 = 9.51
}

TEST_CASE("roots of x^2 - 2 against interval Newton") {
    auto r = approx_roots_with_mults(ip({-2, 0, 1}), 64);
    REQUIRE(r.size() == 2);
    Interval s = newton_sqrt(2, 12);
    REQUIRE(s.width() < pow2q(-100));
    for (auto& c : r) CHECK(c.multiplicity == 1);
    CHECK(r[1].value.exp == 64);
    CHECK(r[1].value.is_real());
    Rational v = r[1].value.value().re;
    CHECK(v - s.hi < pow2q(-64));
    CHECK(s.lo - v < pow2q(-64));
    CHECK(r[0].value.value().re == -v);
}

TEST_CASE("exact structure") {
    auto d = approx_roots_with_mults(ip({1, -2, 1}), 64);
    REQUIRE(d.size() == 1);
    CHECK(d[0].multiplicity == 2);
    CHECK(d[0].value.value() == GaussRat(1));

    auto z = approx_roots_with_mults(ip({0, 0, 0, 1}), 64);
    REQUIRE(z.size() == 1);
    CHECK(z[0].multiplicity == 3);
    CHECK(z[0].value.is_zero());

    auto i = approx_roots_with_mults(ip({1, 0, 1}), 64);
    REQUIRE(i.size() == 2);
    CHECK(i[0].value.value() == GaussRat(0, -1));
    CHECK(i[1].value.value() == GaussRat(0, 1));

    CHECK_THROWS_AS(approx_roots_with_mults(ip({-2, 0, 1}), 3), PreconditionError);
}

TEST_CASE("mixed multiplicities and conjugate symmetry") {
    // (x-1)^2 (x^2+x+1)^3 (x^2-3)
    IntPoly p = ip({-1, 1}) * ip({-1, 1});
    for (int k = 0; k < 3; ++k) p = p * ip({1, 1, 1});
    p = p * ip({-3, 0, 1});
    auto r = approx_roots_with_mults(p, 256);
    REQUIRE(r.size() == 5);
    std::size_t total = 0;
    for (auto& c : r) total += c.multiplicity;
    CHECK(total == 10);
    int complex_count = 0;
    for (auto& c : r) {
        if (!c.value.is_real()) {
            ++complex_count;
            CHECK(c.multiplicity == 3);
            bool found = false;
            for (auto& d : r) found = found || (value_equal(d.value, conj(c.value)) && d.multiplicity == c.multiplicity);
            CHECK(found);
        }
    }
    CHECK(complex_count == 2);
}

TEST_CASE("Gaussian coefficients") {
    // (x - i)(x - 2 - i) = x^2 - (2+2i) x + (-1 + 2i)
    IntPoly p({GaussInt(BigInt(-1), BigInt(2)), GaussInt(BigInt(-2), BigInt(-2)), GaussInt(1)});
    auto r = approx_roots_with_mults(p, 64);
    REQUIRE(r.size() == 2);
    CHECK(r[0].value.value() == GaussRat(0, 1));
    CHECK(r[1].value.value() == GaussRat(2, 1));
}
