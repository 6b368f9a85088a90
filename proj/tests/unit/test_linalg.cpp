#include "doctest.h"
#include "jordanforge/linalg.hpp"

#include <random>

using namespace jforge;

namespace {

IntMatrix random_int(std::mt19937_64& rng, std::size_t n, int bound, bool complex = false) {
    std::uniform_int_distribution<long> d(-bound, bound);
    IntMatrix m(n, n);
    for (auto& z : m.flat()) z = complex ? GaussInt(BigInt(d(rng)), BigInt(d(rng))) : GaussInt(d(rng));
    return m;
}

Rational decimal(const std::string& s) {
    auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Rational r(parse_bigint(digits), BigInt(1));
    BigInt den = 1;
    for (std::size_t k = dot + 1; k < s.size(); ++k) den *= 10;
    r /= Rational(den);
    return r;
}

// Enclosure meets the oracle value known to +-1e-36.
bool agrees(const Interval& iv, const std::string& oracle) {
    Rational v = decimal(oracle);
    Rational slack(1, BigInt("1000000000000000000000000000000000000"));
    return iv.lo <= v + slack && v - slack <= iv.hi;
}

// det(kI - A) for k = 0..n, then Lagrange interpolation.
IntPoly char_poly_oracle(const IntMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Rational> xs;
    std::vector<GaussRat> ys;
    for (std::size_t k = 0; k <= n; ++k) {
        IntMatrix m = scale(IntMatrix::identity(n), GaussInt(static_cast<long>(k))) - a;
        xs.emplace_back(static_cast<long>(k));
        ys.emplace_back(determinant(m));
    }
    QiPoly acc;
    for (std::size_t i = 0; i <= n; ++i) {
        QiPoly basis = QiPoly::constant(GaussRat(1));
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            Rational inv = 1 / (xs[i] - xs[j]);
            basis = basis * QiPoly(std::vector<GaussRat>{GaussRat(-xs[j] * inv), GaussRat(inv)});
        }
        acc = acc + scale(basis, ys[i]);
    }
    return primitive_part(acc);
}

}  // namespace

TEST_CASE("exact inverse") {
    CHECK(exact_inverse(IntMatrix::identity(3)) == RatMatrix::identity(3));
    auto d = exact_inverse(from_integers({{2, 0}, {0, 4}}));
    CHECK(d.den == 4);
    CHECK(d.num == from_integers({{2, 0}, {0, 1}}));
    CHECK_THROWS_AS(exact_inverse(from_integers({{1, 2}, {2, 4}})), SingularMatrix);

    std::mt19937_64 rng(11);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        auto a = random_int(rng, 4, 255, t % 2 == 1);
        if (determinant(a).is_zero()) continue;
        auto inv = exact_inverse(a);
        CHECK(RatMatrix(a) * inv == RatMatrix::identity(4));
        CHECK(exact_inverse(inv) == RatMatrix(a));
        // Fact 1 style bit budget: C a n log n with C = 4
        CHECK(max_bits(inv) <= 4 * 8 * 4 * 2);
        ++checked;
    }
    CHECK(checked > 30);
}

TEST_CASE("determinant sign tracks row swaps") {
    CHECK(determinant(from_integers({{0, 1}, {1, 0}})) == GaussInt(-1));
    CHECK(determinant(from_integers({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}})) == GaussInt(18));
}

TEST_CASE("char_poly") {
    // companion of x^2 - 3x + 2 in the Frobenius orientation
    CHECK(char_poly(from_integers({{0, -2}, {1, 3}})) == IntPoly({GaussInt(2), GaussInt(-3), GaussInt(1)}));
    CHECK(char_poly(IntMatrix(3, 3)) == IntPoly::monomial(GaussInt(1), 3));
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    auto d = from_integers({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    CHECK(char_poly(d) == IntPoly({GaussInt(-6), GaussInt(11), GaussInt(-6), GaussInt(1)}));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto a = random_int(rng, 2 + t % 5, 40, t % 3 == 0);
        CHECK(char_poly(a) == char_poly_oracle(a));
    }
}

TEST_CASE("nullspace and solve over Q(i)") {
    QiMatrix m = to_qi(from_integers({{1, 2, 3}, {2, 4, 6}}));
    auto n = nullspace(m);
    CHECK(n.cols() == 2);
    auto prod = m * n;
    for (const auto& z : prod.flat()) CHECK(z.is_zero());
    auto x = solve(to_qi(from_integers({{2, 1}, {1, 3}})), {GaussRat(3), GaussRat(4)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == GaussRat(1));
    CHECK((*x)[1] == GaussRat(1));
    CHECK_FALSE(solve(m, {GaussRat(1), GaussRat(1)}).has_value());
}

TEST_CASE("norm bounds") {
    auto b = op_norm_bounds(RatMatrix::identity(3));
    CHECK(b.lower == 1);
    CHECK(b.upper == 3);
    auto z = op_norm_bounds(RatMatrix(IntMatrix(2, 2)));
    CHECK(z.lower == 0);
    CHECK(z.upper == 0);
    // sigma_max of a fixed 3x3 (mpmath SVD) lies inside the bounds
    auto a = RatMatrix(from_integers({{3, -1, 4}, {1, 5, -9}, {2, 6, 5}}));
    auto nb = op_norm_bounds(a);
    Rational smax = decimal("11.32166025406872128238319167750121786745");
    CHECK(nb.lower <= smax);
    CHECK(smax <= nb.upper);
}

TEST_CASE("singular value enclosures") {
    auto i2 = RatMatrix::identity(2);
    CHECK(sigma_min_estimate(i2).contains(Rational(1)));
    RatMatrix half(from_integers({{2, 0}, {0, 1}}), BigInt(2));
    CHECK(sigma_min_estimate(half).contains(Rational(1, 2)));

    auto a = RatMatrix(from_integers({{3, -1, 4}, {1, 5, -9}, {2, 6, 5}}));
    CHECK(agrees(singular_value(a, 1, 120), "11.32166025406872128238319167750121786745"));
    CHECK(agrees(singular_value(a, 2, 120), "7.897681427337928042468114842612618147729"));
    auto smin = sigma_min_estimate(a, 120);
    CHECK(agrees(smin, "2.7288527193166957508730992335340740189"));
    CHECK(smin.width() <= pow2q(-120));

    auto v = RatMatrix(from_integers({{1, 1}, {1, 2}}));
    CHECK(agrees(sigma_max_enclosure(v, 120), "2.61803398874989484820458683436563811772"));
    CHECK(agrees(sigma_min_estimate(v, 120), "0.3819660112501051517954131656343618822797"));

    IntMatrix c(2, 2);
    c(0, 0) = GaussInt(BigInt(1), BigInt(2));
    c(0, 1) = GaussInt(BigInt(0), BigInt(-1));
    c(1, 0) = GaussInt(3);
    c(1, 1) = GaussInt(BigInt(-2), BigInt(1));
    CHECK(agrees(sigma_max_enclosure(RatMatrix(c), 120), "4.377802118633467884029062095145132792653"));
    CHECK(agrees(sigma_min_estimate(RatMatrix(c), 120), "0.9137005034957132969741694121333880587675"));

    // singular input gives [0, eps]
    auto s = sigma_min_estimate(RatMatrix(from_integers({{1, 2}, {2, 4}})));
    CHECK(s.lo == 0);
    CHECK(s.hi <= pow2q(-64));
}

TEST_CASE("truncated enclosures stay valid for huge entries") {
    // 2^300 * A has singular values 2^300 * sigma(A); dividing by 2^300 keeps them.
    IntMatrix big = scale(from_integers({{3, -1, 4}, {1, 5, -9}, {2, 6, 5}}), GaussInt(pow2(300)));
    RatMatrix m(big, pow2(300));
    CHECK(agrees(sigma_min_estimate(m, 100), "2.7288527193166957508730992335340740189"));
    // perturb one entry by 1: the enclosure must move by at most 2^-300 scale
    big(0, 0) += GaussInt(1);
    RatMatrix m2(big, pow2(300));
    auto iv = sigma_min_estimate(m2, 64);
    CHECK(iv.width() <= pow2q(-64));
}
