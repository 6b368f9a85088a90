#include "doctest.h"
#include "jordanforge/kernels.hpp"
#include "jordanforge/matrix.hpp"

#include <random>

using namespace jforge;

namespace {
IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound, bool complex) {
    std::uniform_int_distribution<long> d(-bound, bound);
    IntMatrix m(r, c);
    for (auto& z : m.flat()) z = complex ? GaussInt(BigInt(d(rng)), BigInt(d(rng))) : GaussInt(d(rng));
    return m;
}
}  // namespace

TEST_CASE("basic matrix identities") {
    auto a = from_integers({{1, 2}, {3, 4}});
    CHECK(a * IntMatrix::identity(2) == a);
    CHECK(is_zero(a + (-a)));
    auto n = from_integers({{0, 1}, {0, 0}});
    CHECK(is_zero(n * n));
    CHECK_THROWS_AS(a * IntMatrix(3, 3), DimensionMismatch);
}

TEST_CASE("RatMatrix keeps a normalized common denominator") {
    RatMatrix r(from_integers({{2, 4}, {6, 8}}), BigInt(4));
    CHECK(r.den == 2);
    CHECK(r.num == from_integers({{1, 2}, {3, 4}}));
    RatMatrix s(from_integers({{1, 0}, {0, 1}}), BigInt(3));
    auto t = r + s;
    CHECK(t.den == 6);
    CHECK(t.at(0, 0) == GaussRat(Rational(5, 6)));
}

TEST_CASE("DyadicMatrix rounding and exponent alignment") {
    RatMatrix r(from_integers({{1, 2}}), BigInt(3));
    auto d = round_c(r, 4);
    CHECK(d.exp == 4);
    CHECK(d.num(0, 0).re == 5);   // 1/3 -> 5/16
    CHECK(d.num(0, 1).re == 11);  // 2/3 -> 11/16
    DyadicMatrix e(from_integers({{1, 1}}), 1);
    CHECK((d + e).num(0, 0).re == 13);
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_matrix(rng, 7, 5, 1000, trial % 2 == 1);
        auto b = random_matrix(rng, 5, 6, 1000, trial % 2 == 0);
        kernels::set_threads(3);
        CHECK(kernels::matmul_serial(a, b) == kernels::matmul_parallel(a, b));
        auto sq = random_matrix(rng, 6, 9, 50, trial % 2 == 1);
        auto e1 = kernels::bareiss_serial(sq, 6);
        auto e2 = kernels::bareiss_parallel(sq, 6);
        CHECK(e1.m == e2.m);
        CHECK(e1.rank == e2.rank);
        if (e1.rank == 6) {
            CHECK(kernels::back_substitute_serial(e1.m, 6) == kernels::back_substitute_parallel(e1.m, 6));
        }
        kernels::set_threads(1);
    }
}
