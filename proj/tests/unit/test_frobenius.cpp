#include "doctest.h"
#include "jordanforge/frobenius.hpp"
#include "jordanforge/linalg.hpp"

#include <random>

using namespace jforge;

namespace {

IntPoly ip(std::vector<long> c) {
    std::vector<GaussInt> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

void check_decomposition(const IntMatrix& a) {
    auto fd = frobenius_form(a);
    RatMatrix ra(a);
    RatMatrix f(fd.F());
    CHECK(ra * fd.U == fd.U * f);
    CHECK(fd.U * fd.U_inv == RatMatrix::identity(a.rows()));
    IntPoly prod = IntPoly::constant(GaussInt(1));
    for (std::size_t i = 0; i < fd.blocks.size(); ++i) {
        prod = prod * fd.blocks[i].poly;
        if (i + 1 < fd.blocks.size()) {
            auto r = divmod(to_qi(fd.blocks[i + 1].poly), to_qi(fd.blocks[i].poly)).second;
            CHECK(r.is_zero());
        }
    }
    CHECK(prod == char_poly(a));
}

}  // namespace

TEST_CASE("companion_realize orientation") {
    CHECK(companion_realize(ip({0, 0, 1})) == from_integers({{0, 0}, {1, 0}}));
    CHECK(companion_realize(ip({-5, 1})) == from_integers({{5}}));
    CHECK(char_poly(companion_realize(ip({2, -3, 1}))) == ip({2, -3, 1}));
    CHECK_THROWS_AS(companion_realize(ip({1, 2})), PreconditionError);
}

TEST_CASE("Frobenius form examples") {
    auto c = companion_realize(ip({-6, 11, -6, 1}));
    auto fc = frobenius_form(c);
    REQUIRE(fc.blocks.size() == 1);
    CHECK(fc.blocks[0].poly == ip({-6, 11, -6, 1}));
    CHECK(fc.U == RatMatrix::identity(3));

    auto fd = frobenius_form(from_integers({{1, 0}, {0, 2}}));
    REQUIRE(fd.blocks.size() == 1);
    CHECK(fd.blocks[0].poly == ip({2, -3, 1}));

    auto fi = frobenius_form(IntMatrix::identity(2));
    REQUIRE(fi.blocks.size() == 2);
    CHECK(fi.blocks[0].poly == ip({-1, 1}));
    CHECK(fi.blocks[1].poly == ip({-1, 1}));

    auto fz = frobenius_form(IntMatrix(3, 3));
    CHECK(fz.blocks.size() == 3);
}

TEST_CASE("Frobenius form of structured and random matrices") {
    // J_2(1) + J_1(1) + [2]: invariant factors (x-1), (x-1)^2 (x-2)
    check_decomposition(from_integers({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}}));
    check_decomposition(from_integers({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 25; ++t) {
        std::size_t n = 2 + t % 5;
        IntMatrix a(n, n);
        for (auto& z : a.flat()) z = (t % 4 == 3) ? GaussInt(BigInt(d(rng)), BigInt(d(rng))) : GaussInt(d(rng) / 3);
        check_decomposition(a);
    }
}
