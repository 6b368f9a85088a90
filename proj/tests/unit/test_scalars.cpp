#include "doctest.h"
#include "jordanforge/scalars.hpp"

using namespace jforge;

TEST_CASE("round_c picks the nearest multiple of 2^-c") {
    CHECK(value_equal(round_c(Rational(1, 3), 1), Dyadic(1, 1)));
    CHECK(value_equal(round_c(Rational(1, 3), 2), Dyadic(1, 2)));
    CHECK(round_c(Rational(1, 3), 2).exp == 2);
    // exact dyadic input is a fixed point
    CHECK(value_equal(round_c(Rational(3, 8), 5), Dyadic(3, 3)));
    // ties go to the even numerator
    CHECK(round_c(Rational(1, 2), 0).num == 0);
    CHECK(round_c(Rational(3, 2), 0).num == 2);
    CHECK(round_c(Rational(-1, 2), 0).num == 0);
}

TEST_CASE("round_c error never exceeds 2^-c") {
    for (long p = -50; p <= 50; ++p)
        for (long q = 1; q <= 13; ++q)
            for (std::uint64_t c = 0; c < 6; ++c) {
                Rational x(p, q);
                x.canonicalize();
                Rational err = abs(x - round_c(x, c).value());
                CHECK(err <= pow2q(-static_cast<std::int64_t>(c)));
            }
}

TEST_CASE("bit lengths") {
    CHECK(bit_length(BigInt(0)) == 0);
    CHECK(bit_length(BigInt(255)) == 8);
    CHECK(bit_length(Rational(0)) == BitLength{0, 1});
    CHECK(bit_length(Rational(1, 1024)) == BitLength{1, 11});
}

TEST_CASE("dyadic complex arithmetic") {
    DyadicComplex one(1, 0, 0);
    DyadicComplex z(3, -5, 4);
    CHECK(value_equal(one * z, z));
    CHECK(value_equal(conj(conj(z)), z));
    DyadicComplex i(0, 1, 0);
    CHECK(value_equal(i * i, DyadicComplex(-1, 0, 0)));
    CHECK((z * z).exp == 8);
    CHECK((z + DyadicComplex(1, 0, 1)).exp == 4);
    CHECK(abs_squared(z).value() == Rational(17, 128));
}

TEST_CASE("Gaussian integer exact division") {
    GaussInt a(BigInt(3), BigInt(4));
    GaussInt b(BigInt(1), BigInt(-2));
    CHECK(divexact(a * b, b) == a);
    CHECK(norm(a) == 25);
}

TEST_CASE("sqrt enclosure brackets sqrt(2)") {
    auto iv = sqrt_enclosure(Rational(2), 80);
    CHECK(iv.lo * iv.lo <= 2);
    CHECK(iv.hi * iv.hi >= 2);
    CHECK(iv.width() <= pow2q(-78));
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_bigint("abc"));
}
