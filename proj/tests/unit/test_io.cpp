#include "doctest.h"
#include "jordanforge/io.hpp"

#include <random>

using namespace jforge;
using io::json;

TEST_CASE("parse documented inputs") {
    auto id = io::parse_input(json::parse(R"({"kind":"int_matrix","entries":[["1","0"],["0","1"]]})"));
    CHECK(std::get<IntMatrix>(id) == IntMatrix::identity(2));

    auto p = io::parse_input(
        json::parse(R"({"kind":"matrix_poly","n":1,"degree":2,"coeffs":[[[["1","0"]]],[[["0","0"]]]]})"));
    const auto& mp = std::get<MatrixPolynomial>(p);
    CHECK(mp.monic);
    CHECK(mp.degree() == 2);
    CHECK(mp.coeff(0) == RatMatrix(from_integers({{1}})));
    CHECK(mp.coeff(2) == RatMatrix::identity(1));

    auto r = io::parse_input(json::parse(R"({"kind":"rat_matrix","entries":[["1/2",["0","1/3"]]]})"));
    const auto& rm = std::get<RatMatrix>(r);
    CHECK(rm.den == 6);
    CHECK(rm.at(0, 1) == GaussRat(0, Rational(1, 3)));

    auto poly = io::parse_input(json::parse(R"({"kind":"int_poly","coeffs":["-2","0","1"]})"));
    CHECK(std::get<IntPoly>(poly).degree() == 2);
}

TEST_CASE("input errors") {
    CHECK_THROWS_AS(io::parse_input(json::parse(R"({"kind":"int_matrix","entries":[["1","0"],["0"]]})")), ParseError);
    CHECK_THROWS_AS(io::parse_input(json::parse(R"({"kind":"int_matrix","entries":[[1]]})")), ParseError);
    CHECK_THROWS_AS(io::parse_input(json::parse(R"({"kind":"nope"})")), ParseError);
    CHECK_THROWS_AS(io::parse_input(json::parse(R"({"kind":"matrix_poly","n":1,"degree":2,"coeffs":[]})")),
                    ParseError);
    auto odd = std::get<MatrixPolynomial>(
        io::parse_input(json::parse(R"({"kind":"matrix_poly","n":1,"degree":1,"coeffs":[[["1"]]]})")));
    CHECK_THROWS_AS(io::validate_specfact_input(odd), ParseError);
    auto nh = std::get<MatrixPolynomial>(io::parse_input(
        json::parse(R"({"kind":"matrix_poly","n":2,"degree":2,"coeffs":[[["1","2"],["3","1"]],[["0","0"],["0","0"]]]})")));
    try {
        io::validate_specfact_input(nh);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
    }
}

TEST_CASE("emitted shapes") {
    IntMatrix d = from_integers({{1, 0}, {0, 2}});
    json j = io::to_json(jnf(d, 16));
    CHECK(j["blocks"][0]["eigenvalue"] == json::parse(R"({"re_num":"1","im_num":"0","exp":0})"));
    CHECK(j["blocks"][0]["size"] == 1);

    MatrixPolynomial p;
    p.n = 1;
    p.coeffs = {RatMatrix(from_integers({{1}})), RatMatrix(IntMatrix(1, 1))};
    auto f = std::get<SpectralFactor>(spectral_factor(p, 16));
    json fj = io::to_json(f);
    CHECK(fj["coeffs"][0]["entries"][0][0] == json::parse(R"({"re_num":"0","im_num":"-1","exp":0})"));
}

TEST_CASE("round trips") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> dist(-50, 50);
    for (int t = 0; t < 5; ++t) {
        IntMatrix a(3, 3);
        for (auto& z : a.flat()) z = GaussInt(dist(rng), dist(rng));
        CHECK(io::int_matrix_from(json::parse(io::dump(io::to_json(a)))) == a);
        RatMatrix r(a, BigInt(dist(rng) * dist(rng) + 2601));
        CHECK(io::rat_matrix_from(json::parse(io::dump(io::to_json(r)))) == r);

        IntMatrix b(3, 3);
        for (auto& z : b.flat()) z = GaussInt(dist(rng) % 4);
        ApproxJNF jr = jnf(b, 32);
        ApproxJNF back = io::jnf_from(json::parse(io::dump(io::to_json(jr))));
        CHECK(back.V_hat == jr.V_hat);
        CHECK(back.working_bits == jr.working_bits);
        REQUIRE(back.blocks.size() == jr.blocks.size());
        for (std::size_t i = 0; i < jr.blocks.size(); ++i) {
            CHECK(back.blocks[i].eigenvalue.re == jr.blocks[i].eigenvalue.re);
            CHECK(back.blocks[i].eigenvalue.exp == jr.blocks[i].eigenvalue.exp);
            CHECK(back.blocks[i].size == jr.blocks[i].size);
        }
        CHECK(io::dump(io::to_json(back)) == io::dump(io::to_json(jr)));
    }

    MatrixPolynomial p;
    p.n = 1;
    p.coeffs = {RatMatrix(from_integers({{-1}})), RatMatrix(IntMatrix(1, 1))};
    auto cert = spectral_factor(p, 32);
    json cj = io::to_json(cert);
    auto back = io::specfact_result_from(json::parse(io::dump(cj)));
    REQUIRE(std::holds_alternative<NotPsdCertificate>(back));
    CHECK(std::get<NotPsdCertificate>(back).real_eigenvalue.exp == std::get<NotPsdCertificate>(cert).real_eigenvalue.exp);
    CHECK(io::to_json(back) == cj);

    p.coeffs[0] = RatMatrix(from_integers({{1}}));
    auto fac = spectral_factor(p, 32);
    json fj = io::to_json(fac);
    CHECK(io::to_json(io::specfact_result_from(json::parse(io::dump(fj)))) == fj);
    const auto& f = std::get<SpectralFactor>(fac);
    const auto g = std::get<SpectralFactor>(io::specfact_result_from(fj));
    CHECK(g.coeffs == f.coeffs);
    CHECK(g.V_ge == f.V_ge);

    MatrixPolynomial q;
    q.n = 2;
    q.monic = false;
    q.coeffs = {RatMatrix(from_integers({{1, 2}, {2, 5}}), 3), RatMatrix(IntMatrix(2, 2)), RatMatrix::identity(2)};
    auto q2 = io::matrix_poly_from(io::to_json(q));
    CHECK(!q2.monic);
    for (std::size_t k = 0; k < 3; ++k) CHECK(q2.coeffs[k] == q.coeffs[k]);
}
