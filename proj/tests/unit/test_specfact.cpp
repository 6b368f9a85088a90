#include "doctest.h"
#include "jordanforge/specfact.hpp"

#include <random>

using namespace jforge;

namespace {

// Scalar monic polynomial from its non-leading integer coefficients.
MatrixPolynomial scalar_poly(std::vector<long> c) {
    MatrixPolynomial p;
    p.n = 1;
    for (long x : c) p.coeffs.emplace_back(from_integers({{x}}));
    return p;
}

// Q*(x) Q(x) for Q(x) = sum x^i Q_i, all coefficients given.
std::vector<RatMatrix> star_product(const std::vector<RatMatrix>& q) {
    const std::size_t n = q[0].rows();
    std::vector<RatMatrix> out(2 * q.size() - 1, RatMatrix(IntMatrix(n, n)));
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] = out[i + j] + conj_transpose(q[i]) * q[j];
    return out;
}

std::vector<RatMatrix> all_coeffs(const SpectralFactor& f) {
    std::vector<RatMatrix> q;
    for (std::size_t i = 0; i <= f.degree(); ++i) q.push_back(f.coeff(i));
    return q;
}

Rational residual_sq(const MatrixPolynomial& p, const SpectralFactor& f) {
    auto prod = star_product(all_coeffs(f));
    Rational worst = 0;
    for (std::size_t k = 0; k < prod.size(); ++k) worst = std::max(worst, max_abs_sq(p.coeff(k) - prod[k]));
    return worst;
}

SpectralFactor factor(const SpecfactResult& r) {
    REQUIRE(std::holds_alternative<SpectralFactor>(r));
    return std::get<SpectralFactor>(r);
}

}  // namespace

TEST_CASE("block companion layout") {
    CHECK(block_companion(scalar_poly({0, 0})) == RatMatrix(from_integers({{0, 1}, {0, 0}})));
    CHECK(block_companion(scalar_poly({1, 0})) == RatMatrix(from_integers({{0, 1}, {-1, 0}})));
    MatrixPolynomial p;
    p.n = 2;
    p.coeffs = {RatMatrix(from_integers({{1, 2}, {3, 4}})), RatMatrix(from_integers({{5, 6}, {7, 8}}), 2)};
    RatMatrix c = block_companion(p);
    CHECK(c.den == 2);
    CHECK(c.at(0, 2) == GaussRat(1));
    CHECK(c.at(2, 0) == GaussRat(-1));
    CHECK(c.at(3, 3) == GaussRat(Rational(-4)));
    CHECK(c.at(2, 2) == GaussRat(Rational(-5, 2)));
}

TEST_CASE("build_half") {
    JordanBlockSpec z2{DyadicComplex(0, 0, 0), 2, 0};
    JordanBlockSpec z4{DyadicComplex(0, 0, 0), 4, 1};
    auto h = build_half({z2, z4}, {0, 2});
    REQUIRE(h.blocks.size() == 2);
    CHECK(h.blocks[0].size == 1);
    CHECK(h.blocks[1].size == 2);
    CHECK(h.columns == std::vector<std::size_t>{0, 2, 3});
    CHECK(build_half({}, {}).blocks.empty());
    CHECK_THROWS_AS(build_half({JordanBlockSpec{DyadicComplex(0, 0, 0), 3, 0}}, {0}), PreconditionError);
}

TEST_CASE("scalar spectral factors") {
    auto x2 = scalar_poly({0, 0});
    const auto f1 = factor(spectral_factor(x2, 64));
    CHECK(f1.coeff(0) == RatMatrix(IntMatrix(1, 1)));
    CHECK(residual_sq(x2, f1) == 0);
    REQUIRE(f1.half_blocks.size() == 1);
    CHECK(f1.half_blocks[0].size == 1);

    auto x2p1 = scalar_poly({1, 0});
    const auto f2 = factor(spectral_factor(x2p1, 64));
    CHECK(f2.coeff(0).at(0, 0) == GaussRat(0, -1));
    CHECK(residual_sq(x2p1, f2) == 0);

    auto sq = scalar_poly({1, -2});
    const auto f3 = factor(spectral_factor(sq, 64));
    CHECK(f3.coeff(0).at(0, 0) == GaussRat(-1));

    // (x-1)^2 (x+1)^2 = x^4 - 2x^2 + 1
    auto quartic = scalar_poly({1, 0, -2, 0});
    const auto f4 = factor(spectral_factor(quartic, 64));
    CHECK(residual_sq(quartic, f4) == 0);
    REQUIRE(f4.half_blocks.size() == 2);
    CHECK(f4.half_blocks[0].size == 1);
    CHECK(f4.half_blocks[1].size == 1);
}

TEST_CASE("x^2 I_2 splits into two half blocks") {
    MatrixPolynomial p;
    p.n = 2;
    p.coeffs = {RatMatrix(IntMatrix(2, 2)), RatMatrix(IntMatrix(2, 2))};
    const auto f = factor(spectral_factor(p, 64));
    CHECK(residual_sq(p, f) == 0);
    CHECK(f.half_blocks.size() == 2);
}

TEST_CASE("not PSD certificate") {
    auto p = scalar_poly({-1, 0});
    auto r = spectral_factor(p, 64);
    REQUIRE(std::holds_alternative<NotPsdCertificate>(r));
    const auto& cert = std::get<NotPsdCertificate>(r);
    CHECK(cert.block_size % 2 == 1);
    CHECK(abs(cert.real_eigenvalue.value().re) == 1);
    REQUIRE(cert.witness_x.has_value());
    CHECK(!evaluate_and_check_psd_sample(p, *cert.witness_x).psd());
}

TEST_CASE("evaluate_and_check_psd_sample") {
    CHECK(evaluate_and_check_psd_sample(scalar_poly({-1, 0}), 0).negative_eigenvalues == 1);
    CHECK(evaluate_and_check_psd_sample(scalar_poly({1, 0}), Rational(3, 7)).psd());
}

TEST_CASE("round trip on a constructed 2x2 factor") {
    // Q(x) = x I - A with A upper triangular, eigenvalues 1+i and -2+2i.
    IntMatrix a(2, 2);
    a(0, 0) = GaussInt(1, 1);
    a(0, 1) = GaussInt(3, -1);
    a(1, 1) = GaussInt(-2, 2);
    std::vector<RatMatrix> q{RatMatrix(-a), RatMatrix::identity(2)};
    auto prod = star_product(q);
    MatrixPolynomial p;
    p.n = 2;
    p.coeffs = {prod[0], prod[1]};
    const auto f = factor(spectral_factor(p, 64));
    Rational err = max_abs_sq(f.coeff(0) - q[0]);
    CHECK(err <= pow2q(-120) * max_abs_sq(q[0]));
    CHECK(residual_sq(p, f) <= pow2q(-112) * max_abs_sq(prod[0]));
}

TEST_CASE("non-monic reduction") {
    // V = 2, P = 4x^2 + 4
    MatrixPolynomial p;
    p.n = 1;
    p.monic = false;
    p.coeffs = {RatMatrix(from_integers({{4}})), RatMatrix(IntMatrix(1, 1)), RatMatrix(from_integers({{4}}))};
    const auto f = factor(nonmonic_spectral_factor(p, RatMatrix(from_integers({{2}})), 64));
    CHECK(f.coeff(1) == RatMatrix(from_integers({{2}})));
    CHECK(f.coeff(0).at(0, 0) == GaussRat(0, -2));
    CHECK(residual_sq(p, f) == 0);
    CHECK_THROWS_AS(nonmonic_spectral_factor(p, RatMatrix(from_integers({{3}})), 64), PreconditionError);
}
