#pragma once

// JSON formats. Every number that carries exact data is a decimal string;
// rationals are "p" or "p/q", complex entries are [re, im] pairs (a bare
// string is accepted for a real entry), dyadic complexes are
// {"re_num","im_num","exp"}.

#include "jordanforge/certify.hpp"
#include "jordanforge/frobenius.hpp"
#include "jordanforge/jnf.hpp"
#include "jordanforge/rootfinder.hpp"
#include "jordanforge/specfact.hpp"

#include "json.hpp"

#include <string>
#include <variant>
#include <vector>

namespace jforge::io {

using json = nlohmann::ordered_json;

json to_json(const Rational& x);
json to_json(const GaussRat& x);
json to_json(const DyadicComplex& x);
json to_json(const IntMatrix& m);
json to_json(const RatMatrix& m);
json to_json(const DyadicMatrix& m);
json to_json(const IntPoly& p);
json to_json(const MatrixPolynomial& p);
json to_json(const JordanBlockSpec& b);
json to_json(const ApproxJNF& j);
/// include_similarity = false drops the companion JNF and V_ge (large).
json to_json(const SpectralFactor& f, bool include_similarity = true);
json to_json(const NotPsdCertificate& c);
json to_json(const SpecfactResult& r, bool include_similarity = true);
json to_json(const std::vector<RootCluster>& roots, std::uint64_t bits);
json to_json(const FrobeniusDecomposition& f);
json to_json(const DiagnosticsReport& r);

Rational rational_from(const json& j);
GaussRat gauss_from(const json& j);
DyadicComplex dyadic_complex_from(const json& j);
IntMatrix int_matrix_from(const json& j);
RatMatrix rat_matrix_from(const json& j);
DyadicMatrix dyadic_matrix_from(const json& j);
IntPoly int_poly_from(const json& j);
MatrixPolynomial matrix_poly_from(const json& j);
JordanBlockSpec block_from(const json& j);
ApproxJNF jnf_from(const json& j);
SpectralFactor spectral_factor_from(const json& j);
NotPsdCertificate certificate_from(const json& j);
SpecfactResult specfact_result_from(const json& j);

using Input = std::variant<IntMatrix, RatMatrix, IntPoly, MatrixPolynomial>;
/// Dispatches on "kind": int_matrix, rat_matrix, int_poly, matrix_poly.
Input parse_input(const json& j);

/// Rejects non-Hermitian coefficients (naming the entry) and odd total degree.
void validate_specfact_input(const MatrixPolynomial& p);

json read_json_file(const std::string& path);
/// Two-space indented JSON with a trailing newline.
void write_json_file(const json& j, const std::string& path);
std::string dump(const json& j);

/// Process exit status for a specfact run: 0 factor, 2 NotPSD certificate.
int specfact_exit_code(const SpecfactResult& r);

}  // namespace jforge::io
