#include "jordanforge/io.hpp"

#include "jordanforge/errors.hpp"

#include <cstdio>
#include <fstream>

namespace jforge::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string str(const json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a decimal string");
    return j.get<std::string>();
}

std::uint64_t u64(const json& j, const char* what) {
    if (!j.is_number_unsigned()) throw ParseError(std::string(what) + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

BigInt bigint_from(const json& j, const char* what) { return parse_bigint(str(j, what)); }

void expect_kind(const json& j, const char* kind) {
    if (j.is_object() && j.contains("kind") && j.at("kind") != kind)
        throw ParseError(std::string("expected kind \"") + kind + "\", got " + j.at("kind").dump());
}

template <class T, class F>
Matrix<T> matrix_from(const json& rows, F entry) {
    if (!rows.is_array()) throw ParseError("matrix entries must be an array of rows");
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix<T> m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
            throw ParseError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(c));
        for (std::size_t k = 0; k < c; ++k) m(i, k) = entry(rows[i][k]);
    }
    return m;
}

template <class T, class F>
json rows_json(const Matrix<T>& m, F entry) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(entry(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json gauss_int_json(const GaussInt& z) {
    if (sgn(z.im) == 0) return to_string(z.re);
    return json::array({to_string(z.re), to_string(z.im)});
}

GaussInt gauss_int_from(const json& j) {
    if (j.is_string()) return GaussInt(parse_bigint(j.get<std::string>()));
    if (j.is_array() && j.size() == 2) return {bigint_from(j[0], "real part"), bigint_from(j[1], "imaginary part")};
    throw ParseError("complex integer entries are \"n\" or [re, im], got " + j.dump());
}

// Rational matrix from per-entry rationals: common denominator is the lcm.
RatMatrix rat_from_entries(const QiMatrix& q) { return RatMatrix::from_qi(q); }

std::string fixed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

// ------------------------------------------------------------------ scalars

json to_json(const Rational& x) { return to_string(x); }

json to_json(const GaussRat& x) { return json::array({to_string(x.re), to_string(x.im)}); }

json to_json(const DyadicComplex& x) {
    const DyadicComplex c = x.canonical();
    json j;
    j["re_num"] = to_string(c.re);
    j["im_num"] = to_string(c.im);
    j["exp"] = c.exp;
    return j;
}

Rational rational_from(const json& j) { return parse_rational(str(j, "rational")); }

GaussRat gauss_from(const json& j) {
    if (j.is_string()) return GaussRat(parse_rational(j.get<std::string>()));
    if (j.is_array() && j.size() == 2) return {rational_from(j[0]), rational_from(j[1])};
    throw ParseError("complex entries are \"p/q\" or [re, im], got " + j.dump());
}

DyadicComplex dyadic_complex_from(const json& j) {
    return {bigint_from(field(j, "re_num"), "re_num"), bigint_from(field(j, "im_num"), "im_num"),
            u64(field(j, "exp"), "exp")};
}

// ----------------------------------------------------------------- matrices

json to_json(const IntMatrix& m) {
    json j;
    j["kind"] = "int_matrix";
    j["entries"] = rows_json(m, gauss_int_json);
    return j;
}

json to_json(const RatMatrix& m) {
    json j;
    j["kind"] = "rat_matrix";
    j["den"] = to_string(m.den);
    j["entries"] = rows_json(m.num, gauss_int_json);
    return j;
}

json to_json(const DyadicMatrix& m) {
    json j;
    j["kind"] = "dyadic_matrix";
    j["exp"] = m.exp;
    j["entries"] = rows_json(m.num, [&](const GaussInt& z) { return to_json(DyadicComplex(z.re, z.im, m.exp)); });
    return j;
}

IntMatrix int_matrix_from(const json& j) {
    expect_kind(j, "int_matrix");
    return matrix_from<GaussInt>(field(j, "entries"), gauss_int_from);
}

RatMatrix rat_matrix_from(const json& j) {
    if (j.is_object() && j.value("kind", "") == "int_matrix") return RatMatrix(int_matrix_from(j));
    expect_kind(j, "rat_matrix");
    if (j.contains("den")) {
        const BigInt den = bigint_from(j.at("den"), "den");
        if (sgn(den) <= 0) throw ParseError("den must be positive");
        return RatMatrix(matrix_from<GaussInt>(field(j, "entries"), gauss_int_from), den);
    }
    return rat_from_entries(matrix_from<GaussRat>(field(j, "entries"), gauss_from));
}

DyadicMatrix dyadic_matrix_from(const json& j) {
    expect_kind(j, "dyadic_matrix");
    const std::uint64_t e = u64(field(j, "exp"), "exp");
    auto m = matrix_from<GaussInt>(field(j, "entries"), [&](const json& x) {
        DyadicComplex d = dyadic_complex_from(x);
        if (d.exp > e) throw ParseError("entry exponent exceeds the matrix exponent");
        return d.with_exp(e).numerator();
    });
    return {std::move(m), e};
}

// -------------------------------------------------------------- polynomials

json to_json(const IntPoly& p) {
    json j;
    j["kind"] = "int_poly";
    json c = json::array();
    for (const auto& z : p.c) c.push_back(gauss_int_json(z));
    j["coeffs"] = std::move(c);
    return j;
}

IntPoly int_poly_from(const json& j) {
    expect_kind(j, "int_poly");
    const json& c = field(j, "coeffs");
    if (!c.is_array()) throw ParseError("coeffs must be an array, constant term first");
    std::vector<GaussInt> v;
    for (const auto& x : c) v.push_back(gauss_int_from(x));
    return IntPoly(std::move(v));
}

json to_json(const MatrixPolynomial& p) {
    json j;
    j["kind"] = "matrix_poly";
    j["n"] = p.n;
    j["degree"] = p.degree();
    json cs = json::array();
    for (const auto& c : p.coeffs) cs.push_back(rows_json(c.to_qi(), [](const GaussRat& z) { return to_json(z); }));
    j["coeffs"] = std::move(cs);
    return j;
}

MatrixPolynomial matrix_poly_from(const json& j) {
    expect_kind(j, "matrix_poly");
    MatrixPolynomial p;
    p.n = u64(field(j, "n"), "n");
    const std::uint64_t deg = u64(field(j, "degree"), "degree");
    const json& cs = field(j, "coeffs");
    if (!cs.is_array()) throw ParseError("coeffs must be an array of matrices");
    if (cs.size() == deg) p.monic = true;
    else if (cs.size() == deg + 1) p.monic = false;
    else
        throw ParseError("matrix_poly of degree " + std::to_string(deg) + " needs " + std::to_string(deg) + " (monic) or " +
                         std::to_string(deg + 1) + " coefficients, got " + std::to_string(cs.size()));
    for (std::size_t k = 0; k < cs.size(); ++k) {
        RatMatrix m = rat_from_entries(matrix_from<GaussRat>(cs[k], gauss_from));
        if (m.rows() != p.n || m.cols() != p.n)
            throw ParseError("coefficient " + std::to_string(k) + " is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(p.n) + "x" + std::to_string(p.n));
        p.coeffs.push_back(std::move(m));
    }
    return p;
}

void validate_specfact_input(const MatrixPolynomial& p) {
    if (p.degree() % 2 != 0) throw ParseError("total degree " + std::to_string(p.degree()) + " is odd");
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        const RatMatrix& c = p.coeffs[k];
        for (std::size_t r = 0; r < p.n; ++r)
            for (std::size_t s = r; s < p.n; ++s)
                if (!(c.num(r, s) == conj(c.num(s, r))))
                    throw ParseError("coefficient " + std::to_string(k) + " is not Hermitian at entry (" +
                                     std::to_string(r) + "," + std::to_string(s) + ")");
    }
}

// ------------------------------------------------------------------ results

json to_json(const JordanBlockSpec& b) {
    json j;
    j["eigenvalue"] = to_json(b.eigenvalue);
    j["size"] = b.size;
    j["source_block"] = b.source_block;
    return j;
}

JordanBlockSpec block_from(const json& j) {
    JordanBlockSpec b;
    b.eigenvalue = dyadic_complex_from(field(j, "eigenvalue"));
    b.size = u64(field(j, "size"), "size");
    if (j.contains("source_block")) b.source_block = u64(j.at("source_block"), "source_block");
    return b;
}

json to_json(const ApproxJNF& r) {
    json j;
    j["kind"] = "jnf";
    j["accuracy_bits"] = r.accuracy_bits;
    j["working_bits"] = r.working_bits;
    j["eigen_den"] = to_string(r.eigen_den);
    json blocks = json::array();
    for (const auto& b : r.blocks) blocks.push_back(to_json(b));
    j["blocks"] = std::move(blocks);
    j["V_hat"] = to_json(r.V_hat);
    return j;
}

ApproxJNF jnf_from(const json& j) {
    expect_kind(j, "jnf");
    ApproxJNF r;
    r.accuracy_bits = u64(field(j, "accuracy_bits"), "accuracy_bits");
    r.working_bits = u64(field(j, "working_bits"), "working_bits");
    r.eigen_den = bigint_from(field(j, "eigen_den"), "eigen_den");
    for (const auto& b : field(j, "blocks")) {
        JordanBlockSpec s = block_from(b);
        if (s.eigenvalue.exp > r.working_bits) throw ParseError("eigenvalue exponent exceeds working_bits");
        s.eigenvalue = s.eigenvalue.with_exp(r.working_bits);
        r.blocks.push_back(std::move(s));
    }
    r.V_hat = dyadic_matrix_from(field(j, "V_hat"));
    return r;
}

json to_json(const SpectralFactor& f, bool include_similarity) {
    json j;
    j["kind"] = "spectral_factor";
    j["accuracy_bits"] = f.accuracy_bits;
    j["working_bits"] = f.working_bits;
    j["eigen_den"] = to_string(f.eigen_den);
    json cs = json::array();
    for (const auto& c : f.coeffs) cs.push_back(to_json(c));
    j["coeffs"] = std::move(cs);
    j["leading"] = f.leading ? to_json(*f.leading) : json(nullptr);
    json hb = json::array();
    for (const auto& b : f.half_blocks) hb.push_back(to_json(b));
    j["half_blocks"] = std::move(hb);
    if (include_similarity) {
        j["companion_jnf"] = to_json(f.companion_jnf);
        j["V_ge"] = to_json(f.V_ge);
    }
    return j;
}

SpectralFactor spectral_factor_from(const json& j) {
    expect_kind(j, "spectral_factor");
    SpectralFactor f;
    f.accuracy_bits = u64(field(j, "accuracy_bits"), "accuracy_bits");
    f.working_bits = u64(field(j, "working_bits"), "working_bits");
    f.eigen_den = bigint_from(field(j, "eigen_den"), "eigen_den");
    for (const auto& c : field(j, "coeffs")) f.coeffs.push_back(dyadic_matrix_from(c));
    if (j.contains("leading") && !j.at("leading").is_null()) f.leading = rat_matrix_from(j.at("leading"));
    for (const auto& b : field(j, "half_blocks")) f.half_blocks.push_back(block_from(b));
    if (j.contains("companion_jnf")) f.companion_jnf = jnf_from(j.at("companion_jnf"));
    if (j.contains("V_ge")) f.V_ge = dyadic_matrix_from(j.at("V_ge"));
    return f;
}

json to_json(const NotPsdCertificate& c) {
    json j;
    j["kind"] = "not_psd_certificate";
    j["real_eigenvalue"] = to_json(c.real_eigenvalue);
    j["real_eigenvalue_exp"] = c.real_eigenvalue.exp;
    j["block_size"] = c.block_size;
    j["companion_block"] = c.companion_block;
    j["witness_x"] = c.witness_x ? to_json(*c.witness_x) : json(nullptr);
    return j;
}

NotPsdCertificate certificate_from(const json& j) {
    expect_kind(j, "not_psd_certificate");
    NotPsdCertificate c;
    c.real_eigenvalue = dyadic_complex_from(field(j, "real_eigenvalue"));
    if (j.contains("real_eigenvalue_exp")) {
        const std::uint64_t e = u64(j.at("real_eigenvalue_exp"), "real_eigenvalue_exp");
        if (e >= c.real_eigenvalue.exp) c.real_eigenvalue = c.real_eigenvalue.with_exp(e);
    }
    c.block_size = u64(field(j, "block_size"), "block_size");
    c.companion_block = u64(field(j, "companion_block"), "companion_block");
    if (j.contains("witness_x") && !j.at("witness_x").is_null()) c.witness_x = rational_from(j.at("witness_x"));
    return c;
}

json to_json(const SpecfactResult& r, bool include_similarity) {
    if (const auto* f = std::get_if<SpectralFactor>(&r)) return to_json(*f, include_similarity);
    return to_json(std::get<NotPsdCertificate>(r));
}

int specfact_exit_code(const SpecfactResult& r) { return std::holds_alternative<NotPsdCertificate>(r) ? 2 : 0; }

SpecfactResult specfact_result_from(const json& j) {
    if (field(j, "kind") == "not_psd_certificate") return certificate_from(j);
    return spectral_factor_from(j);
}

json to_json(const std::vector<RootCluster>& roots, std::uint64_t bits) {
    json j;
    j["kind"] = "roots";
    j["bits"] = bits;
    json cs = json::array();
    for (const auto& r : roots) {
        json c;
        c["value"] = to_json(r.value);
        c["multiplicity"] = r.multiplicity;
        cs.push_back(std::move(c));
    }
    j["clusters"] = std::move(cs);
    return j;
}

json to_json(const FrobeniusDecomposition& f) {
    json j;
    j["kind"] = "frobenius";
    json blocks = json::array();
    for (const auto& b : f.blocks) blocks.push_back(to_json(b.poly));
    j["blocks"] = std::move(blocks);
    j["U"] = to_json(f.U);
    j["U_inv"] = to_json(f.U_inv);
    return j;
}

json to_json(const DiagnosticsReport& r) {
    json j;
    j["kind"] = "diagnostics";
    j["residual_max_norm_sq"] = r.residual_sq ? to_json(*r.residual_sq) : json(nullptr);
    json ks = json::object();
    for (const auto& [name, k] : r.kappa_enclosures) {
        json e;
        e["lo"] = to_json(k.lo);
        e["hi"] = k.hi ? to_json(*k.hi) : json(nullptr);
        ks[name] = std::move(e);
    }
    j["kappa_enclosures"] = std::move(ks);
    json cs = json::object();
    for (const auto& c : r.ceilings) {
        json e;
        e["measured_log2"] = c.measured ? json(fixed(c.measured_log2)) : json(nullptr);
        e["ceiling_log2"] = fixed(c.ceiling_log2);
        e["pass"] = c.pass;
        cs[c.name] = std::move(e);
    }
    j["bound_ceilings"] = std::move(cs);
    j["pass"] = r.pass;
    return j;
}

// ---------------------------------------------------------------- dispatch

Input parse_input(const json& j) {
    const std::string kind = str(field(j, "kind"), "kind");
    if (kind == "int_matrix") return int_matrix_from(j);
    if (kind == "rat_matrix") return rat_matrix_from(j);
    if (kind == "int_poly") return int_poly_from(j);
    if (kind == "matrix_poly") return matrix_poly_from(j);
    throw ParseError("unknown input kind \"" + kind + "\"");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << dump(j);
    if (!out) throw Error("write failed: " + path);
}

}  // namespace jforge::io
