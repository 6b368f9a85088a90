// jordanforge command-line front end.
//
// Exit codes: 0 success, 2 NotPSD certificate (specfact), 1 any error.

#include "suite.hpp"

#include "jordanforge/certify.hpp"
#include "jordanforge/errors.hpp"
#include "jordanforge/io.hpp"
#include "jordanforge/kernels.hpp"

#include "CLI11.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <spdlog/stopwatch.h>

#include <cstdlib>
#include <iostream>

namespace {

using namespace jforge;
using io::json;

struct RunConfig {
    std::string command;
    std::uint64_t bits = 64;
    std::uint64_t bprime_constant = 8;
    std::uint64_t bpp_constant = 8;
    std::uint64_t real_threshold_constant = 1;
    std::uint64_t kappa_constant = 8;
    std::string input;
    std::string output;
    std::string result;  // verify: prior run output
    std::string nonmonic_v;
    std::uint64_t seed = 20240611;
    bool check = false;
    bool skip_determinism = false;
    int threads = 1;

    SpecfactOptions specfact_options() const {
        SpecfactOptions o;
        o.jnf.bprime_constant = bprime_constant;
        o.bpp_constant = bpp_constant;
        o.real_threshold_constant = real_threshold_constant;
        return o;
    }
};

void emit(const json& j, const RunConfig& cfg) {
    if (cfg.output.empty()) std::cout << io::dump(j);
    else io::write_json_file(j, cfg.output);
}

json load_input(const RunConfig& cfg) {
    if (cfg.input.empty()) throw Error("--input is required");
    return io::read_json_file(cfg.input);
}

int cmd_jnf(const RunConfig& cfg) {
    const io::Input in = io::parse_input(load_input(cfg));
    JnfOptions opts;
    opts.bprime_constant = cfg.bprime_constant;
    IntMatrix a;
    ApproxJNF r;
    spdlog::stopwatch sw;
    if (const auto* m = std::get_if<IntMatrix>(&in)) {
        a = *m;
        r = jnf(a, cfg.bits, opts);
    } else if (const auto* q = std::get_if<RatMatrix>(&in)) {
        a = q->num;
        r = jnf_rational(a, q->den, cfg.bits, opts);
    } else {
        throw ParseError("jnf expects an int_matrix or rat_matrix");
    }
    spdlog::info("jnf: n = {}, b' = {}, {} blocks, {:.3f} s", r.dim(), r.working_bits, r.blocks.size(), sw);
    json out = io::to_json(r);
    if (cfg.check) out["diagnostics"] = io::to_json(kappa_ceilings(a, r, cfg.kappa_constant));
    emit(out, cfg);
    return 0;
}

int cmd_roots(const RunConfig& cfg) {
    const io::Input in = io::parse_input(load_input(cfg));
    const auto* p = std::get_if<IntPoly>(&in);
    if (!p) throw ParseError("roots expects an int_poly");
    spdlog::stopwatch sw;
    auto roots = approx_roots_with_mults(*p, cfg.bits);
    spdlog::info("roots: degree {}, {} distinct, {:.3f} s", p->degree(), roots.size(), sw);
    emit(io::to_json(roots, cfg.bits), cfg);
    return 0;
}

int cmd_frobenius(const RunConfig& cfg) {
    const io::Input in = io::parse_input(load_input(cfg));
    const auto* a = std::get_if<IntMatrix>(&in);
    if (!a) throw ParseError("frobenius expects an int_matrix");
    const FrobeniusDecomposition f = frobenius_form(*a);
    spdlog::info("frobenius: {} invariant factors, U has {} bits", f.blocks.size(), max_bits(f.U));
    emit(io::to_json(f), cfg);
    return 0;
}

MatrixPolynomial load_matrix_poly(const json& j) {
    const io::Input in = io::parse_input(j);
    const auto* p = std::get_if<MatrixPolynomial>(&in);
    if (!p) throw ParseError("expected a matrix_poly");
    io::validate_specfact_input(*p);
    return *p;
}

int cmd_specfact(const RunConfig& cfg) {
    const MatrixPolynomial p = load_matrix_poly(load_input(cfg));
    spdlog::stopwatch sw;
    SpecfactResult r;
    if (p.monic) {
        r = spectral_factor(p, cfg.bits, cfg.specfact_options());
    } else {
        if (cfg.nonmonic_v.empty()) throw PreconditionError("non-monic input needs --nonmonic-v with V, lead = V V*");
        const RatMatrix v = io::rat_matrix_from(io::read_json_file(cfg.nonmonic_v));
        r = nonmonic_spectral_factor(p, v, cfg.bits, cfg.specfact_options());
    }
    const int code = io::specfact_exit_code(r);
    spdlog::info("specfact: n = {}, degree {}, {} in {:.3f} s", p.n, p.degree(),
                 code == 2 ? "NotPSD certificate" : "factor", sw);
    json out = io::to_json(r);
    if (cfg.check) {
        if (const auto* f = std::get_if<SpectralFactor>(&r))
            out["diagnostics"] = io::to_json(kappa_ceilings(p, *f, cfg.kappa_constant));
    }
    emit(out, cfg);
    return code;
}

int cmd_verify(const RunConfig& cfg) {
    if (cfg.result.empty()) throw Error("verify needs --result with a previous run's output");
    const json input = load_input(cfg);
    const json result = io::read_json_file(cfg.result);
    const std::string kind = result.value("kind", "");
    json report;
    bool pass = false;
    if (kind == "jnf") {
        const io::Input in = io::parse_input(input);
        const ApproxJNF r = io::jnf_from(result);
        IntMatrix a;
        if (const auto* m = std::get_if<IntMatrix>(&in)) a = *m;
        else if (const auto* q = std::get_if<RatMatrix>(&in)) a = q->num;
        else throw ParseError("jnf results are verified against an int_matrix or rat_matrix");
        const DiagnosticsReport d = kappa_ceilings(a, r, cfg.kappa_constant);
        report = io::to_json(d);
        pass = d.pass;
    } else if (kind == "spectral_factor") {
        const MatrixPolynomial p = load_matrix_poly(input);
        const DiagnosticsReport d = kappa_ceilings(p, io::spectral_factor_from(result), cfg.kappa_constant);
        report = io::to_json(d);
        pass = d.pass;
    } else if (kind == "not_psd_certificate") {
        const MatrixPolynomial p = load_matrix_poly(input);
        const NotPsdCertificate c = io::certificate_from(result);
        report["kind"] = "diagnostics";
        if (c.witness_x) {
            const PsdSample s = evaluate_and_check_psd_sample(p, *c.witness_x);
            report["witness_x"] = io::to_json(*c.witness_x);
            report["negative_eigenvalues"] = s.negative_eigenvalues;
            pass = !s.psd();
        } else {
            report["witness_x"] = nullptr;
        }
        report["pass"] = pass;
    } else {
        throw ParseError("verify does not know result kind \"" + kind + "\"");
    }
    emit(report, cfg);
    return pass ? 0 : 1;
}

int cmd_selftest(const RunConfig& cfg) {
    acceptance::SuiteConfig sc;
    sc.seed = cfg.seed;
    sc.threads = cfg.threads;
    sc.output_dir = cfg.output;
    sc.check_determinism = !cfg.skip_determinism;
    sc.options = cfg.specfact_options();
    sc.kappa_constant = cfg.kappa_constant;
    sc.progress = [](const std::string& line) { spdlog::info("{}", line); };
    const auto rep = acceptance::run_suite(sc);
    std::cout << acceptance::format_report(rep);
    std::cout << (rep.all_pass() ? "ALL PASS" : "SOME ITEMS FAILED") << std::endl;
    return rep.all_pass() ? 0 : 1;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("jordanforge");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("JORDANFORGE_LOG")) level = spdlog::level::from_str(env);
    spdlog::set_level(level);
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    RunConfig cfg;
    CLI::App app{"Certified approximate Jordan forms and spectral factorizations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--bits", cfg.bits, "target accuracy b (b' for roots)")->check(CLI::PositiveNumber);
    app.add_option("--input", cfg.input, "input JSON file");
    app.add_option("--output", cfg.output, "output JSON file (stdout if absent); selftest: result directory");
    app.add_flag("--check", cfg.check, "attach residual and condition diagnostics");
    app.add_option("--seed", cfg.seed, "seed for randomized tests");
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--bprime-constant", cfg.bprime_constant, "C in b' = b + C a n^3 ceil(log2(n+1))");
    app.add_option("--bpp-constant", cfg.bpp_constant, "C in b'' for spectral factorization");
    app.add_option("--real-threshold-constant", cfg.real_threshold_constant, "C in the realness threshold");
    app.add_option("--kappa-constant", cfg.kappa_constant, "C in the condition-number ceiling");
    app.add_option("--nonmonic-v", cfg.nonmonic_v, "matrix V with leading coefficient V V* (specfact)");
    app.add_option("--result", cfg.result, "output of a previous run (verify)");
    app.add_flag("--skip-determinism", cfg.skip_determinism, "selftest: do not rerun with another thread count");

    const std::pair<const char*, const char*> commands[] = {
        {"jnf", "approximate Jordan normal form of an integer or rational matrix"},
        {"roots", "certified roots with multiplicities of an integer polynomial"},
        {"frobenius", "exact Frobenius form A = U F U^-1"},
        {"specfact", "spectral factor of a PSD Hermitian matrix polynomial"},
        {"verify", "residual and condition diagnostics for a previous result"},
        {"selftest", "run the built-in acceptance suite"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->callback([&cfg, n = name] { cfg.command = n; });
    CLI11_PARSE(app, argc, argv);

    try {
        if (cfg.bprime_constant == 0 || cfg.bpp_constant == 0)
            spdlog::warn("a precision constant is 0; precondition failures are expected");
        kernels::set_threads(cfg.threads);
        if (cfg.command == "jnf") return cmd_jnf(cfg);
        if (cfg.command == "roots") return cmd_roots(cfg);
        if (cfg.command == "frobenius") return cmd_frobenius(cfg);
        if (cfg.command == "specfact") return cmd_specfact(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "selftest") return cmd_selftest(cfg);
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 1;
    }
    return 1;
}
