#include "suite.hpp"

#include "oracles.hpp"

#include "jordanforge/certify.hpp"
#include "jordanforge/io.hpp"
#include "jordanforge/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace jforge::acceptance {

namespace fs = std::filesystem;
using io::json;

namespace {

std::string fmt(double x) {
    if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

// Half the log2 of a ratio of squared norms, i.e. log2 of the norm ratio.
double half_log2(const Rational& num_sq, const Rational& den_sq) {
    if (sgn(num_sq) == 0) return -INFINITY;
    return (approx_log2(num_sq) - approx_log2(den_sq)) / 2;
}

std::mt19937_64 item_rng(std::uint64_t seed, int item) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(item)};
    return std::mt19937_64(seq);
}

ItemResult make_item(int id, std::string name) {
    ItemResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

long pick(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

RatMatrix jhat(const ApproxJNF& r) {
    // Built from the block list alone, independently of ApproxJNF::scaled_J.
    const std::size_t n = r.dim();
    QiMatrix j(n, n);
    std::size_t off = 0;
    for (std::size_t b = 0; b < r.blocks.size(); ++b) {
        const GaussRat lam = r.blocks[b].eigenvalue.value() / GaussRat(Rational(r.eigen_den));
        for (std::size_t k = 0; k < r.blocks[b].size; ++k) {
            j(off + k, off + k) = lam;
            if (k + 1 < r.blocks[b].size) j(off + k, off + k + 1) = 1;
        }
        off += r.blocks[b].size;
    }
    return RatMatrix::from_qi(j);
}

Rational max_coeff_sq(const std::vector<RatMatrix>& cs) {
    Rational m = 0;
    for (const auto& c : cs) m = std::max(m, max_abs_sq(c));
    return m;
}

std::vector<RatMatrix> all_coeffs(const SpectralFactor& f) {
    std::vector<RatMatrix> q;
    for (std::size_t i = 0; i <= f.degree(); ++i) q.push_back(f.coeff(i));
    return q;
}

std::vector<RatMatrix> all_coeffs(const MatrixPolynomial& p) {
    std::vector<RatMatrix> c;
    for (std::size_t i = 0; i <= p.degree(); ++i) c.push_back(p.coeff(i));
    return c;
}

Rational residual_sq(const MatrixPolynomial& p, const SpectralFactor& f) {
    const auto prod = oracle::star_product(all_coeffs(f));
    if (prod.size() != p.degree() + 1) throw InternalError("factor degree does not match");
    Rational worst = 0;
    for (std::size_t k = 0; k < prod.size(); ++k) worst = std::max(worst, max_abs_sq(p.coeff(k) - prod[k]));
    return worst;
}

MatrixPolynomial monic_from(const std::vector<RatMatrix>& all) {
    MatrixPolynomial p;
    p.n = all.at(0).rows();
    p.coeffs.assign(all.begin(), all.end() - 1);
    return p;
}

struct JnfRecord {
    IntMatrix a;
    ApproxJNF jnf;
    std::string tag;
};

struct FactorRecord {
    MatrixPolynomial p;
    SpectralFactor f;
    std::string tag;
};

class Runner {
public:
    Runner(const SuiteConfig& cfg, fs::path dir) : cfg_(cfg), dir_(std::move(dir)) {}

    SuiteReport run() {
        SuiteReport rep;
        using Item = ItemResult (Runner::*)();
        const Item items[] = {&Runner::item1, &Runner::item2, &Runner::item3_4, &Runner::item5, &Runner::item6,
                              &Runner::item7, &Runner::item8, &Runner::item9, &Runner::item10};
        for (Item it : items) {
            const auto t0 = std::chrono::steady_clock::now();
            ItemResult r = (this->*it)();
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (r.id == 3) {
                rep.items.push_back(r);
                if (cfg_.progress) cfg_.progress(format_line(r) + "  (" + fmt(s) + " s)");
                rep.items.push_back(item4_);
                if (cfg_.progress) cfg_.progress(format_line(item4_));
                continue;
            }
            if (cfg_.progress) cfg_.progress(format_line(r) + "  (" + fmt(s) + " s)");
            rep.items.push_back(std::move(r));
        }
        std::ofstream(dir_ / "report.txt", std::ios::binary) << format_report(rep);
        return rep;
    }

private:
    void save(int item, std::size_t idx, json j) {
        char name[32];
        std::snprintf(name, sizeof name, "item%02d_%03zu.json", item, idx);
        io::write_json_file(j, (dir_ / name).string());
    }

    template <class F>
    void guarded(ItemResult& r, std::size_t idx, F&& body) {
        ++r.total;
        try {
            if (body()) ++r.passed;
            else r.failures.push_back("instance " + std::to_string(idx) + ": tolerance exceeded");
        } catch (const std::exception& e) {
            r.failures.push_back("instance " + std::to_string(idx) + ": " + e.what());
        }
    }

    // ---------------------------------------------------------------- 1
    ItemResult item1() {
        ItemResult r = make_item(1, "JNF reconstruction");
        auto rng = item_rng(cfg_.seed, 1);
        double worst = -INFINITY;
        for (std::size_t i = 0; i < 50; ++i) {
            const std::size_t n = 2 + i % 5;
            const long a = 2 + 2 * static_cast<long>(i % 4);
            const long half = 1L << (a - 1);
            IntMatrix m = oracle::random_int_matrix(rng, n, n, -half, half - 1);
            guarded(r, i, [&] {
                ApproxJNF j = jnf(m, 64, cfg_.options.jnf);
                const RatMatrix v = j.V_hat.to_rat();
                const RatMatrix jh = jhat(j);
                const Rational res = oracle::jnf_residual_sq(m, v, jh);
                if (res != jnf_residual(m, j)) throw InternalError("jnf_residual disagrees with the oracle");
                const Rational n4 = Rational(static_cast<long>(n * n * n * n));
                const Rational bound = pow2q(-120) * n4 * max_abs_sq(v) * max_abs_sq(jh);
                const double ratio = half_log2(res, bound);
                worst = std::max(worst, ratio);
                json out{{"item", 1}, {"input", io::to_json(m)}, {"result", io::to_json(j)},
                         {"residual_sq", io::to_json(res)}, {"pass", res <= bound}};
                save(1, i, out);
                jnfs_.push_back({m, std::move(j), "item1/" + std::to_string(i)});
                return res <= bound;
            });
        }
        r.measured = "max log2(residual/tolerance) " + fmt(worst);
        r.tolerance = "<= 0";
        return r;
    }

    // ---------------------------------------------------------------- 2
    ItemResult item2() {
        ItemResult r = make_item(2, "JNF structure exactness");
        auto rng = item_rng(cfg_.seed, 2);
        for (std::size_t i = 0; i < 30; ++i) {
            const std::size_t n = 2 + i % 5;
            std::vector<std::pair<long, std::size_t>> blocks;
            std::size_t left = n;
            while (left > 0) {
                const auto s = static_cast<std::size_t>(pick(rng, 1, static_cast<long>(std::min<std::size_t>(3, left))));
                // A small eigenvalue pool makes repeated eigenvalues across blocks common.
                blocks.emplace_back(pick(rng, -2, 2), s);
                left -= s;
            }
            const IntMatrix s = oracle::unimodular(rng, n);
            const RatMatrix ar = RatMatrix(s) * RatMatrix(oracle::jordan_matrix(blocks)) * exact_inverse(s);
            if (!ar.is_integral()) throw InternalError("unimodular conjugate is not integral");
            const IntMatrix a = ar.num;
            guarded(r, i, [&] {
                ApproxJNF j = jnf(a, 64, cfg_.options.jnf);
                std::vector<std::pair<Rational, std::size_t>> want;
                std::vector<std::pair<Rational, std::size_t>> got;
                for (const auto& [l, sz] : blocks) want.emplace_back(Rational(l), sz);
                bool real = true;
                for (const auto& b : j.blocks) {
                    const GaussRat v = b.eigenvalue.value();
                    real = real && v.is_real();
                    got.emplace_back(v.re, b.size);
                }
                std::sort(want.begin(), want.end());
                std::sort(got.begin(), got.end());
                const bool ok = real && want == got;
                json prescribed = json::array();
                for (const auto& [l, sz] : blocks) prescribed.push_back({{"eigenvalue", std::to_string(l)}, {"size", sz}});
                save(2, i, {{"item", 2}, {"input", io::to_json(a)}, {"prescribed", prescribed},
                            {"result", io::to_json(j)}, {"pass", ok}});
                jnfs_.push_back({a, std::move(j), "item2/" + std::to_string(i)});
                return ok;
            });
        }
        r.measured = "multiset mismatches " + std::to_string(r.total - r.passed);
        r.tolerance = "0";
        return r;
    }

    // ------------------------------------------------------------- 3 and 4
    ItemResult item3_4() {
        ItemResult r = make_item(3, "root finder vs oracle");
        item4_ = make_item(4, "Mahler mingap bound");
        auto rng = item_rng(cfg_.seed, 3);
        double worst = -INFINITY;
        double tightest = INFINITY;
        for (std::size_t i = 0; i < 30; ++i) {
            const oracle::ConstructedPoly cp = oracle::constructed_poly(rng, 128);
            std::vector<RootCluster> clusters;
            std::uint64_t bits = 0;
            guarded(r, i, [&] {
                bits = std::max<std::uint64_t>(64, min_root_bits(cp.poly));
                clusters = approx_roots_with_mults(cp.poly, bits);
                if (clusters.size() != cp.roots.size()) return false;
                std::vector<bool> used(cp.roots.size(), false);
                const Rational tol = pow2q(-128);
                for (const auto& c : clusters) {
                    bool found = false;
                    for (std::size_t k = 0; k < cp.roots.size() && !found; ++k) {
                        if (used[k]) continue;
                        const Rational d = oracle::far_distance_sq(c.value, cp.roots[k].box);
                        if (d <= tol && c.multiplicity == cp.roots[k].multiplicity) {
                            used[k] = true;
                            found = true;
                            worst = std::max(worst, approx_log2(d) / 2);
                        }
                    }
                    if (!found) return false;
                }
                return true;
            });
            guarded(item4_, i, [&] {
                const Rational bound = mahler_mingap_bound(cp.poly);
                for (std::size_t x = 0; x < cp.roots.size(); ++x)
                    for (std::size_t y = x + 1; y < cp.roots.size(); ++y) {
                        const Rational g = oracle::gap_sq(cp.roots[x].box, cp.roots[y].box);
                        tightest = std::min(tightest, half_log2(g, bound * bound));
                        if (g < bound * bound) return false;
                    }
                return true;
            });
            json roots = json::array();
            for (const auto& rt : cp.roots)
                roots.push_back({{"label", rt.label},
                                 {"multiplicity", rt.multiplicity},
                                 {"re", {io::to_json(rt.box.re.lo), io::to_json(rt.box.re.hi)}},
                                 {"im", {io::to_json(rt.box.im.lo), io::to_json(rt.box.im.hi)}}});
            save(3, i, {{"item", 3}, {"input", io::to_json(cp.poly)}, {"oracle", roots},
                        {"result", io::to_json(clusters, bits)}});
        }
        r.measured = "max log2 distance " + fmt(worst);
        r.tolerance = "<= -64";
        item4_.measured = "min log2(gap/bound) " + fmt(tightest);
        item4_.tolerance = ">= 0";
        return r;
    }

    // ---------------------------------------------------------------- 5
    ItemResult item5() {
        ItemResult r = make_item(5, "spectral factorization round trip");
        auto rng = item_rng(cfg_.seed, 5);
        const std::pair<std::size_t, std::size_t> shapes[] = {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}};
        double worst_q = -INFINITY;
        double worst_res = -INFINITY;
        for (std::size_t i = 0; i < 30; ++i) {
            auto [n, d] = shapes[i % 5];
            if (i % 15 == 14) std::tie(n, d) = std::make_pair<std::size_t, std::size_t>(3, 2);
            std::vector<IntMatrix> factors;
            for (std::size_t k = 0; k < d; ++k) factors.push_back(oracle::upper_half_plane_matrix(rng, n, 4));
            const std::vector<RatMatrix> q = oracle::monic_product(factors);
            const std::vector<RatMatrix> pc = oracle::star_product(q);
            const MatrixPolynomial p = monic_from(pc);
            guarded(r, i, [&] {
                SpecfactResult res = spectral_factor(p, 64, cfg_.options);
                const auto* f = std::get_if<SpectralFactor>(&res);
                if (!f) return false;
                Rational err = 0;
                for (std::size_t k = 0; k < d; ++k) err = std::max(err, max_abs_sq(f->coeff(k) - q[k]));
                const Rational qn = max_coeff_sq(q);
                const Rational resid = residual_sq(p, *f);
                if (resid != factor_residual(p, *f)) throw InternalError("factor_residual disagrees with the oracle");
                const Rational pn = max_coeff_sq(pc);
                worst_q = std::max(worst_q, half_log2(err, qn));
                worst_res = std::max(worst_res, half_log2(resid, pn));
                const bool ok = err <= pow2q(-120) * qn && resid <= pow2q(-112) * pn;
                json qj = json::array();
                for (const auto& c : q) qj.push_back(io::to_json(c));
                save(5, i, {{"item", 5}, {"input", io::to_json(p)}, {"Q", qj}, {"result", io::to_json(*f, false)},
                            {"pass", ok}});
                factors_.push_back({p, *f, "item5/" + std::to_string(i)});
                return ok;
            });
        }
        r.measured = "max log2 relative error " + fmt(worst_q) + ", residual " + fmt(worst_res);
        r.tolerance = "<= -60, <= -56";
        return r;
    }

    // ---------------------------------------------------------------- 6
    ItemResult item6() {
        ItemResult r = make_item(6, "degenerate PSD handling");
        auto scalar = [](std::vector<long> c) {
            MatrixPolynomial p;
            p.n = 1;
            for (long x : c) p.coeffs.emplace_back(from_integers({{x}}));
            return p;
        };
        MatrixPolynomial x2i2;
        x2i2.n = 2;
        x2i2.coeffs = {RatMatrix(IntMatrix(2, 2)), RatMatrix(IntMatrix(2, 2))};
        struct Case {
            MatrixPolynomial p;
            std::vector<std::pair<long, std::size_t>> half;  // documented (eigenvalue, size) of J_{>=0}
        };
        const std::vector<Case> cases = {{scalar({0, 0}), {{0, 1}}},
                                         {scalar({1, 0, -2, 0}), {{-1, 1}, {1, 1}}},
                                         {x2i2, {{0, 1}, {0, 1}}}};
        for (std::size_t i = 0; i < cases.size(); ++i) {
            guarded(r, i, [&] {
                SpecfactResult res = spectral_factor(cases[i].p, 64, cfg_.options);
                const auto* f = std::get_if<SpectralFactor>(&res);
                if (!f) return false;
                std::vector<std::pair<Rational, std::size_t>> got;
                for (const auto& b : f->half_blocks) {
                    const GaussRat v = b.eigenvalue.value() / GaussRat(Rational(f->eigen_den));
                    if (!v.is_real()) return false;
                    got.emplace_back(v.re, b.size);
                }
                std::vector<std::pair<Rational, std::size_t>> want;
                for (const auto& [l, s] : cases[i].half) want.emplace_back(Rational(l), s);
                std::sort(got.begin(), got.end());
                const Rational resid = residual_sq(cases[i].p, *f);
                const bool ok = resid == 0 && got == want;
                save(6, i, {{"item", 6}, {"input", io::to_json(cases[i].p)}, {"result", io::to_json(*f, false)},
                            {"residual_sq", io::to_json(resid)}, {"pass", ok}});
                factors_.push_back({cases[i].p, *f, "item6/" + std::to_string(i)});
                return ok;
            });
        }
        r.measured = "nonzero residuals or wrong half blocks " + std::to_string(r.total - r.passed);
        r.tolerance = "0";
        return r;
    }

    // ---------------------------------------------------------------- 7
    ItemResult item7() {
        ItemResult r = make_item(7, "NotPSD certificate");
        auto rng = item_rng(cfg_.seed, 7);
        std::vector<MatrixPolynomial> cases;
        {
            MatrixPolynomial p;
            p.n = 1;
            p.coeffs = {RatMatrix(from_integers({{-1}})), RatMatrix(IntMatrix(1, 1))};
            cases.push_back(p);
        }
        auto hermitian = [&](std::size_t n) {
            IntMatrix h(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                h(i, i) = GaussInt(pick(rng, -3, 3));
                for (std::size_t j = i + 1; j < n; ++j) {
                    h(i, j) = GaussInt(pick(rng, -3, 3), pick(rng, -3, 3));
                    h(j, i) = conj(h(i, j));
                }
            }
            return RatMatrix(h);
        };
        while (cases.size() < 11) {
            MatrixPolynomial p;
            p.n = 1 + cases.size() % 2;
            p.coeffs = {hermitian(p.n), hermitian(p.n)};
            // Keep it only if a rational sample already shows indefiniteness.
            bool indefinite = false;
            for (long k = -8; k <= 8 && !indefinite; ++k)
                indefinite = !evaluate_and_check_psd_sample(p, Rational(k, 2)).psd();
            if (indefinite) cases.push_back(p);
        }
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const MatrixPolynomial& p = cases[i];
            guarded(r, i, [&] {
                SpecfactResult res = spectral_factor(p, 64, cfg_.options);
                const int code = io::specfact_exit_code(res);
                bool ok = code == 2;
                std::optional<Rational> found;
                if (const auto* c = std::get_if<NotPsdCertificate>(&res)) {
                    ok = ok && c->block_size % 2 == 1 && c->real_eigenvalue.is_real();
                    // Independent search near the certified eigenvalue.
                    const Rational lam = c->real_eigenvalue.value().re;
                    for (std::int64_t k = 0; k <= 96 && !found; ++k)
                        for (const Rational& x : {Rational(lam - pow2q(-k)), Rational(lam + pow2q(-k))})
                            if (!found && oracle::negative_inertia(p.evaluate(x)) > 0) found = x;
                    ok = ok && found.has_value();
                    if (c->witness_x) ok = ok && oracle::negative_inertia(p.evaluate(*c->witness_x)) > 0;
                }
                save(7, i, {{"item", 7}, {"input", io::to_json(p)}, {"exit_code", code},
                            {"result", io::to_json(res, false)},
                            {"oracle_point", found ? io::to_json(*found) : json(nullptr)}, {"pass", ok}});
                return ok;
            });
        }
        r.measured = "certificates confirmed " + std::to_string(r.passed);
        r.tolerance = "all, exit code 2";
        return r;
    }

    // ---------------------------------------------------------------- 8
    ItemResult item8() {
        ItemResult r = make_item(8, "submatrix conditioning inequality");
        auto rng = item_rng(cfg_.seed, 8);
        double tightest = INFINITY;
        for (std::size_t t = 0; t < 100; ++t) {
            const std::size_t D = 1 + t % 3;
            const std::size_t k = D + static_cast<std::size_t>(pick(rng, 0, static_cast<long>(6 - D)));
            const std::size_t rows = static_cast<std::size_t>(pick(rng, 1, 3));
            RatMatrix y(oracle::random_int_matrix(rng, rows, D, -3, 3));
            IntMatrix km = oracle::random_int_matrix(rng, D, D, -3, 3);
            if (t % 5 == 4) km = oracle::jordan_matrix({{1, D}});  // the stress case
            if (max_abs_sq(km) == 0) km(0, 0) = GaussInt(1);
            const RatMatrix kr(km);
            guarded(r, t, [&] {
                const SubmatrixConditionReport rep = submatrix_condition_check(y, kr, k);
                if (!rep.rank_deficient) {
                    const std::uint64_t e = static_cast<std::uint64_t>(D) * (k - D + 1);
                    const double lhs = approx_log2(rep.sigma_WD.lo) + 0.5 * std::log2(static_cast<double>(k)) +
                                       2.0 * static_cast<double>(e) + 0.5 * static_cast<double>(e) * approx_log2(rep.norm_K_sq_lo);
                    tightest = std::min(tightest, lhs - approx_log2(rep.sigma_Wk.hi));
                }
                save(8, t, {{"item", 8}, {"Y", io::to_json(y)}, {"K", io::to_json(kr)}, {"D", D}, {"k", k},
                            {"sigma_WD", {io::to_json(rep.sigma_WD.lo), io::to_json(rep.sigma_WD.hi)}},
                            {"sigma_Wk", {io::to_json(rep.sigma_Wk.lo), io::to_json(rep.sigma_Wk.hi)}},
                            {"rank_deficient", rep.rank_deficient}, {"holds", rep.holds}});
                return rep.holds;
            });
        }
        r.measured = "min log2 slack " + fmt(tightest);
        r.tolerance = ">= 0";
        return r;
    }

    // ---------------------------------------------------------------- 9
    ItemResult item9() {
        ItemResult r = make_item(9, "condition ceilings");
        double worst = -INFINITY;
        std::size_t idx = 0;
        auto account = [&](const DiagnosticsReport& rep, const std::string& tag) {
            for (const auto& c : rep.ceilings) {
                worst = std::max(worst, c.measured_log2 - c.ceiling_log2);
                if (!c.pass)
                    r.failures.push_back(tag + " " + c.name + ": measured log2 " + fmt(c.measured_log2) +
                                         " vs ceiling log2 " + fmt(c.ceiling_log2));
            }
        };
        for (const auto& rec : jnfs_) {
            guarded(r, idx, [&] {
                const DiagnosticsReport rep = kappa_ceilings(rec.a, rec.jnf, cfg_.kappa_constant);
                account(rep, rec.tag);
                save(9, idx, {{"item", 9}, {"source", rec.tag}, {"report", io::to_json(rep)}});
                return rep.pass;
            });
            ++idx;
        }
        for (const auto& rec : factors_) {
            guarded(r, idx, [&] {
                const DiagnosticsReport rep = kappa_ceilings(rec.p, rec.f, cfg_.kappa_constant);
                account(rep, rec.tag);
                save(9, idx, {{"item", 9}, {"source", rec.tag}, {"report", io::to_json(rep)}});
                return rep.pass;
            });
            ++idx;
        }
        r.measured = "max log2(kappa/ceiling) " + fmt(worst);
        r.tolerance = "<= 0";
        return r;
    }

    // --------------------------------------------------------------- 10
    ItemResult item10() {
        ItemResult r = make_item(10, "non-monic reduction");
        auto rng = item_rng(cfg_.seed, 10);
        double worst = -INFINITY;
        for (std::size_t i = 0; i < 10; ++i) {
            const std::size_t n = 1 + i % 2;
            const std::vector<RatMatrix> q = oracle::monic_product({oracle::upper_half_plane_matrix(rng, n, 4)});
            const std::vector<RatMatrix> pm = oracle::star_product(q);
            IntMatrix v;
            do v = oracle::random_int_matrix(rng, n, n, -3, 3);
            while (determinant(v) == GaussInt(0));
            const RatMatrix vr(v);
            const RatMatrix vs = conj_transpose(vr);
            MatrixPolynomial p;
            p.n = n;
            p.monic = false;
            for (const auto& c : pm) p.coeffs.push_back(vr * c * vs);
            guarded(r, i, [&] {
                SpecfactResult res = nonmonic_spectral_factor(p, vr, 64, cfg_.options);
                const auto* f = std::get_if<SpectralFactor>(&res);
                if (!f) return false;
                const std::int64_t lg = n > 1 ? 1 : 0;  // ceil(log2 n) for n <= 2
                const std::int64_t e = 64 - 16 * lg - static_cast<std::int64_t>(input_bits(p));
                const Rational resid = residual_sq(p, *f);
                const Rational pn = max_coeff_sq(all_coeffs(p));
                const Rational bound = pow2q(-2 * e) * pn;
                worst = std::max(worst, half_log2(resid, bound));
                const bool ok = resid <= bound;
                save(10, i, {{"item", 10}, {"input", io::to_json(p)}, {"V", io::to_json(v)},
                             {"result", io::to_json(*f, false)}, {"residual_sq", io::to_json(resid)}, {"pass", ok}});
                return ok;
            });
        }
        r.measured = "max log2(residual/tolerance) " + fmt(worst);
        r.tolerance = "<= 0";
        return r;
    }

    const SuiteConfig& cfg_;
    fs::path dir_;
    std::vector<JnfRecord> jnfs_;
    std::vector<FactorRecord> factors_;
    ItemResult item4_;
};

void reset_dir(const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& e : fs::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        if (name == "report.txt" || (name.rfind("item", 0) == 0 && e.path().extension() == ".json")) fs::remove(e.path());
    }
}

std::map<std::string, std::string> read_all(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        files[e.path().filename().string()] = ss.str();
    }
    return files;
}

SuiteReport run_items(const SuiteConfig& cfg, const fs::path& dir) {
    reset_dir(dir);
    const int saved = kernels::threads();
    kernels::set_threads(cfg.threads);
    Runner runner(cfg, dir);
    SuiteReport rep;
    try {
        rep = runner.run();
    } catch (...) {
        kernels::set_threads(saved);
        throw;
    }
    kernels::set_threads(saved);
    return rep;
}

}  // namespace

bool SuiteReport::all_pass() const {
    return !items.empty() && std::all_of(items.begin(), items.end(), [](const ItemResult& r) { return r.pass(); });
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    const fs::path dir = cfg.output_dir.empty()
                             ? fs::temp_directory_path() / ("jordanforge_acceptance_" + std::to_string(cfg.seed))
                             : fs::path(cfg.output_dir);
    SuiteReport rep = run_items(cfg, dir);
    if (!cfg.check_determinism) return rep;

    ItemResult det = make_item(11, "determinism across thread counts");
    SuiteConfig again = cfg;
    again.threads = cfg.threads == 1 ? 4 : 1;
    again.check_determinism = false;
    again.progress = nullptr;
    const fs::path dir2 = dir.string() + "_rerun";
    run_items(again, dir2);
    const auto a = read_all(dir);
    const auto b = read_all(dir2);
    for (const auto& [name, content] : a) {
        ++det.total;
        auto it = b.find(name);
        if (it != b.end() && it->second == content) ++det.passed;
        else det.failures.push_back(name + " differs between --threads " + std::to_string(cfg.threads) + " and " +
                                    std::to_string(again.threads));
    }
    for (const auto& [name, content] : b)
        if (!a.count(name)) {
            ++det.total;
            det.failures.push_back(name + " only produced by the rerun");
        }
    det.measured = "identical files " + std::to_string(det.passed) + "/" + std::to_string(det.total);
    det.tolerance = "all";
    if (cfg.progress) cfg.progress(format_line(det));
    rep.items.push_back(std::move(det));
    return rep;
}

std::string format_line(const ItemResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "%s %2d %-36s %3zu/%-3zu", r.pass() ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.passed, r.total);
    std::string line = head;
    if (!r.measured.empty()) line += "  " + r.measured + " (tolerance " + r.tolerance + ")";
    return line;
}

std::string format_report(const SuiteReport& rep) {
    std::string out;
    for (const auto& r : rep.items) {
        out += format_line(r) + "\n";
        for (const auto& f : r.failures) out += "       " + f + "\n";
    }
    return out;
}

}  // namespace jforge::acceptance
