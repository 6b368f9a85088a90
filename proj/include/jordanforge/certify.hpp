#pragma once

// Exact residuals and certified condition-number checks. Norms of residuals
// are reported squared so that they stay rational.

#include "jordanforge/jnf.hpp"
#include "jordanforge/linalg.hpp"
#include "jordanforge/specfact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jforge {

/// ||(A/q) V - V J||_max^2 with q = jnf.eigen_den, exact.
Rational jnf_residual(const IntMatrix& a, const ApproxJNF& jnf);

/// max_k ||P_k - (Q*Q)_k||_max^2 over all coefficients, exact.
Rational factor_residual(const MatrixPolynomial& p, const SpectralFactor& q);

/// Q*(x) Q(x) coefficientwise, for Q given by all its coefficients (low to high).
std::vector<RatMatrix> star_product(const std::vector<RatMatrix>& q);

/// [Y; Y K; ...; Y K^(k-1)].
RatMatrix krylov_stack(const RatMatrix& y, const RatMatrix& k, std::size_t blocks);

struct SubmatrixConditionReport {
    std::size_t D = 0;
    std::size_t k = 0;
    Interval sigma_WD;  // sigma_D(W_D)
    Interval sigma_Wk;  // sigma_D(W_k)
    Rational norm_K_sq_lo;
    bool rank_deficient = false;  // W_k has rank < D, so both sides vanish
    bool holds = false;
};

/// Certifies sigma_D(W_D) >= sigma_D(W_k) / (sqrt(k) (4||K||)^(D(k-D+1))).
/// Y is r x D, K is D x D with ||K|| >= 1, k >= D.
SubmatrixConditionReport submatrix_condition_check(const RatMatrix& y, const RatMatrix& k_mat, std::size_t k,
                                                   std::uint64_t target_bits = 64);

struct CeilingCheck {
    std::string name;
    std::optional<Rational> measured;  // certified upper end; empty when unbounded
    Rational ceiling;                  // certified lower end of the allowed value
    double measured_log2 = 0;          // for display only
    double ceiling_log2 = 0;           // for display only
    bool pass = false;
};

struct DiagnosticsReport {
    std::optional<Rational> residual_sq;
    std::vector<std::pair<std::string, KappaEnclosure>> kappa_enclosures;
    std::vector<CeilingCheck> ceilings;
    bool pass = true;
};

/// Lower-rounded floor(log2 n) based ceiling C a n^3 (1 + floor(log2 n))^2 for kappa(V_hat).
std::uint64_t kappa_ceiling_log2(std::size_t a, std::size_t n, std::uint64_t constant = 8);

/// kappa(V_hat) against 2^(C a n^3 (1 + log2 n)^2), a = input bit length.
DiagnosticsReport kappa_ceilings(const IntMatrix& a, const ApproxJNF& jnf, std::uint64_t constant = 8);

/// kappa(V_hat) as above plus kappa(V_{>=0}) against
/// kappa(V) sqrt(2dn) (4 + 4||C_P||)^(dn(dn+1)).
DiagnosticsReport kappa_ceilings(const MatrixPolynomial& p, const SpectralFactor& f, std::uint64_t constant = 8);

double approx_log2(const Rational& x);

}  // namespace jforge
