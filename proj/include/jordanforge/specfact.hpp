#pragma once

// Spectral factorization P(x) = Q*(x) Q(x) of monic Hermitian matrix
// polynomials that are positive semidefinite on the real line, through the
// approximate JNF of the block companion matrix.

#include "jordanforge/jnf.hpp"
#include "jordanforge/matrix.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace jforge {

struct MatrixPolynomial {
    std::size_t n = 0;
    /// P_0 .. P_{deg-1} when monic (leading coefficient I implied),
    /// P_0 .. P_deg otherwise.
    std::vector<RatMatrix> coeffs;
    bool monic = true;

    std::size_t degree() const { return monic ? coeffs.size() : coeffs.size() - 1; }
    /// Coefficient of x^i, including the implied identity.
    RatMatrix coeff(std::size_t i) const;
    /// P(x) evaluated exactly.
    RatMatrix evaluate(const Rational& x) const;
    bool is_hermitian() const;
};

struct SpecfactOptions {
    JnfOptions jnf;
    /// C in b'' = b + C a (dn)^3 ceil(log2(dn+1)).
    std::uint64_t bpp_constant = 8;
    /// C in the realness threshold tau = 2^-(C a (nd)^2).
    std::uint64_t real_threshold_constant = 1;
};

struct SpectralFactorDiagnostics {
    std::optional<Rational> factor_residual_sq;  // ||P - Q*Q||_max^2 coefficientwise
    std::optional<KappaEnclosure> kappa_V;
    std::optional<KappaEnclosure> kappa_Vge;
};

struct SpectralFactor {
    /// Q_0 .. Q_{d-1}, sharing one exponent.
    std::vector<DyadicMatrix> coeffs;
    /// Leading coefficient; empty means the identity (monic factor).
    std::optional<RatMatrix> leading;
    std::uint64_t accuracy_bits = 0;
    std::uint64_t working_bits = 0;  // b''
    /// Sizes and eigenvalues of J_{>=0} in column order of V_{>=0}.
    std::vector<JordanBlockSpec> half_blocks;
    BigInt eigen_den{1};
    SpectralFactorDiagnostics diagnostics;
    /// Kept so callers can run condition diagnostics.
    ApproxJNF companion_jnf;
    DyadicMatrix V_ge;

    std::size_t degree() const { return coeffs.size(); }
    /// Coefficient of x^i as a rational matrix, including the leading one.
    RatMatrix coeff(std::size_t i) const;
};

struct NotPsdCertificate {
    DyadicComplex real_eigenvalue;  // exponent b'', imaginary part exactly zero
    std::size_t block_size = 1;     // odd
    std::size_t companion_block = 0;  // index into the companion JNF blocks
    /// A rational point where P is indefinite, when the sample search found one.
    std::optional<Rational> witness_x;
};

using SpecfactResult = std::variant<SpectralFactor, NotPsdCertificate>;

/// Identity blocks on the block superdiagonal, last block row -P_0 .. -P_{m-1}.
RatMatrix block_companion(const MatrixPolynomial& p);

struct EigenPartition {
    std::vector<std::size_t> plus;  // indices into jnf.blocks
    std::vector<std::size_t> zero;
    std::vector<std::size_t> minus;
};
/// Splits blocks by the sign of Im(lambda) with the snap threshold tau.
/// Throws InternalError when the upper and lower half planes do not pair up.
EigenPartition classify_eigenvalues(const ApproxJNF& jnf, std::size_t a, std::size_t n, std::size_t d,
                                    std::uint64_t real_threshold_constant = 1);

struct HalfSplit {
    std::vector<JordanBlockSpec> blocks;  // size s per input block of size 2s
    std::vector<std::size_t> columns;     // selected column indices
};
/// For every even block keeps half its size and its first half columns.
HalfSplit build_half(const std::vector<JordanBlockSpec>& zero_blocks, const std::vector<std::size_t>& zero_offsets);

std::uint64_t factor_precision(std::uint64_t b, std::size_t a, std::size_t dn, std::uint64_t constant);
/// Bit length of the input data: max over numerators and the common denominator.
std::size_t input_bits(const MatrixPolynomial& p);

SpecfactResult spectral_factor(const MatrixPolynomial& p, std::uint64_t b, const SpecfactOptions& opts = {});

/// P has leading coefficient V V*; factors V^{-1} P V^{-*} and returns
/// Q(x) = Q~(x) V* so that Q*Q = P.
SpecfactResult nonmonic_spectral_factor(const MatrixPolynomial& p, const RatMatrix& v, std::uint64_t b,
                                        const SpecfactOptions& opts = {});

struct PsdSample {
    RatMatrix value;  // P(x)
    std::size_t negative_eigenvalues = 0;
    bool psd() const { return negative_eigenvalues == 0; }
};
/// Exact P(x) and its number of negative eigenvalues (Descartes on the
/// real-rooted characteristic polynomial).
PsdSample evaluate_and_check_psd_sample(const MatrixPolynomial& p, const Rational& x);

}  // namespace jforge
