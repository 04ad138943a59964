#ifndef OVERPART_IDENTITIES_HPP
#define OVERPART_IDENTITIES_HPP

// Identity checkers. Each checker evaluates the two sides of an identity
// through separate code paths and records every n it looked at.
//
// Sides are routed as follows:
//   A(a,alpha,beta;n)  sum over an S matrix read off (-q;q)/(q;q)
//   B on the left      trial-division divisor sum (arith)
//   B on the right     Lambert series coefficients (qseries)
//   Mbar_k(n)          coefficients of the Mbar_k generating function
//   pbar(n)            theta recurrence or product gf, whichever the
//                      identity itself does not use

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "overpart/arith.hpp"
#include "overpart/bigint.hpp"
#include "overpart/overpartitions.hpp"

namespace overpart::identities {

struct ReportParams {
    std::string sequence;
    std::optional<std::uint32_t> alpha;
    std::optional<std::uint32_t> beta;
    std::optional<std::uint32_t> k;
};

struct ReportRow {
    std::int64_t n;
    arith::Value lhs;
    arith::Value rhs;
    bool pass;
};

struct IdentityReport {
    std::string identity_id;
    ReportParams params;
    std::int64_t n_first = 0;
    std::int64_t n_last = -1;
    std::vector<ReportRow> rows;
    std::vector<ReportRow> violations;
    /// Observations that are not violations (e.g. vanishing right sides
    /// where a strict inequality is claimed).
    std::vector<std::string> notes;
    std::chrono::duration<double> elapsed{0};

    bool passed() const noexcept { return violations.empty(); }
};

/// Float-domain agreement:
///   |x - y| <= max(absolute, relative * max(|x|, |y|, scale))
/// where `scale` is the magnitude of the terms that were summed to get x
/// (a side that cancels to ~0 is judged against what it cancelled).
struct Tolerance {
    double relative = 1e-9;
    double absolute = 1e-12;
};

bool values_agree(const arith::Value& x, const arith::Value& y, Tolerance tol = {}, double scale = 0.0);
/// |x - y| / max(|x|, |y|), zero when both vanish.
double relative_residual(const arith::Value& x, const arith::Value& y);

/// Precomputed, immutable tables shared by the checkers: sieve, pbar from
/// both routes, the S matrix and Mbar_k coefficients for k <= k_max. All
/// check_* members are const and safe to call concurrently.
class Workbench {
public:
    Workbench(std::uint32_t n_max, std::uint32_t k_max);

    std::uint32_t n_max() const noexcept { return n_max_; }
    std::uint32_t k_max() const noexcept { return k_max_; }
    std::shared_ptr<const arith::Sieve> sieve() const noexcept { return sieve_; }

    arith::ArithmeticSequence sequence(std::string_view name) const;

    /// pbar(n) + 2 sum_j (-1)^j pbar(n - j^2) = delta_{0,n}, pbar from the
    /// product gf.
    IdentityReport check_rec(std::uint32_t n_max) const;

    /// (-1)^k (A(n) + 2 sum_{j<=k} (-1)^j A(n-j^2) - B(n)) = sum_j B(j) Mbar_k(n-j).
    IdentityReport check_th2(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                             std::uint32_t k, std::uint32_t n_max, Tolerance tol = {}) const;

    /// Sign form of check_th2 for nonnegative sequences: left side >= 0,
    /// and > 0 wherever n >= (k+1)^2 and the right-side convolution is
    /// nonzero. Throws std::invalid_argument for a sequence with negative
    /// values.
    IdentityReport check_c3(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                            std::uint32_t k, std::uint32_t n_max) const;

    /// A(n) + 2 sum_{j>=1} (-1)^j A(n-j^2) = B(n).
    IdentityReport check_th1(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                             std::uint32_t n_max, Tolerance tol = {}) const;

    /// pbar(n) = sum_{k=1}^{n+1} S(k, n+1) mu(k).
    IdentityReport check_mu_decomposition(std::uint32_t n_max) const;

    /// Totient family at (phi, 1, 0): distinct non-overlined sum, the
    /// Mbar_k identity for k = 1..k_max, the limit form and the parity
    /// remark.
    std::vector<IdentityReport> check_phi_suite(std::uint32_t k_max, std::uint32_t n_max) const;

    /// Prime-part family at (chi, 1, 0) plus the n*chi(n) variant.
    std::vector<IdentityReport> check_prime_suite(std::uint32_t k_max, std::uint32_t n_max) const;

    /// Squarefree family: |mu|, (-1)^(n+1)|mu(n)| by parity of n, and
    /// 2^omega with sigma_0(n^2).
    std::vector<IdentityReport> check_squarefree_suite(std::uint32_t k_max, std::uint32_t n_max) const;

    /// (q;q)/(-q;q) against the Gauss theta series, coefficientwise.
    static IdentityReport check_gauss(std::uint32_t order);

    /// (-q;q)/(q;q) * theta_k - 1 = (-1)^k Mbar_k gf, coefficientwise.
    static IdentityReport check_eq4(std::uint32_t k, std::uint32_t order);

    const std::vector<BigInt>& mbar_coefficients(std::uint32_t k) const;

private:
    void require(std::uint32_t n, std::uint32_t k) const;

    std::uint32_t n_max_;
    std::uint32_t k_max_;
    std::shared_ptr<const arith::Sieve> sieve_;
    std::vector<BigInt> pbar_gf_;
    std::vector<BigInt> pbar_rec_;
    overpartitions::SMatrix s_;
    std::vector<std::vector<BigInt>> mbar_; // mbar_[k][n]
};

/// Sequences in the verification grid.
std::vector<std::string> identity_grid_sequences();
/// Nonnegative subset used for the sign checks.
std::vector<std::string> sign_grid_sequences();
/// All (alpha, beta) with 1 <= alpha <= alpha_max, 0 <= beta < alpha.
std::vector<arith::ModulusParams> modulus_grid(std::uint32_t alpha_max);

using ReportTask = std::function<std::vector<IdentityReport>()>;

/// Runs tasks on up to `threads` workers; results keep task order.
std::vector<IdentityReport> run_tasks(const std::vector<ReportTask>& tasks, unsigned threads = 0);

} // namespace overpart::identities

#endif
