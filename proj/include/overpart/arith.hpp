#ifndef OVERPART_ARITH_HPP
#define OVERPART_ARITH_HPP

// Sieved arithmetic functions and direct divisor sums.
//
// Nothing in this header depends on series arithmetic: the divisor sums
// computed here are the independent reference for Lambert series
// coefficients.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "overpart/bigint.hpp"

namespace overpart::arith {

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
using Factorization = std::vector<std::pair<std::uint32_t, unsigned>>;

/// Smallest-prime-factor table for 1..limit.
class Sieve {
public:
    explicit Sieve(std::uint32_t limit);

    std::uint32_t limit() const noexcept { return limit_; }

    /// Smallest prime factor of n (spf(1) == 1). Throws std::out_of_range
    /// when n is zero or exceeds the limit.
    std::uint32_t spf(std::uint32_t n) const;

    bool is_prime(std::uint32_t n) const { return n >= 2 && spf(n) == n; }

    Factorization factorize(std::uint32_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
};

/// Reference factorizer by trial division; used to cross-check the sieve.
Factorization trial_factorize(std::uint64_t n);

/// Pair (alpha, beta) with 0 <= beta < alpha; selects the divisors
/// congruent to -beta modulo alpha.
class ModulusParams {
public:
    ModulusParams(std::uint32_t alpha, std::uint32_t beta);

    std::uint32_t alpha() const noexcept { return alpha_; }
    std::uint32_t beta() const noexcept { return beta_; }

    /// alpha * k - beta, for k >= 1.
    std::uint64_t part(std::uint64_t k) const noexcept { return alpha_ * k - beta_; }

    friend bool operator==(const ModulusParams&, const ModulusParams&) = default;

private:
    std::uint32_t alpha_;
    std::uint32_t beta_;
};

enum class Domain { exact, real };

enum class SequenceKind {
    zero,
    one,
    id,
    mu,
    abs_mu,
    alt_abs_mu, // (-1)^(n+1) |mu(n)|
    phi,
    liouville,
    mangoldt,
    omega,
    two_pow_omega,
    sigma,  // sigma_t, parameterized
    jordan, // J_t, parameterized
    chi,    // prime indicator
    n_chi,  // n * chi(n)
    sigma0_sq,
};

inline constexpr unsigned max_sequence_parameter = 8;

using Value = std::variant<BigInt, double>;

/// Evaluate one arithmetic function at n from its factorization.
/// Mangoldt yields a double; everything else an exact integer.
Value evaluate(SequenceKind kind, unsigned t, std::uint32_t n, const Factorization& f);

/// eval by name ("mu", "phi", "sigma_1", "jordan_2", ...). Throws
/// std::invalid_argument for an unknown name, std::out_of_range when n is
/// outside the sieve.
Value eval(const Sieve& sieve, std::string_view name, std::uint32_t n);

/// A named, memoized weight sequence n -> a_n, indexed from 1.
///
/// Copies share the memo table. Lookups are thread-safe; entries never
/// change once computed.
class ArithmeticSequence {
public:
    ArithmeticSequence(SequenceKind kind, std::shared_ptr<const Sieve> sieve, unsigned t = 0);

    /// Parses names such as "phi", "abs_mu", "sigma_1", "jordan_2".
    static ArithmeticSequence from_name(std::string_view name, std::shared_ptr<const Sieve> sieve);

    const std::string& name() const noexcept { return name_; }
    SequenceKind kind() const noexcept { return kind_; }
    unsigned parameter() const noexcept { return t_; }
    Domain domain() const noexcept;
    bool is_exact() const noexcept { return domain() == Domain::exact; }
    /// True when every value is known to be >= 0.
    bool nonnegative() const noexcept;
    const Sieve& sieve() const noexcept { return *sieve_; }
    std::shared_ptr<const Sieve> sieve_ptr() const noexcept { return sieve_; }

    Value value(std::uint32_t n) const;
    /// Exact value; throws std::domain_error for the real-valued sequence.
    BigInt exact(std::uint32_t n) const;
    double real(std::uint32_t n) const;

    /// Fills the memo for 1..limit so later lookups never write.
    void prefill(std::uint32_t limit) const;

private:
    struct Memo;

    SequenceKind kind_;
    unsigned t_;
    std::string name_;
    std::shared_ptr<const Sieve> sieve_;
    std::shared_ptr<Memo> memo_;
};

/// Every supported sequence name, in a stable order (sigma/jordan with t=1,2).
std::vector<std::string> sequence_names();

/// B(a, alpha, beta; n): sum of a_d over d >= 1 with (alpha*d - beta) | n.
/// Divisors are found by trial division, independent of the sieve.
BigInt divisor_sum_B(const ArithmeticSequence& a, const ModulusParams& m, std::uint64_t n);
double divisor_sum_B_real(const ArithmeticSequence& a, const ModulusParams& m, std::uint64_t n);

/// Sum over d | n of (-1)^(1+d) |mu(d)|.
BigInt alt_abs_mu_divisor_sum(const Sieve& sieve, std::uint32_t n);

/// All positive divisors of n in increasing order, by trial division.
std::vector<std::uint64_t> divisors(std::uint64_t n);

} // namespace overpart::arith

#endif
