#ifndef OVERPART_OVERPARTITIONS_HPP
#define OVERPART_OVERPARTITIONS_HPP

// Overpartition statistics, each available through a brute-force
// enumeration route and a series/recurrence route.

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "overpart/arith.hpp"
#include "overpart/bigint.hpp"

namespace overpart::overpartitions {

struct Part {
    std::uint32_t size;
    bool overlined;

    friend bool operator==(const Part&, const Part&) = default;
};

/// Parts sorted by size nonincreasing; within a size the overlined copy (at
/// most one) comes first.
class Overpartition {
public:
    Overpartition() = default;
    /// Throws std::invalid_argument if the parts violate the ordering or
    /// overline rules.
    explicit Overpartition(std::vector<Part> parts);

    const std::vector<Part>& parts() const noexcept { return parts_; }
    std::uint64_t weight() const noexcept;
    bool empty() const noexcept { return parts_.empty(); }

    /// "3* 3 2 1*" with '*' marking overlined parts; "()" when empty.
    std::string to_string() const;

    friend bool operator==(const Overpartition&, const Overpartition&) = default;

private:
    std::vector<Part> parts_;
};

/// Streams every overpartition of n exactly once. Underlying partitions come
/// in reverse lexicographic order; for each, the overline choices run as a
/// binary counter whose lowest bit is the largest distinct size.
class OverpartitionGenerator {
public:
    explicit OverpartitionGenerator(std::uint32_t n);

    std::optional<Overpartition> next();

private:
    bool advance_partition();
    Overpartition build() const;

    std::vector<std::uint32_t> partition_;
    std::vector<std::uint32_t> distinct_;
    std::uint64_t mask_ = 0;
    bool done_ = false;
};

template <typename F>
void for_each_overpartition(std::uint32_t n, F&& f) {
    OverpartitionGenerator gen(n);
    while (auto op = gen.next())
        f(*op);
}

std::vector<Overpartition> enumerate(std::uint32_t n);

inline constexpr std::uint32_t enumeration_cap = 40;

/// Aggregates gathered in one pass over the overpartitions of n.
struct EnumerationStats {
    std::uint64_t count = 0;
    /// s[k] = number of non-overlined parts equal to k (index 0 unused).
    std::vector<std::uint64_t> s;
    std::uint64_t overlined_size_sum = 0;
    /// Sum over overpartitions of the distinct sizes occurring non-overlined.
    std::uint64_t distinct_nonoverlined_sum = 0;
};

EnumerationStats enumeration_stats(std::uint32_t n);

/// Memoized overpartition counts by the theta recurrence
///   pbar(n) = delta_{0,n} - 2 sum_{j>=1} (-1)^j pbar(n - j^2).
/// Thread-safe; extension is single-writer.
class PbarTable {
public:
    BigInt operator()(std::int64_t n) const;
    /// Values pbar(0..n).
    std::vector<BigInt> prefix(std::size_t n) const;

private:
    void extend(std::size_t n) const;

    mutable std::mutex mutex_;
    mutable std::vector<BigInt> values_;
};

/// Process-wide table.
const PbarTable& pbar_table();
/// pbar(n) from the process-wide table; 0 for n < 0.
BigInt pbar(std::int64_t n);
/// pbar(0..n) read off the product generating function.
std::vector<BigInt> pbar_from_gf(std::size_t n);

enum class SMethod { series, enumerate };

/// S(k, n): non-overlined parts equal to k across all overpartitions of n.
BigInt s_count(std::uint32_t k, std::int64_t n, SMethod method);

/// S(1..n, n) as one row; index 0 holds S(0,n) := 0.
class STable {
public:
    STable(std::uint32_t n, std::vector<BigInt> values);

    std::uint32_t n() const noexcept { return n_; }
    /// Zero for k > n.
    const BigInt& operator()(std::uint32_t k) const;

private:
    std::uint32_t n_;
    std::vector<BigInt> values_;
    static const BigInt zero_;
};

STable s_table(std::uint32_t n, SMethod method);

/// S(k, n) for all 1 <= k <= n <= max_n via the series route
/// S(k,n) = coefficient of q^n in q^k/(1-q^k) * (-q;q)_inf/(q;q)_inf.
class SMatrix {
public:
    explicit SMatrix(std::uint32_t max_n);

    std::uint32_t max_n() const noexcept { return max_n_; }
    /// Zero outside 1 <= k <= n, and for n < 0.
    BigInt operator()(std::int64_t k, std::int64_t n) const;

private:
    std::uint32_t max_n_;
    std::vector<std::vector<BigInt>> rows_; // rows_[n][k]
};

enum class AMethod {
    direct,      // sum_k S(alpha k - beta, n) a_k with series-route S
    enumerate,   // same sum with S counted by enumeration
    gf,          // coefficient of (-q;q)/(q;q) * Lambert series
    convolution, // sum_j B(a,alpha,beta; j) pbar(n - j)
};

/// A(a, alpha, beta; n); zero for n <= 0.
arith::Value a_stat(const arith::ArithmeticSequence& a, const arith::ModulusParams& m, std::int64_t n,
                    AMethod method);

/// A(a, alpha, beta; 0..max_n) for an exact sequence.
std::vector<BigInt> a_values(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                             std::uint32_t max_n, AMethod method);
/// Same for any sequence, in double precision.
std::vector<double> a_values_real(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                                  std::uint32_t max_n, AMethod method);

/// Direct A over a prebuilt S matrix (shared across many sequences).
std::vector<BigInt> a_values_direct(const SMatrix& s, const arith::ArithmeticSequence& a,
                                    const arith::ModulusParams& m, std::uint32_t max_n);
std::vector<double> a_values_direct_real(const SMatrix& s, const arith::ArithmeticSequence& a,
                                         const arith::ModulusParams& m, std::uint32_t max_n);

enum class MbarMethod { gf, enumerate };

/// Mbar_k(n): overpartitions of n whose least part size exceeding k occurs
/// at least k+1 times, overlined copy included. Zero for n < 0.
BigInt mbar(std::uint32_t k, std::int64_t n, MbarMethod method);

/// Readings of "the first part larger than k" for the enumeration predicate.
enum class MbarReading { least_exceeding, greatest };

bool mbar_predicate(const Overpartition& op, std::uint32_t k, MbarReading reading);
std::uint64_t mbar_enumerate(std::uint32_t k, std::uint32_t n, MbarReading reading);

enum class DistinctSumMethod { enumerate, convolution };

/// Sum of the non-overlined part sizes counted without multiplicity, over
/// all overpartitions of n. Convolution route: sum_j j * pbar(n - j).
BigInt distinct_nonoverlined_sum(std::uint32_t n, DistinctSumMethod method);

} // namespace overpart::overpartitions

#endif
