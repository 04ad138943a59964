#include "overpart/overpartitions.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>

#include "overpart/qseries.hpp"

namespace overpart::overpartitions {

Overpartition::Overpartition(std::vector<Part> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].size == 0)
            throw std::invalid_argument("overpartition parts must be positive");
        if (i == 0)
            continue;
        const auto& prev = parts_[i - 1];
        const auto& cur = parts_[i];
        if (cur.size > prev.size)
            throw std::invalid_argument("overpartition parts must be nonincreasing");
        if (cur.size == prev.size && cur.overlined)
            throw std::invalid_argument("only the first occurrence of a size may be overlined");
    }
}

std::uint64_t Overpartition::weight() const noexcept {
    std::uint64_t w = 0;
    for (const auto& p : parts_)
        w += p.size;
    return w;
}

std::string Overpartition::to_string() const {
    if (parts_.empty())
        return "()";
    std::string out;
    for (const auto& p : parts_) {
        if (!out.empty())
            out += ' ';
        out += std::to_string(p.size);
        if (p.overlined)
            out += '*';
    }
    return out;
}

OverpartitionGenerator::OverpartitionGenerator(std::uint32_t n) {
    if (n > 0)
        partition_.push_back(n);
    for (const auto v : partition_)
        if (distinct_.empty() || distinct_.back() != v)
            distinct_.push_back(v);
}

bool OverpartitionGenerator::advance_partition() {
    // Reverse lexicographic successor: strip trailing 1s, lower the last
    // part above 1, and refill greedily with parts no larger than it.
    std::uint32_t rem = 0;
    while (!partition_.empty() && partition_.back() == 1) {
        partition_.pop_back();
        ++rem;
    }
    if (partition_.empty())
        return false;
    const std::uint32_t v = --partition_.back();
    ++rem;
    while (rem > 0) {
        const std::uint32_t x = std::min(v, rem);
        partition_.push_back(x);
        rem -= x;
    }
    distinct_.clear();
    for (const auto p : partition_)
        if (distinct_.empty() || distinct_.back() != p)
            distinct_.push_back(p);
    return true;
}

Overpartition OverpartitionGenerator::build() const {
    std::vector<Part> parts;
    parts.reserve(partition_.size());
    std::size_t d = 0;
    for (std::size_t i = 0; i < partition_.size(); ++i) {
        const bool first = i == 0 || partition_[i - 1] != partition_[i];
        if (first && i != 0)
            ++d;
        parts.push_back({partition_[i], first && ((mask_ >> d) & 1u) != 0});
    }
    return Overpartition(std::move(parts));
}

std::optional<Overpartition> OverpartitionGenerator::next() {
    if (done_)
        return std::nullopt;
    auto current = build();
    if (++mask_ >= (std::uint64_t{1} << distinct_.size())) {
        mask_ = 0;
        done_ = !advance_partition();
    }
    return current;
}

std::vector<Overpartition> enumerate(std::uint32_t n) {
    std::vector<Overpartition> out;
    for_each_overpartition(n, [&](const Overpartition& op) { out.push_back(op); });
    return out;
}

EnumerationStats enumeration_stats(std::uint32_t n) {
    EnumerationStats st;
    st.s.assign(std::size_t{n} + 1, 0);
    for_each_overpartition(n, [&](const Overpartition& op) {
        ++st.count;
        std::uint32_t last_plain = 0;
        for (const auto& p : op.parts()) {
            if (p.overlined) {
                st.overlined_size_sum += p.size;
                continue;
            }
            ++st.s[p.size];
            if (p.size != last_plain) {
                st.distinct_nonoverlined_sum += p.size;
                last_plain = p.size;
            }
        }
    });
    return st;
}

BigInt PbarTable::operator()(std::int64_t n) const {
    if (n < 0)
        return 0;
    std::lock_guard lock(mutex_);
    extend(static_cast<std::size_t>(n));
    return values_[static_cast<std::size_t>(n)];
}

std::vector<BigInt> PbarTable::prefix(std::size_t n) const {
    std::lock_guard lock(mutex_);
    extend(n);
    return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n) + 1};
}

void PbarTable::extend(std::size_t n) const {
    for (std::size_t m = values_.size(); m <= n; ++m) {
        BigInt v = m == 0 ? 1 : 0;
        for (std::size_t j = 1; j * j <= m; ++j) {
            if (j % 2 == 0)
                v -= 2 * values_[m - j * j];
            else
                v += 2 * values_[m - j * j];
        }
        values_.push_back(std::move(v));
    }
}

const PbarTable& pbar_table() {
    static const PbarTable table;
    return table;
}

BigInt pbar(std::int64_t n) { return pbar_table()(n); }

std::vector<BigInt> pbar_from_gf(std::size_t n) {
    const auto gf = qseries::overpartition_gf(n);
    return {gf.coefficients().begin(), gf.coefficients().end()};
}

const BigInt STable::zero_{0};

STable::STable(std::uint32_t n, std::vector<BigInt> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != std::size_t{n} + 1)
        throw std::invalid_argument("S table row must hold entries 0..n");
}

const BigInt& STable::operator()(std::uint32_t k) const { return k <= n_ ? values_[k] : zero_; }

STable s_table(std::uint32_t n, SMethod method) {
    std::vector<BigInt> row(std::size_t{n} + 1);
    if (method == SMethod::enumerate) {
        const auto st = enumeration_stats(n);
        for (std::uint32_t k = 1; k <= n; ++k)
            row[k] = st.s[k];
    } else {
        const auto gf = qseries::overpartition_gf(n);
        for (std::uint32_t k = 1; k <= n; ++k) {
            auto s = qseries::TruncatedSeries::monomial(n, k, 1);
            s.divide_binomial(-1, k);
            // Only coefficient n of the product is needed.
            BigInt c = 0;
            for (std::uint32_t i = k; i <= n; ++i)
                c += s[i] * gf[n - i];
            row[k] = c;
        }
    }
    return STable(n, std::move(row));
}

BigInt s_count(std::uint32_t k, std::int64_t n, SMethod method) {
    if (k == 0)
        throw std::invalid_argument("part size k must be positive");
    if (n < 0 || k > n)
        return 0;
    return s_table(static_cast<std::uint32_t>(n), method)(k);
}

SMatrix::SMatrix(std::uint32_t max_n) : max_n_(max_n), rows_(std::size_t{max_n} + 1) {
    const auto gf = qseries::overpartition_gf(max_n);
    for (std::uint32_t n = 0; n <= max_n; ++n) {
        rows_[n].resize(std::size_t{n} + 1);
        // S(k,n) = S(k,n-k) + pbar(n-k)
        for (std::uint32_t k = 1; k <= n; ++k) {
            rows_[n][k] = gf[n - k];
            if (2 * k <= n)
                rows_[n][k] += rows_[n - k][k];
        }
    }
}

BigInt SMatrix::operator()(std::int64_t k, std::int64_t n) const {
    if (n < 0 || k < 1 || k > n)
        return 0;
    if (n > max_n_)
        throw std::out_of_range("S matrix built only up to n=" + std::to_string(max_n_));
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

namespace {

template <typename T, typename Weight>
std::vector<T> sum_over_rows(std::uint32_t max_n, const arith::ModulusParams& m,
                             const std::function<BigInt(std::uint32_t, std::uint32_t)>& s, Weight weight) {
    std::vector<T> out(std::size_t{max_n} + 1, T{0});
    for (std::uint32_t n = 1; n <= max_n; ++n) {
        T acc{0};
        for (std::uint64_t k = 1; m.part(k) <= n; ++k) {
            const BigInt skn = s(static_cast<std::uint32_t>(m.part(k)), n);
            if (skn != 0)
                acc += weight(skn, static_cast<std::uint32_t>(k));
        }
        out[n] = acc;
    }
    return out;
}

BigInt exact_weight(const arith::ArithmeticSequence& a, const BigInt& s, std::uint32_t k) {
    return s * a.exact(k);
}

double real_weight(const arith::ArithmeticSequence& a, const BigInt& s, std::uint32_t k) {
    return to_double(s) * a.real(k);
}

std::function<BigInt(std::uint32_t, std::uint32_t)> enumerated_s(std::uint32_t max_n) {
    auto rows = std::make_shared<std::vector<std::vector<std::uint64_t>>>();
    for (std::uint32_t n = 0; n <= max_n; ++n)
        rows->push_back(enumeration_stats(n).s);
    return [rows](std::uint32_t k, std::uint32_t n) { return BigInt{(*rows)[n][k]}; };
}

template <typename T>
std::vector<T> a_values_impl(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                             std::uint32_t max_n, AMethod method) {
    constexpr bool exact = std::is_same_v<T, BigInt>;
    auto weight = [&a](const BigInt& s, std::uint32_t k) -> T {
        if constexpr (exact)
            return exact_weight(a, s, k);
        else
            return real_weight(a, s, k);
    };
    switch (method) {
    case AMethod::direct: {
        const SMatrix s(max_n);
        return sum_over_rows<T>(max_n, m, [&s](std::uint32_t k, std::uint32_t n) { return s(k, n); }, weight);
    }
    case AMethod::enumerate:
        if (max_n > enumeration_cap)
            throw std::out_of_range("enumeration limited to n <= " + std::to_string(enumeration_cap));
        return sum_over_rows<T>(max_n, m, enumerated_s(max_n), weight);
    case AMethod::gf: {
        std::vector<T> out(std::size_t{max_n} + 1);
        if constexpr (exact) {
            const auto prod = qseries::overpartition_gf(max_n) * qseries::lambert_series(a, m, max_n);
            std::copy(prod.coefficients().begin(), prod.coefficients().end(), out.begin());
        } else {
            const auto prod = qseries::to_float(qseries::overpartition_gf(max_n)) *
                              qseries::lambert_series_real(a, m, max_n);
            std::copy(prod.coefficients().begin(), prod.coefficients().end(), out.begin());
        }
        return out;
    }
    case AMethod::convolution: {
        const auto p = pbar_table().prefix(max_n);
        std::vector<T> b(std::size_t{max_n} + 1, T{0});
        for (std::uint32_t j = 1; j <= max_n; ++j) {
            if constexpr (exact)
                b[j] = arith::divisor_sum_B(a, m, j);
            else
                b[j] = arith::divisor_sum_B_real(a, m, j);
        }
        std::vector<T> out(std::size_t{max_n} + 1, T{0});
        for (std::uint32_t n = 1; n <= max_n; ++n) {
            T acc{0};
            for (std::uint32_t j = 1; j <= n; ++j) {
                if (b[j] == T{0})
                    continue;
                if constexpr (exact)
                    acc += b[j] * p[n - j];
                else
                    acc += b[j] * to_double(p[n - j]);
            }
            out[n] = acc;
        }
        return out;
    }
    }
    throw std::logic_error("unhandled A method");
}

} // namespace

std::vector<BigInt> a_values(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                             std::uint32_t max_n, AMethod method) {
    if (!a.is_exact())
        throw std::domain_error("sequence '" + a.name() + "' is real-valued; use a_values_real");
    return a_values_impl<BigInt>(a, m, max_n, method);
}

std::vector<double> a_values_real(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                                  std::uint32_t max_n, AMethod method) {
    return a_values_impl<double>(a, m, max_n, method);
}

std::vector<BigInt> a_values_direct(const SMatrix& s, const arith::ArithmeticSequence& a,
                                    const arith::ModulusParams& m, std::uint32_t max_n) {
    return sum_over_rows<BigInt>(max_n, m, [&s](std::uint32_t k, std::uint32_t n) { return s(k, n); },
                                 [&a](const BigInt& v, std::uint32_t k) { return exact_weight(a, v, k); });
}

std::vector<double> a_values_direct_real(const SMatrix& s, const arith::ArithmeticSequence& a,
                                         const arith::ModulusParams& m, std::uint32_t max_n) {
    return sum_over_rows<double>(max_n, m, [&s](std::uint32_t k, std::uint32_t n) { return s(k, n); },
                                 [&a](const BigInt& v, std::uint32_t k) { return real_weight(a, v, k); });
}

arith::Value a_stat(const arith::ArithmeticSequence& a, const arith::ModulusParams& m, std::int64_t n,
                    AMethod method) {
    if (!a.is_exact()) {
        if (n <= 0)
            return 0.0;
        return a_values_real(a, m, static_cast<std::uint32_t>(n), method).back();
    }
    if (n <= 0)
        return BigInt{0};
    return a_values(a, m, static_cast<std::uint32_t>(n), method).back();
}

bool mbar_predicate(const Overpartition& op, std::uint32_t k, MbarReading reading) {
    const auto& parts = op.parts();
    if (parts.empty())
        return false;
    std::uint32_t target = 0;
    if (reading == MbarReading::greatest) {
        target = parts.front().size;
        if (target <= k)
            return false;
    } else {
        // Parts are nonincreasing: the least size above k is the last one seen.
        for (const auto& p : parts)
            if (p.size > k)
                target = p.size;
        if (target == 0)
            return false;
    }
    const auto multiplicity =
        std::count_if(parts.begin(), parts.end(), [target](const Part& p) { return p.size == target; });
    return static_cast<std::uint64_t>(multiplicity) >= std::uint64_t{k} + 1;
}

std::uint64_t mbar_enumerate(std::uint32_t k, std::uint32_t n, MbarReading reading) {
    std::uint64_t count = 0;
    for_each_overpartition(n, [&](const Overpartition& op) {
        if (mbar_predicate(op, k, reading))
            ++count;
    });
    return count;
}

BigInt mbar(std::uint32_t k, std::int64_t n, MbarMethod method) {
    if (k == 0)
        throw std::invalid_argument("mbar needs k >= 1");
    if (n < 0)
        return 0;
    const auto un = static_cast<std::uint32_t>(n);
    if (method == MbarMethod::enumerate)
        return mbar_enumerate(k, un, MbarReading::least_exceeding);
    return qseries::mbar_gf(k, un)[un];
}

BigInt distinct_nonoverlined_sum(std::uint32_t n, DistinctSumMethod method) {
    if (method == DistinctSumMethod::enumerate)
        return enumeration_stats(n).distinct_nonoverlined_sum;
    BigInt acc = 0;
    for (std::uint32_t j = 1; j <= n; ++j)
        acc += j * pbar(static_cast<std::int64_t>(n) - j);
    return acc;
}

} // namespace overpart::overpartitions
