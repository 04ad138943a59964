#include "overpart/arith.hpp"

#include <cmath>
#include <charconv>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>

namespace overpart::arith {

Sieve::Sieve(std::uint32_t limit) : limit_(limit), spf_(std::size_t{limit} + 1, 0) {
    if (limit < 1)
        throw std::invalid_argument("sieve limit must be positive");
    spf_[1] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0)
            continue;
        spf_[i] = static_cast<std::uint32_t>(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            if (spf_[j] == 0)
                spf_[j] = static_cast<std::uint32_t>(i);
    }
}

std::uint32_t Sieve::spf(std::uint32_t n) const {
    if (n == 0 || n > limit_)
        throw std::out_of_range("n=" + std::to_string(n) + " outside sieve range 1.." +
                                std::to_string(limit_));
    return spf_[n];
}

Factorization Sieve::factorize(std::uint32_t n) const {
    Factorization f;
    spf(n); // range check
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    return f;
}

Factorization trial_factorize(std::uint64_t n) {
    Factorization f;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            f.emplace_back(static_cast<std::uint32_t>(p), e);
    }
    if (n > 1)
        f.emplace_back(static_cast<std::uint32_t>(n), 1);
    return f;
}

ModulusParams::ModulusParams(std::uint32_t alpha, std::uint32_t beta) : alpha_(alpha), beta_(beta) {
    if (alpha == 0 || beta >= alpha)
        throw std::invalid_argument("modulus parameters require 0 <= beta < alpha (got alpha=" +
                                    std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
}

namespace {

BigInt ipow(std::uint32_t p, unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= p;
    return r;
}

bool squarefree(const Factorization& f) {
    for (const auto& [p, e] : f)
        if (e > 1)
            return false;
    return true;
}

} // namespace

Value evaluate(SequenceKind kind, unsigned t, std::uint32_t n, const Factorization& f) {
    if (n == 0)
        throw std::out_of_range("arithmetic functions are indexed from 1");
    switch (kind) {
    case SequenceKind::zero:
        return BigInt{0};
    case SequenceKind::one:
        return BigInt{1};
    case SequenceKind::id:
        return BigInt{n};
    case SequenceKind::mu:
        if (!squarefree(f))
            return BigInt{0};
        return BigInt{f.size() % 2 == 0 ? 1 : -1};
    case SequenceKind::abs_mu:
        return BigInt{squarefree(f) ? 1 : 0};
    case SequenceKind::alt_abs_mu:
        if (!squarefree(f))
            return BigInt{0};
        return BigInt{n % 2 == 1 ? 1 : -1};
    case SequenceKind::phi: {
        BigInt r = 1;
        for (const auto& [p, e] : f)
            r *= ipow(p, e - 1) * (p - 1);
        return r;
    }
    case SequenceKind::liouville: {
        unsigned big_omega = 0;
        for (const auto& pe : f)
            big_omega += pe.second;
        return BigInt{big_omega % 2 == 0 ? 1 : -1};
    }
    case SequenceKind::mangoldt:
        if (f.size() == 1)
            return std::log(static_cast<double>(f.front().first));
        return 0.0;
    case SequenceKind::omega:
        return BigInt{f.size()};
    case SequenceKind::two_pow_omega:
        return BigInt{1} << f.size();
    case SequenceKind::sigma: {
        BigInt r = 1;
        for (const auto& [p, e] : f) {
            if (t == 0) {
                r *= e + 1;
                continue;
            }
            const BigInt pt = ipow(p, t);
            BigInt term = 1, acc = 1;
            for (unsigned i = 0; i < e; ++i) {
                term *= pt;
                acc += term;
            }
            r *= acc;
        }
        return r;
    }
    case SequenceKind::jordan: {
        BigInt r = 1;
        for (const auto& [p, e] : f)
            r *= ipow(p, t * e) - ipow(p, t * (e - 1));
        return r;
    }
    case SequenceKind::chi:
        return BigInt{(f.size() == 1 && f.front().second == 1) ? 1 : 0};
    case SequenceKind::n_chi:
        return BigInt{(f.size() == 1 && f.front().second == 1) ? n : 0};
    case SequenceKind::sigma0_sq: {
        BigInt r = 1;
        for (const auto& pe : f)
            r *= 2 * pe.second + 1;
        return r;
    }
    }
    throw std::logic_error("unhandled sequence kind");
}

namespace {

struct NamedKind {
    std::string_view name;
    SequenceKind kind;
};

constexpr NamedKind plain_names[] = {
    {"zero", SequenceKind::zero},
    {"one", SequenceKind::one},
    {"id", SequenceKind::id},
    {"mu", SequenceKind::mu},
    {"abs_mu", SequenceKind::abs_mu},
    {"alt_abs_mu", SequenceKind::alt_abs_mu},
    {"phi", SequenceKind::phi},
    {"lambda", SequenceKind::liouville},
    {"mangoldt", SequenceKind::mangoldt},
    {"omega", SequenceKind::omega},
    {"two_pow_omega", SequenceKind::two_pow_omega},
    {"chi", SequenceKind::chi},
    {"n_chi", SequenceKind::n_chi},
    {"sigma0_sq", SequenceKind::sigma0_sq},
};

std::pair<SequenceKind, unsigned> parse_name(std::string_view name) {
    for (const auto& nk : plain_names)
        if (nk.name == name)
            return {nk.kind, 0};
    auto parameterized = [&](std::string_view prefix, SequenceKind kind,
                             unsigned min_t) -> std::optional<std::pair<SequenceKind, unsigned>> {
        if (!name.starts_with(prefix))
            return std::nullopt;
        const auto digits = name.substr(prefix.size());
        unsigned t = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t);
        if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || t < min_t ||
            t > max_sequence_parameter)
            throw std::invalid_argument("bad parameter in sequence name '" + std::string(name) + "'");
        return std::pair{kind, t};
    };
    if (auto r = parameterized("sigma_", SequenceKind::sigma, 0))
        return *r;
    if (auto r = parameterized("jordan_", SequenceKind::jordan, 1))
        return *r;
    throw std::invalid_argument("unknown sequence '" + std::string(name) + "'");
}

std::string make_name(SequenceKind kind, unsigned t) {
    if (kind == SequenceKind::sigma)
        return "sigma_" + std::to_string(t);
    if (kind == SequenceKind::jordan)
        return "jordan_" + std::to_string(t);
    for (const auto& nk : plain_names)
        if (nk.kind == kind)
            return std::string(nk.name);
    throw std::logic_error("unnamed sequence kind");
}

} // namespace

Value eval(const Sieve& sieve, std::string_view name, std::uint32_t n) {
    const auto [kind, t] = parse_name(name);
    return evaluate(kind, t, n, sieve.factorize(n));
}

struct ArithmeticSequence::Memo {
    std::shared_mutex mutex;
    std::vector<Value> values{Value{BigInt{0}}}; // index 0 unused
};

ArithmeticSequence::ArithmeticSequence(SequenceKind kind, std::shared_ptr<const Sieve> sieve, unsigned t)
    : kind_(kind), t_(t), sieve_(std::move(sieve)), memo_(std::make_shared<Memo>()) {
    if (!sieve_)
        throw std::invalid_argument("sequence requires a sieve");
    if (kind_ != SequenceKind::sigma && kind_ != SequenceKind::jordan)
        t_ = 0;
    if (t_ > max_sequence_parameter || (kind_ == SequenceKind::jordan && t_ == 0))
        throw std::invalid_argument("unsupported sequence parameter t=" + std::to_string(t));
    name_ = make_name(kind_, t_);
}

ArithmeticSequence ArithmeticSequence::from_name(std::string_view name, std::shared_ptr<const Sieve> sieve) {
    const auto [kind, t] = parse_name(name);
    return ArithmeticSequence(kind, std::move(sieve), t);
}

Domain ArithmeticSequence::domain() const noexcept {
    return kind_ == SequenceKind::mangoldt ? Domain::real : Domain::exact;
}

bool ArithmeticSequence::nonnegative() const noexcept {
    switch (kind_) {
    case SequenceKind::mu:
    case SequenceKind::alt_abs_mu:
    case SequenceKind::liouville:
        return false;
    default:
        return true;
    }
}

Value ArithmeticSequence::value(std::uint32_t n) const {
    if (n == 0)
        throw std::out_of_range("arithmetic sequences are indexed from 1");
    {
        std::shared_lock lock(memo_->mutex);
        if (n < memo_->values.size())
            return memo_->values[n];
    }
    std::unique_lock lock(memo_->mutex);
    auto& values = memo_->values;
    values.reserve(std::size_t{n} + 1);
    for (auto i = static_cast<std::uint32_t>(values.size()); i <= n; ++i)
        values.push_back(evaluate(kind_, t_, i, sieve_->factorize(i)));
    return values[n];
}

BigInt ArithmeticSequence::exact(std::uint32_t n) const {
    auto v = value(n);
    if (auto* b = std::get_if<BigInt>(&v))
        return std::move(*b);
    throw std::domain_error("sequence '" + name_ + "' is real-valued");
}

double ArithmeticSequence::real(std::uint32_t n) const {
    const auto v = value(n);
    if (const auto* d = std::get_if<double>(&v))
        return *d;
    return to_double(std::get<BigInt>(v));
}

void ArithmeticSequence::prefill(std::uint32_t limit) const {
    if (limit >= 1)
        value(limit);
}

std::vector<std::string> sequence_names() {
    std::vector<std::string> out;
    for (const auto& nk : plain_names)
        out.emplace_back(nk.name);
    for (unsigned t : {1u, 2u}) {
        out.push_back("sigma_" + std::to_string(t));
        out.push_back("jordan_" + std::to_string(t));
    }
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        small.push_back(d);
        if (d != n / d)
            large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

namespace {

template <typename F>
void for_each_modular_divisor(const ModulusParams& m, std::uint64_t n, F&& f) {
    // e = alpha*d - beta with d >= 1, i.e. e ≡ -beta (mod alpha) and e >= alpha - beta.
    for (const auto e : divisors(n)) {
        if ((e + m.beta()) % m.alpha() != 0)
            continue;
        f(static_cast<std::uint32_t>((e + m.beta()) / m.alpha()));
    }
}

} // namespace

BigInt divisor_sum_B(const ArithmeticSequence& a, const ModulusParams& m, std::uint64_t n) {
    BigInt sum = 0;
    if (n == 0)
        return sum;
    for_each_modular_divisor(m, n, [&](std::uint32_t d) { sum += a.exact(d); });
    return sum;
}

double divisor_sum_B_real(const ArithmeticSequence& a, const ModulusParams& m, std::uint64_t n) {
    double sum = 0.0;
    if (n == 0)
        return sum;
    for_each_modular_divisor(m, n, [&](std::uint32_t d) { sum += a.real(d); });
    return sum;
}

BigInt alt_abs_mu_divisor_sum(const Sieve& sieve, std::uint32_t n) {
    BigInt sum = 0;
    for (const auto d : divisors(n))
        sum += std::get<BigInt>(evaluate(SequenceKind::alt_abs_mu, 0, static_cast<std::uint32_t>(d),
                                         sieve.factorize(static_cast<std::uint32_t>(d))));
    return sum;
}

} // namespace overpart::arith
