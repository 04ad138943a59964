#include "overpart/identities.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <type_traits>

#include "overpart/qseries.hpp"

namespace overpart::identities {

using arith::ArithmeticSequence;
using arith::ModulusParams;
using arith::Value;

namespace {

double as_double(const Value& v) {
    if (const auto* d = std::get_if<double>(&v))
        return *d;
    return to_double(std::get<BigInt>(v));
}

using Clock = std::chrono::steady_clock;

class ReportBuilder {
public:
    ReportBuilder(std::string id, ReportParams params) : start_(Clock::now()) {
        report_.identity_id = std::move(id);
        report_.params = std::move(params);
    }

    void add(std::int64_t n, Value lhs, Value rhs, bool pass) {
        if (report_.rows.empty())
            report_.n_first = n;
        report_.n_last = n;
        ReportRow row{n, std::move(lhs), std::move(rhs), pass};
        if (!pass)
            report_.violations.push_back(row);
        report_.rows.push_back(std::move(row));
    }

    void note(std::string text) { report_.notes.push_back(std::move(text)); }

    IdentityReport finish() {
        report_.elapsed = Clock::now() - start_;
        return std::move(report_);
    }

private:
    IdentityReport report_;
    Clock::time_point start_;
};

int sign_pow(std::uint32_t k) { return k % 2 == 0 ? 1 : -1; }

/// A(n) + 2 sum_{j=1..j_max} (-1)^j A(n - j^2), with A vanishing below 1.
/// j_max = nullopt runs while j^2 <= n.
template <typename T>
T theta_combination(const std::vector<T>& a, std::int64_t n, std::optional<std::uint32_t> j_max) {
    auto at = [&](std::int64_t i) { return i >= 1 ? a[static_cast<std::size_t>(i)] : T{0}; };
    T acc = at(n);
    for (std::int64_t j = 1; j * j <= n; ++j) {
        if (j_max && j > *j_max)
            break;
        if (j % 2 == 0)
            acc += 2 * at(n - j * j);
        else
            acc -= 2 * at(n - j * j);
    }
    return acc;
}

/// sum_{j=1..n} w[j] * c[n - j] for a weight row w and a coefficient row c.
template <typename T, typename U>
T convolve_at(const std::vector<T>& w, const std::vector<U>& c, std::int64_t n) {
    T acc{0};
    for (std::int64_t j = 1; j <= n; ++j) {
        const auto& wj = w[static_cast<std::size_t>(j)];
        if (wj == T{0})
            continue;
        const auto& cj = c[static_cast<std::size_t>(n - j)];
        if constexpr (std::is_same_v<T, double>)
            acc += wj * to_double(cj);
        else
            acc += wj * cj;
    }
    return acc;
}

template <typename T>
bool agree(const T& x, const T& y, Tolerance tol, double scale = 0.0) {
    if constexpr (std::is_same_v<T, double>)
        return values_agree(Value{x}, Value{y}, tol, scale);
    else
        return x == y;
}

/// |A(n)| + 2 sum_j |A(n - j^2)|, the magnitude behind theta_combination.
template <typename T>
double theta_magnitude(const std::vector<T>& a, std::int64_t n, std::optional<std::uint32_t> j_max) {
    if constexpr (std::is_same_v<T, double>) {
        auto at = [&](std::int64_t i) { return i >= 1 ? std::abs(a[static_cast<std::size_t>(i)]) : 0.0; };
        double acc = at(n);
        for (std::int64_t j = 1; j * j <= n && (!j_max || j <= *j_max); ++j)
            acc += 2 * at(n - j * j);
        return acc;
    } else {
        return 0.0;
    }
}

ReportParams params_of(const ArithmeticSequence& a, const ModulusParams& m, std::optional<std::uint32_t> k) {
    return {a.name(), m.alpha(), m.beta(), k};
}

} // namespace

bool values_agree(const Value& x, const Value& y, Tolerance tol, double scale) {
    if (const auto* bx = std::get_if<BigInt>(&x))
        if (const auto* by = std::get_if<BigInt>(&y))
            return *bx == *by;
    const double dx = as_double(x), dy = as_double(y);
    scale = std::max({std::abs(dx), std::abs(dy), std::abs(scale)});
    return std::abs(dx - dy) <= std::max(tol.absolute, tol.relative * scale);
}

double relative_residual(const Value& x, const Value& y) {
    const double dx = as_double(x), dy = as_double(y);
    const double scale = std::max(std::abs(dx), std::abs(dy));
    return scale == 0 ? 0.0 : std::abs(dx - dy) / scale;
}

Workbench::Workbench(std::uint32_t n_max, std::uint32_t k_max)
    : n_max_(n_max), k_max_(k_max), sieve_(std::make_shared<arith::Sieve>(std::max<std::uint32_t>(n_max, 2) + 1)),
      pbar_gf_(overpartitions::pbar_from_gf(n_max)), pbar_rec_(overpartitions::pbar_table().prefix(n_max)),
      s_(n_max), mbar_(std::size_t{k_max} + 1) {
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        const auto gf = qseries::mbar_gf(k, n_max);
        mbar_[k].assign(gf.coefficients().begin(), gf.coefficients().end());
    }
}

void Workbench::require(std::uint32_t n, std::uint32_t k) const {
    if (n > n_max_)
        throw std::out_of_range("workbench prepared for n <= " + std::to_string(n_max_));
    if (k > k_max_)
        throw std::out_of_range("workbench prepared for k <= " + std::to_string(k_max_));
}

const std::vector<BigInt>& Workbench::mbar_coefficients(std::uint32_t k) const {
    if (k == 0)
        throw std::invalid_argument("Mbar_k needs k >= 1");
    require(0, k);
    return mbar_[k];
}

ArithmeticSequence Workbench::sequence(std::string_view name) const {
    auto seq = ArithmeticSequence::from_name(name, sieve_);
    seq.prefill(n_max_);
    return seq;
}

IdentityReport Workbench::check_rec(std::uint32_t n_max) const {
    require(n_max, 0);
    ReportBuilder out("rec", {});
    for (std::int64_t n = 0; n <= n_max; ++n) {
        BigInt lhs = pbar_gf_[static_cast<std::size_t>(n)];
        for (std::int64_t j = 1; j * j <= n; ++j) {
            const auto& p = pbar_gf_[static_cast<std::size_t>(n - j * j)];
            if (j % 2 == 0)
                lhs += 2 * p;
            else
                lhs -= 2 * p;
        }
        BigInt rhs = n == 0 ? 1 : 0;
        const bool pass = lhs == rhs;
        out.add(n, std::move(lhs), std::move(rhs), pass);
    }
    return out.finish();
}

namespace {

template <typename T>
struct IdentitySides {
    std::vector<T> a;       // A(0..n_max), direct route
    std::vector<T> b_left;  // divisor sums
    std::vector<T> b_right; // Lambert coefficients
};

template <typename T>
IdentitySides<T> identity_sides(const overpartitions::SMatrix& s, const ArithmeticSequence& a,
                              const ModulusParams& m, std::uint32_t n_max) {
    IdentitySides<T> sides;
    sides.b_left.assign(std::size_t{n_max} + 1, T{0});
    if constexpr (std::is_same_v<T, double>) {
        sides.a = overpartitions::a_values_direct_real(s, a, m, n_max);
        for (std::uint32_t n = 1; n <= n_max; ++n)
            sides.b_left[n] = arith::divisor_sum_B_real(a, m, n);
        const auto ls = qseries::lambert_series_real(a, m, n_max);
        sides.b_right.assign(ls.coefficients().begin(), ls.coefficients().end());
    } else {
        sides.a = overpartitions::a_values_direct(s, a, m, n_max);
        for (std::uint32_t n = 1; n <= n_max; ++n)
            sides.b_left[n] = arith::divisor_sum_B(a, m, n);
        const auto ls = qseries::lambert_series(a, m, n_max);
        sides.b_right.assign(ls.coefficients().begin(), ls.coefficients().end());
    }
    return sides;
}

template <typename T>
void identity_rows(ReportBuilder& out, const IdentitySides<T>& sides, const std::vector<BigInt>& mbar,
                  std::uint32_t k, std::uint32_t n_max, Tolerance tol) {
    const int sign = sign_pow(k);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        T lhs = theta_combination(sides.a, n, k) - sides.b_left[static_cast<std::size_t>(n)];
        if (sign < 0)
            lhs = -lhs;
        T rhs = convolve_at(sides.b_right, mbar, n);
        double scale = theta_magnitude(sides.a, n, k);
        if constexpr (std::is_same_v<T, double>)
            scale += std::abs(sides.b_left[static_cast<std::size_t>(n)]);
        const bool pass = agree(lhs, rhs, tol, scale);
        out.add(n, Value{std::move(lhs)}, Value{std::move(rhs)}, pass);
    }
}

} // namespace

IdentityReport Workbench::check_th2(const ArithmeticSequence& a, const ModulusParams& m, std::uint32_t k,
                                    std::uint32_t n_max, Tolerance tol) const {
    if (k == 0)
        throw std::invalid_argument("th2 needs k >= 1");
    require(n_max, k);
    ReportBuilder out("th2", params_of(a, m, k));
    if (a.is_exact())
        identity_rows(out, identity_sides<BigInt>(s_, a, m, n_max), mbar_[k], k, n_max, tol);
    else
        identity_rows(out, identity_sides<double>(s_, a, m, n_max), mbar_[k], k, n_max, tol);
    return out.finish();
}

IdentityReport Workbench::check_c3(const ArithmeticSequence& a, const ModulusParams& m, std::uint32_t k,
                                   std::uint32_t n_max) const {
    if (k == 0)
        throw std::invalid_argument("c3 needs k >= 1");
    require(n_max, k);
    if (!a.is_exact())
        throw std::invalid_argument("c3 runs on exact sequences");
    bool nonzero = false;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        const auto v = a.exact(n);
        if (v < 0)
            throw std::invalid_argument("c3 needs a nonnegative sequence; '" + a.name() + "' is negative at " +
                                        std::to_string(n));
        nonzero = nonzero || v != 0;
    }
    ReportBuilder out("c3", params_of(a, m, k));
    const auto sides = identity_sides<BigInt>(s_, a, m, n_max);
    const int sign = sign_pow(k);
    const std::int64_t threshold = std::int64_t{k + 1} * (k + 1);
    std::vector<std::int64_t> vanishing;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        BigInt lhs = theta_combination(sides.a, n, k) - sides.b_left[static_cast<std::size_t>(n)];
        if (sign < 0)
            lhs = -lhs;
        BigInt rhs = convolve_at(sides.b_right, mbar_[k], n);
        bool pass = lhs >= 0;
        if (n >= threshold) {
            if (rhs > 0)
                pass = pass && lhs > 0;
            else if (nonzero)
                vanishing.push_back(n);
        }
        out.add(n, std::move(lhs), std::move(rhs), pass);
    }
    if (!vanishing.empty()) {
        std::string list;
        for (auto n : vanishing)
            list += (list.empty() ? "" : ",") + std::to_string(n);
        out.note("right side vanishes at n >= (k+1)^2 for n in {" + list + "}; strictness not asserted there");
    }
    return out.finish();
}

IdentityReport Workbench::check_th1(const ArithmeticSequence& a, const ModulusParams& m, std::uint32_t n_max,
                                    Tolerance tol) const {
    require(n_max, 0);
    ReportBuilder out("th1", params_of(a, m, std::nullopt));
    auto run = [&]<typename T>(std::vector<T> av) {
        for (std::int64_t n = 1; n <= n_max; ++n) {
            T lhs = theta_combination(av, n, std::nullopt);
            T rhs;
            if constexpr (std::is_same_v<T, double>)
                rhs = arith::divisor_sum_B_real(a, m, static_cast<std::uint64_t>(n));
            else
                rhs = arith::divisor_sum_B(a, m, static_cast<std::uint64_t>(n));
            const bool pass = agree(lhs, rhs, tol, theta_magnitude(av, n, std::nullopt));
            out.add(n, Value{std::move(lhs)}, Value{std::move(rhs)}, pass);
        }
    };
    if (a.is_exact())
        run(overpartitions::a_values_direct(s_, a, m, n_max));
    else
        run(overpartitions::a_values_direct_real(s_, a, m, n_max));
    return out.finish();
}

IdentityReport Workbench::check_mu_decomposition(std::uint32_t n_max) const {
    require(n_max + 1, 0);
    const auto mu = sequence("mu");
    ReportBuilder out("mu_decomp", {"mu", 1u, 0u, std::nullopt});
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        BigInt lhs = pbar_rec_[n];
        BigInt rhs = 0;
        for (std::uint32_t k = 1; k <= n + 1; ++k)
            rhs += s_(k, n + 1) * mu.exact(k);
        const bool pass = lhs == rhs;
        out.add(n, std::move(lhs), std::move(rhs), pass);
    }
    return out.finish();
}

std::vector<IdentityReport> Workbench::check_phi_suite(std::uint32_t k_max, std::uint32_t n_max) const {
    require(n_max, k_max);
    const auto phi = sequence("phi");
    const ModulusParams unit(1, 0);
    const auto a = overpartitions::a_values_direct(s_, phi, unit, n_max);
    std::vector<BigInt> ident(std::size_t{n_max} + 1);
    for (std::uint32_t j = 1; j <= n_max; ++j)
        ident[j] = j;

    std::vector<IdentityReport> reports;
    {
        // Distinct non-overlined sum: A(phi,1,0;n) = sum_j j pbar(n-j).
        ReportBuilder out("phi.distinct_sum", params_of(phi, unit, std::nullopt));
        for (std::int64_t n = 0; n <= n_max; ++n) {
            BigInt lhs = a[static_cast<std::size_t>(n)];
            BigInt rhs = convolve_at(ident, pbar_rec_, n);
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        ReportBuilder out("phi.mbar", params_of(phi, unit, k));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            BigInt lhs = theta_combination(a, n, k) - n;
            if (k % 2 == 1)
                lhs = -lhs;
            BigInt rhs = convolve_at(ident, mbar_[k], n);
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    {
        ReportBuilder out("phi.limit", params_of(phi, unit, std::nullopt));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            BigInt lhs = theta_combination(a, n, std::nullopt);
            BigInt rhs = n;
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    {
        ReportBuilder out("phi.parity", params_of(phi, unit, std::nullopt));
        for (std::int64_t n = 0; n <= n_max; ++n) {
            BigInt lhs = a[static_cast<std::size_t>(n)] % 2;
            BigInt rhs = n % 2;
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    return reports;
}

namespace {

/// Reports for one "weighted part count" family: the pbar convolution,
/// the Mbar_k identities and the limit form, all at (alpha, beta) = (1, 0).
/// `weight[j]` is the divisor-sum value written in closed form (omega(j),
/// 2^omega(j), ...), never obtained from a divisor sum.
std::vector<IdentityReport> weighted_family(const std::string& prefix, const ArithmeticSequence& seq,
                                            const std::vector<BigInt>& a, const std::vector<BigInt>& weight,
                                            const std::vector<BigInt>& pbar,
                                            const std::vector<std::vector<BigInt>>& mbar, std::uint32_t k_max,
                                            std::uint32_t n_max) {
    const ModulusParams unit(1, 0);
    std::vector<IdentityReport> reports;
    {
        ReportBuilder out(prefix + ".count", params_of(seq, unit, std::nullopt));
        for (std::int64_t n = 0; n <= n_max; ++n) {
            BigInt lhs = a[static_cast<std::size_t>(n)];
            BigInt rhs = convolve_at(weight, pbar, n);
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        ReportBuilder out(prefix + ".mbar", params_of(seq, unit, k));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            BigInt lhs = theta_combination(a, n, k) - weight[static_cast<std::size_t>(n)];
            if (k % 2 == 1)
                lhs = -lhs;
            BigInt rhs = convolve_at(weight, mbar[k], n);
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    {
        ReportBuilder out(prefix + ".limit", params_of(seq, unit, std::nullopt));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            BigInt lhs = theta_combination(a, n, std::nullopt);
            BigInt rhs = weight[static_cast<std::size_t>(n)];
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    return reports;
}

} // namespace

std::vector<IdentityReport> Workbench::check_prime_suite(std::uint32_t k_max, std::uint32_t n_max) const {
    require(n_max, k_max);
    const ModulusParams unit(1, 0);
    const auto chi = sequence("chi");
    const auto n_chi = sequence("n_chi");

    std::vector<BigInt> omega(std::size_t{n_max} + 1), sopf(std::size_t{n_max} + 1);
    for (std::uint32_t j = 1; j <= n_max; ++j)
        for (const auto& [p, e] : sieve_->factorize(j)) {
            omega[j] += 1;
            sopf[j] += p;
        }

    auto reports = weighted_family("prime", chi, overpartitions::a_values_direct(s_, chi, unit, n_max), omega,
                                   pbar_rec_, mbar_, k_max, n_max);
    auto sums = weighted_family("prime_sum", n_chi, overpartitions::a_values_direct(s_, n_chi, unit, n_max), sopf,
                                pbar_rec_, mbar_, k_max, n_max);
    reports.insert(reports.end(), std::make_move_iterator(sums.begin()), std::make_move_iterator(sums.end()));
    return reports;
}

std::vector<IdentityReport> Workbench::check_squarefree_suite(std::uint32_t k_max, std::uint32_t n_max) const {
    require(n_max, k_max);
    const ModulusParams unit(1, 0);
    const auto abs_mu = sequence("abs_mu");
    const auto alt = sequence("alt_abs_mu");
    const auto two_omega = sequence("two_pow_omega");

    // Closed forms read straight from factorizations.
    std::vector<BigInt> unitary(std::size_t{n_max} + 1), divisors_of_square(std::size_t{n_max} + 1),
        alt_closed(std::size_t{n_max} + 1);
    for (std::uint32_t j = 1; j <= n_max; ++j) {
        const auto f = sieve_->factorize(j);
        unitary[j] = BigInt{1} << f.size();
        divisors_of_square[j] = 1;
        for (const auto& pe : f)
            divisors_of_square[j] *= 2 * pe.second + 1;
        alt_closed[j] = j % 2 == 1 ? unitary[j] : BigInt{0};
    }

    auto reports = weighted_family("squarefree", abs_mu, overpartitions::a_values_direct(s_, abs_mu, unit, n_max),
                                   unitary, pbar_rec_, mbar_, k_max, n_max);

    const auto a_alt = overpartitions::a_values_direct(s_, alt, unit, n_max);
    {
        ReportBuilder out("squarefree.alt_divisor_sum", params_of(alt, unit, std::nullopt));
        for (std::uint32_t n = 1; n <= n_max; ++n) {
            BigInt lhs = arith::alt_abs_mu_divisor_sum(*sieve_, n);
            BigInt rhs = alt_closed[n];
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        // Odd and even n share one report; the 2^omega(n) term drops out for even n.
        ReportBuilder out("squarefree.alt_mbar", params_of(alt, unit, k));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            BigInt lhs = theta_combination(a_alt, n, k);
            if (n % 2 == 1)
                lhs -= unitary[static_cast<std::size_t>(n)];
            if (k % 2 == 1)
                lhs = -lhs;
            BigInt rhs = 0;
            for (std::int64_t i = 1; i <= (n + 1) / 2; ++i)
                rhs += unitary[static_cast<std::size_t>(2 * i - 1)] *
                       mbar_[k][static_cast<std::size_t>(n - 2 * i + 1)];
            const bool pass = lhs == rhs;
            out.add(n, std::move(lhs), std::move(rhs), pass);
        }
        reports.push_back(out.finish());
    }

    auto sq = weighted_family("divisors_of_square", two_omega,
                              overpartitions::a_values_direct(s_, two_omega, unit, n_max), divisors_of_square,
                              pbar_rec_, mbar_, k_max, n_max);
    reports.insert(reports.end(), std::make_move_iterator(sq.begin()), std::make_move_iterator(sq.end()));
    return reports;
}

IdentityReport Workbench::check_gauss(std::uint32_t order) {
    ReportBuilder out("gauss", {});
    const auto lhs = qseries::euler_product(-1, order) * qseries::invert(qseries::euler_product(+1, order));
    const auto rhs = qseries::gauss_theta(std::nullopt, order);
    for (std::uint32_t n = 0; n <= order; ++n)
        out.add(n, lhs[n], rhs[n], lhs[n] == rhs[n]);
    return out.finish();
}

IdentityReport Workbench::check_eq4(std::uint32_t k, std::uint32_t order) {
    ReportBuilder out("eq4", {"", std::nullopt, std::nullopt, k});
    auto lhs = qseries::overpartition_gf(order) * qseries::gauss_theta(k, order);
    lhs -= qseries::TruncatedSeries::one(order);
    auto rhs = qseries::mbar_gf(k, order);
    if (k % 2 == 1)
        rhs = -rhs;
    for (std::uint32_t n = 0; n <= order; ++n)
        out.add(n, lhs[n], rhs[n], lhs[n] == rhs[n]);
    return out.finish();
}

std::vector<std::string> identity_grid_sequences() {
    return {"one", "mu", "phi", "abs_mu", "alt_abs_mu", "chi", "n_chi", "sigma_1", "jordan_2", "two_pow_omega",
            "lambda"};
}

std::vector<std::string> sign_grid_sequences() {
    return {"one", "phi", "abs_mu", "chi", "sigma_1", "two_pow_omega"};
}

std::vector<ModulusParams> modulus_grid(std::uint32_t alpha_max) {
    std::vector<ModulusParams> out;
    for (std::uint32_t alpha = 1; alpha <= alpha_max; ++alpha)
        for (std::uint32_t beta = 0; beta < alpha; ++beta)
            out.emplace_back(alpha, beta);
    return out;
}

std::vector<IdentityReport> run_tasks(const std::vector<ReportTask>& tasks, unsigned threads) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));

    std::vector<std::vector<IdentityReport>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
            results[i] = tasks[i]();
    };
    std::vector<std::future<void>> workers;
    for (unsigned t = 1; t < threads; ++t)
        workers.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& w : workers)
        w.get();

    std::vector<IdentityReport> flat;
    for (auto& r : results)
        flat.insert(flat.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    return flat;
}

} // namespace overpart::identities
