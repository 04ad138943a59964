#ifndef OVERPART_QSERIES_HPP
#define OVERPART_QSERIES_HPP

// Truncated formal power series in q and the specific q-series built from
// them: q-Pochhammer products, theta series, generalized Lambert series and
// the generating function of Mbar_k(n).
//
// A series of order N carries the coefficients of q^0..q^N. All arithmetic
// is modulo q^(N+1); operands must share the same order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "overpart/arith.hpp"
#include "overpart/bigint.hpp"

namespace overpart::qseries {

struct OrderMismatch : std::invalid_argument {
    OrderMismatch(std::size_t a, std::size_t b)
        : std::invalid_argument("truncation order mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct NonUnitConstant : std::domain_error {
    NonUnitConstant() : std::domain_error("series constant term is not invertible") {}
};

template <typename Coeff>
class BasicSeries {
public:
    using coefficient_type = Coeff;

    /// Zero series of the given order.
    explicit BasicSeries(std::size_t order) : coeffs_(order + 1) {}

    /// Takes ownership of coefficients q^0..q^N; N = coeffs.size() - 1.
    explicit BasicSeries(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw std::invalid_argument("a series needs at least the constant coefficient");
    }

    /// Coefficients given up to some degree, zero-padded or cut to `order`.
    BasicSeries(std::size_t order, std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
        coeffs_.resize(order + 1);
    }

    static BasicSeries one(std::size_t order) { return monomial(order, 0, Coeff{1}); }

    /// c * q^exponent, or zero when exponent > order.
    static BasicSeries monomial(std::size_t order, std::size_t exponent, Coeff c) {
        BasicSeries s(order);
        if (exponent <= order)
            s.coeffs_[exponent] = std::move(c);
        return s;
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }

    const Coeff& operator[](std::size_t i) const { return coeffs_[i]; }
    Coeff& operator[](std::size_t i) { return coeffs_[i]; }

    const Coeff& at(std::size_t i) const {
        if (i > order())
            throw std::out_of_range("coefficient index beyond truncation order");
        return coeffs_[i];
    }

    std::span<const Coeff> coefficients() const noexcept { return coeffs_; }

    BasicSeries& operator+=(const BasicSeries& t) {
        check_order(t);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] += t.coeffs_[i];
        return *this;
    }

    BasicSeries& operator-=(const BasicSeries& t) {
        check_order(t);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] -= t.coeffs_[i];
        return *this;
    }

    BasicSeries& operator*=(const Coeff& c) {
        for (auto& x : coeffs_)
            x *= c;
        return *this;
    }

    friend BasicSeries operator+(BasicSeries s, const BasicSeries& t) { return s += t; }
    friend BasicSeries operator-(BasicSeries s, const BasicSeries& t) { return s -= t; }
    friend BasicSeries operator-(BasicSeries s) {
        for (auto& x : s.coeffs_)
            x = -x;
        return s;
    }
    friend BasicSeries operator*(BasicSeries s, const Coeff& c) { return s *= c; }

    /// Cauchy product truncated at the common order.
    friend BasicSeries operator*(const BasicSeries& s, const BasicSeries& t) {
        s.check_order(t);
        const std::size_t n = s.order();
        BasicSeries r(n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (s.coeffs_[i] == Coeff{0})
                continue;
            for (std::size_t j = 0; i + j <= n; ++j)
                r.coeffs_[i + j] += s.coeffs_[i] * t.coeffs_[j];
        }
        return r;
    }

    BasicSeries& operator*=(const BasicSeries& t) { return *this = *this * t; }

    friend bool operator==(const BasicSeries&, const BasicSeries&) = default;

    /// In-place multiplication by (1 + sign*q^exponent), sign = +1 or -1.
    BasicSeries& multiply_binomial(int sign, std::size_t exponent) {
        if (exponent == 0 || exponent > order())
            return exponent == 0 ? (*this *= Coeff(1 + sign)) : *this;
        for (std::size_t i = order(); i >= exponent; --i) {
            if (sign > 0)
                coeffs_[i] += coeffs_[i - exponent];
            else
                coeffs_[i] -= coeffs_[i - exponent];
        }
        return *this;
    }

    /// In-place division by (1 + sign*q^exponent), exponent >= 1.
    BasicSeries& divide_binomial(int sign, std::size_t exponent) {
        if (exponent == 0)
            throw std::invalid_argument("divide_binomial needs a positive exponent");
        for (std::size_t i = exponent; i <= order(); ++i) {
            if (sign > 0)
                coeffs_[i] -= coeffs_[i - exponent];
            else
                coeffs_[i] += coeffs_[i - exponent];
        }
        return *this;
    }

    /// In-place multiplication by q^exponent.
    BasicSeries& shift(std::size_t exponent) {
        if (exponent == 0)
            return *this;
        for (std::size_t i = order() + 1; i-- > 0;)
            coeffs_[i] = i >= exponent ? coeffs_[i - exponent] : Coeff{0};
        return *this;
    }

private:
    void check_order(const BasicSeries& t) const {
        if (order() != t.order())
            throw OrderMismatch(order(), t.order());
    }

    std::vector<Coeff> coeffs_;
};

using TruncatedSeries = BasicSeries<BigInt>;
using FloatSeries = BasicSeries<double>;

/// Multiplicative inverse by the forward recurrence
/// t_0 = 1/s_0, t_n = -(1/s_0) * sum_{i=1..n} s_i t_{n-i}.
/// Exact series need s_0 = +-1; float series need s_0 != 0.
template <typename Coeff>
BasicSeries<Coeff> invert(const BasicSeries<Coeff>& s) {
    const Coeff& c0 = s[0];
    Coeff inv0;
    if constexpr (std::is_floating_point_v<Coeff>) {
        if (c0 == 0)
            throw NonUnitConstant();
        inv0 = 1 / c0;
    } else {
        if (c0 != 1 && c0 != -1)
            throw NonUnitConstant();
        inv0 = c0;
    }
    const std::size_t n = s.order();
    BasicSeries<Coeff> t(n);
    t[0] = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
        Coeff acc{0};
        for (std::size_t i = 1; i <= k; ++i)
            if (s[i] != Coeff{0})
                acc += s[i] * t[k - i];
        t[k] = -acc * inv0;
    }
    return t;
}

/// Coefficients of an exact series as doubles.
FloatSeries to_float(const TruncatedSeries& s);

/// (q;q)_inf for sign = -1, (-q;q)_inf for sign = +1, truncated at order N.
TruncatedSeries euler_product(int sign, std::size_t order);

/// (-q;q)_inf / (q;q)_inf; coefficients are the overpartition counts.
TruncatedSeries overpartition_gf(std::size_t order);

/// 1 + 2 sum_{n=1..k_max} (-1)^n q^(n^2); std::nullopt means no cutoff.
TruncatedSeries gauss_theta(std::optional<std::size_t> k_max, std::size_t order);

/// sum_{n>=1} a_n q^(alpha n - beta) / (1 - q^(alpha n - beta)).
/// Coefficient n equals B(a, alpha, beta; n).
TruncatedSeries lambert_series(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                               std::size_t order);
FloatSeries lambert_series_real(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                                std::size_t order);

/// Generating function of Mbar_k(n):
///   2 (-q;q)_k/(q;q)_k * sum_{j>=0} q^((k+1)(k+j+1)) (-q^(k+j+2);q)_inf
///                                   / ((1 - q^(k+j+1)) (q^(k+j+2);q)_inf)
TruncatedSeries mbar_gf(std::size_t k, std::size_t order);

} // namespace overpart::qseries

#endif
