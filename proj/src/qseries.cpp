#include "overpart/qseries.hpp"

namespace overpart::qseries {

FloatSeries to_float(const TruncatedSeries& s) {
    FloatSeries f(s.order());
    for (std::size_t i = 0; i <= s.order(); ++i)
        f[i] = to_double(s[i]);
    return f;
}

TruncatedSeries euler_product(int sign, std::size_t order) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("euler_product sign must be +1 or -1");
    auto s = TruncatedSeries::one(order);
    // Factors (1 +- q^j) with j > order are 1 modulo q^(order+1).
    for (std::size_t j = 1; j <= order; ++j)
        s.multiply_binomial(sign, j);
    return s;
}

TruncatedSeries overpartition_gf(std::size_t order) {
    return euler_product(+1, order) * invert(euler_product(-1, order));
}

TruncatedSeries gauss_theta(std::optional<std::size_t> k_max, std::size_t order) {
    auto s = TruncatedSeries::one(order);
    for (std::size_t n = 1; n * n <= order; ++n) {
        if (k_max && n > *k_max)
            break;
        s[n * n] = n % 2 == 0 ? 2 : -2;
    }
    return s;
}

namespace {

template <typename Series, typename Get>
Series lambert_impl(const arith::ArithmeticSequence& a, const arith::ModulusParams& m, std::size_t order,
                    Get get) {
    Series s(order);
    for (std::uint64_t n = 1; m.part(n) <= order; ++n) {
        const auto step = static_cast<std::size_t>(m.part(n));
        const auto an = get(a, static_cast<std::uint32_t>(n));
        if (an == typename Series::coefficient_type{0})
            continue;
        for (std::size_t e = step; e <= order; e += step)
            s[e] += an;
    }
    return s;
}

} // namespace

TruncatedSeries lambert_series(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                               std::size_t order) {
    return lambert_impl<TruncatedSeries>(a, m, order,
                                         [](const auto& seq, std::uint32_t n) { return seq.exact(n); });
}

FloatSeries lambert_series_real(const arith::ArithmeticSequence& a, const arith::ModulusParams& m,
                                std::size_t order) {
    return lambert_impl<FloatSeries>(a, m, order,
                                     [](const auto& seq, std::uint32_t n) { return seq.real(n); });
}

TruncatedSeries mbar_gf(std::size_t k, std::size_t order) {
    if (k == 0)
        throw std::invalid_argument("mbar_gf needs k >= 1");
    TruncatedSeries sum(order);
    const std::size_t lead = k + 1;
    if (lead * lead > order)
        return sum;
    // Largest j with (k+1)(k+j+1) <= order.
    const std::size_t j_max = order / lead - lead;

    // tail = prod_{i >= k+j+2} (1+q^i)/(1-q^i), built from the top down so
    // each j reuses the previous product.
    auto tail = TruncatedSeries::one(order);
    for (std::size_t i = order; i >= k + j_max + 2; --i) {
        tail.multiply_binomial(+1, i);
        tail.divide_binomial(-1, i);
    }
    for (std::size_t j = j_max + 1; j-- > 0;) {
        const std::size_t base = k + j + 1;
        auto term = tail;
        term.divide_binomial(-1, base);
        term.shift(lead * base);
        sum += term;
        tail.multiply_binomial(+1, base);
        tail.divide_binomial(-1, base);
    }

    for (std::size_t i = 1; i <= k && i <= order; ++i) {
        sum.multiply_binomial(+1, i);
        sum.divide_binomial(-1, i);
    }
    sum *= BigInt{2};
    return sum;
}

} // namespace overpart::qseries
