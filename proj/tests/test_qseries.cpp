#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "overpart/qseries.hpp"

using namespace overpart;
using namespace overpart::qseries;

namespace {

TruncatedSeries series(std::initializer_list<int> c) {
    std::vector<BigInt> v(c.begin(), c.end());
    return TruncatedSeries(std::move(v));
}

TruncatedSeries random_series(std::mt19937& rng, std::size_t order, bool unit) {
    std::uniform_int_distribution<int> coef(-50, 50);
    TruncatedSeries s(order);
    for (std::size_t i = 0; i <= order; ++i)
        s[i] = coef(rng);
    if (unit)
        s[0] = rng() % 2 ? 1 : -1;
    return s;
}

} // namespace

TEST_CASE("addition and multiplication") {
    CHECK(series({1, 2, 0}) + series({0, 1, 3}) == series({1, 3, 3}));
    CHECK(series({1, 1, 0}) * series({1, 1, 0}) == series({1, 2, 1}));
    // Truncation drops q^3.
    CHECK(series({0, 1, 1}) * series({0, 1, 1}) == series({0, 0, 1}));
    CHECK(series({2, 3}) * BigInt(2) == series({4, 6}));
    CHECK(-series({1, -1}) == series({-1, 1}));
    CHECK_THROWS_AS(series({1, 2}) + series({1, 2, 3}), OrderMismatch);
    CHECK_THROWS_AS(series({1, 2}) * series({1, 2, 3}), OrderMismatch);
    CHECK_THROWS_AS(series({1}).at(1), std::out_of_range);
    CHECK(TruncatedSeries::monomial(3, 5, 7) == TruncatedSeries(3));
}

TEST_CASE("binomial helpers and shift") {
    auto s = TruncatedSeries::one(6);
    s.multiply_binomial(-1, 2).multiply_binomial(+1, 3);
    CHECK(s == series({1, 0, -1, 1, 0, -1, 0}));
    s.divide_binomial(+1, 3).divide_binomial(-1, 2);
    CHECK(s == TruncatedSeries::one(6));
    auto t = series({1, 2, 3, 4});
    t.shift(2);
    CHECK(t == series({0, 0, 1, 2}));
}

TEST_CASE("inversion") {
    CHECK(invert(series({1, -1, 0, 0})) == series({1, 1, 1, 1}));
    CHECK(invert(series({-1, 0, 0})) == series({-1, 0, 0}));
    CHECK_THROWS_AS(invert(series({2, 1})), NonUnitConstant);
    CHECK_THROWS_AS(invert(series({0, 1})), NonUnitConstant);
    const auto s = series({1, 3, -2, 7, 0, 5});
    CHECK(invert(invert(s)) == s);
    CHECK(invert(s) * s == TruncatedSeries::one(5));

    const FloatSeries f(std::vector<double>{2.0, 1.0, 0.0});
    const auto g = invert(f);
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK(g[1] == doctest::Approx(-0.25));
    CHECK(g[2] == doctest::Approx(0.125));
}

TEST_CASE("Euler products") {
    CHECK(euler_product(-1, 4) == series({1, -1, -1, 0, 0}));
    CHECK(euler_product(-1, 7) == series({1, -1, -1, 0, 0, 1, 0, 1}));
    // (-q;q) counts partitions into distinct parts.
    CHECK(euler_product(+1, 6) == series({1, 1, 1, 2, 2, 3, 4}));

    const std::size_t order = 120;
    const auto p = invert(euler_product(-1, order));
    const auto expect = oracle::partition_counts(order);
    for (std::size_t n = 0; n <= order; ++n)
        CHECK(p[n] == expect[n]);

    // Against an explicit product of (1 - q^m) factors.
    std::vector<std::vector<BigInt>> factors;
    for (std::size_t m = 1; m <= 40; ++m) {
        std::vector<BigInt> f(m + 1, 0);
        f[0] = 1;
        f[m] = -1;
        factors.push_back(f);
    }
    const auto direct = oracle::product(factors, 40);
    const auto e = euler_product(-1, 40);
    for (std::size_t n = 0; n <= 40; ++n)
        CHECK(e[n] == direct[n]);
}

TEST_CASE("overpartition generating function") {
    CHECK(overpartition_gf(4) == series({1, 2, 4, 8, 14}));
    const auto g = overpartition_gf(30);
    const auto d = euler_product(+1, 30);
    const auto p = oracle::partition_counts(30);
    for (std::size_t n = 0; n <= 30; ++n) {
        BigInt conv = 0;
        for (std::size_t j = 0; j <= n; ++j)
            conv += d[j] * p[n - j];
        CHECK(g[n] == conv);
    }
}

TEST_CASE("theta series") {
    CHECK(gauss_theta(std::nullopt, 5) == series({1, -2, 0, 0, 2, 0}));
    CHECK(gauss_theta(0, 5) == TruncatedSeries::one(5));
    CHECK(gauss_theta(1, 5) == series({1, -2, 0, 0, 0, 0}));
    for (std::size_t order : {50u, 200u})
        CHECK(euler_product(-1, order) * invert(euler_product(+1, order)) == gauss_theta(std::nullopt, order));
}

TEST_CASE("Lambert series") {
    const auto s = std::make_shared<arith::Sieve>(400);
    auto seq = [&](const char* name) { return arith::ArithmeticSequence::from_name(name, s); };
    CHECK(lambert_series(seq("mu"), {1, 0}, 10) == TruncatedSeries::monomial(10, 1, 1));
    const auto phi = lambert_series(seq("phi"), {1, 0}, 10);
    for (std::size_t n = 0; n <= 10; ++n)
        CHECK(phi[n] == n);
    CHECK(lambert_series(seq("one"), {2, 1}, 8)[6] == 2);

    for (const char* name : {"one", "mu", "phi", "abs_mu", "chi"}) {
        const auto a = seq(name);
        for (const auto& m : {arith::ModulusParams(1, 0), arith::ModulusParams(2, 0), arith::ModulusParams(2, 1),
                              arith::ModulusParams(3, 0), arith::ModulusParams(3, 1), arith::ModulusParams(3, 2),
                              arith::ModulusParams(4, 1), arith::ModulusParams(4, 3)}) {
            const auto l = lambert_series(a, m, 300);
            for (std::uint32_t n = 1; n <= 300; ++n) {
                // Brute force over every d with (alpha d - beta) | n.
                BigInt b = 0;
                for (std::uint32_t d = 1; m.part(d) <= n; ++d)
                    if (n % m.part(d) == 0)
                        b += a.exact(d);
                REQUIRE(l[n] == b);
            }
        }
    }
    const auto lam = lambert_series_real(seq("mangoldt"), {1, 0}, 60);
    CHECK(lam[60] == doctest::Approx(std::log(60.0)));
}

TEST_CASE("Mbar generating function") {
    const auto m2 = mbar_gf(2, 20);
    CHECK(m2[12] == 16);
    for (std::size_t n = 0; n < 9; ++n)
        CHECK(m2[n] == 0);
    CHECK_THROWS_AS(mbar_gf(0, 10), std::invalid_argument);
    for (std::size_t k = 1; k <= 6; ++k) {
        const auto m = mbar_gf(k, 60);
        for (std::size_t n = 0; n < (k + 1) * (k + 1) && n <= 60; ++n)
            CHECK(m[n] == 0);
    }
}

TEST_CASE("truncated theta identity") {
    const std::size_t order = 100;
    const auto g = overpartition_gf(order);
    for (std::size_t k = 1; k <= 6; ++k) {
        auto lhs = g * gauss_theta(k, order) - TruncatedSeries::one(order);
        auto rhs = mbar_gf(k, order);
        if (k % 2 == 1)
            rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ring laws on random series") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> ord(0, 64);
    for (int i = 0; i < 250; ++i) {
        const auto n = ord(rng);
        const auto a = random_series(rng, n, false);
        const auto b = random_series(rng, n, false);
        const auto c = random_series(rng, n, false);
        const auto u = random_series(rng, n, true);
        REQUIRE(a * b == b * a);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + b == b + a);
        REQUIRE(u * invert(u) == TruncatedSeries::one(n));
        REQUIRE(invert(invert(u)) == u);
    }
}
