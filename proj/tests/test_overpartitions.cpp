#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "overpart/overpartitions.hpp"

using namespace overpart;
using namespace overpart::overpartitions;

namespace {

std::vector<std::string> rendered(std::uint32_t n) {
    std::vector<std::string> out;
    for_each_overpartition(n, [&](const Overpartition& op) { out.push_back(op.to_string()); });
    return out;
}

std::shared_ptr<const arith::Sieve> sieve_to(std::uint32_t n) { return std::make_shared<arith::Sieve>(n); }

const std::vector<arith::ModulusParams> moduli = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};

} // namespace

TEST_CASE("generator matches the recursive oracle") {
    for (std::uint32_t n = 0; n <= 12; ++n) {
        const auto got = rendered(n);
        std::set<std::string> unique(got.begin(), got.end());
        CHECK(unique.size() == got.size());
        std::set<std::string> expect;
        for (const auto& op : oracle::overpartitions(n))
            expect.insert(oracle::render(op));
        CHECK(unique == expect);
    }
}

TEST_CASE("worked listings for n = 0, 3, 4") {
    CHECK(rendered(0) == std::vector<std::string>{"()"});
    CHECK(rendered(3) == std::vector<std::string>{"3", "3*", "2 1", "2* 1", "2 1*", "2* 1*", "1 1 1", "1* 1 1"});
    CHECK(rendered(4) == std::vector<std::string>{"4", "4*", "3 1", "3* 1", "3 1*", "3* 1*", "2 2", "2* 2", "2 1 1",
                                                  "2* 1 1", "2 1* 1", "2* 1* 1", "1 1 1 1", "1* 1 1 1"});
}

TEST_CASE("per-overpartition counts at n = 5 follow the listing order") {
    // Non-overlined prime parts and non-overlined squarefree parts, one
    // entry per overpartition of 5 in listing order.
    const std::vector<int> primes = {1, 0, 0, 0, 0, 0, 2, 1, 1, 0, 1, 0, 1, 0, 2, 1, 2, 1, 1, 0, 1, 0, 0, 0};
    const std::vector<int> squarefree = {1, 0, 1, 1, 0, 0, 2, 1, 1, 0, 3, 2, 2, 1, 3, 2, 2, 1, 4, 3, 3, 2, 5, 4};
    const arith::Sieve s(5);
    std::vector<int> got_p, got_sf;
    for_each_overpartition(5, [&](const Overpartition& op) {
        int p = 0, sf = 0;
        for (const auto& part : op.parts()) {
            if (part.overlined)
                continue;
            p += s.is_prime(part.size);
            sf += oracle::mobius(part.size) != 0;
        }
        got_p.push_back(p);
        got_sf.push_back(sf);
    });
    CHECK(got_p == primes);
    CHECK(got_sf == squarefree);
}

TEST_CASE("overpartition validation") {
    CHECK_NOTHROW(Overpartition({{3, true}, {3, false}, {1, false}}));
    CHECK_THROWS_AS(Overpartition({{1, false}, {2, false}}), std::invalid_argument);
    CHECK_THROWS_AS(Overpartition({{2, true}, {2, true}}), std::invalid_argument);
    CHECK_THROWS_AS(Overpartition({{2, false}, {2, true}}), std::invalid_argument);
    CHECK_THROWS_AS(Overpartition({{0, false}}), std::invalid_argument);
    CHECK(Overpartition({{3, true}, {3, false}, {2, false}, {1, true}}).to_string() == "3* 3 2 1*");
    CHECK(Overpartition({{3, true}, {1, false}}).weight() == 4);
    CHECK(Overpartition().to_string() == "()");
}

TEST_CASE("overpartition counts") {
    CHECK(pbar(3) == 8);
    CHECK(pbar(-5) == 0);
    CHECK(pbar_table().prefix(4) == std::vector<BigInt>{1, 2, 4, 8, 14});
    const auto gf = pbar_from_gf(25);
    for (std::uint32_t n = 0; n <= 25; ++n) {
        CHECK(pbar(n) == gf[n]);
        CHECK(enumeration_stats(n).count == gf[n]);
    }
}

TEST_CASE("S counts") {
    CHECK(s_count(1, 4, SMethod::series) == 15);
    CHECK(s_count(2, 4, SMethod::series) == 5);
    CHECK(s_count(3, 4, SMethod::series) == 2);
    CHECK(s_count(4, 4, SMethod::series) == 1);
    CHECK(s_count(1, 5, SMethod::series) == 29);
    CHECK(s_count(2, 5, SMethod::series) == 10);
    CHECK(s_count(3, 5, SMethod::series) == 4);
    CHECK(s_count(5, 5, SMethod::series) == 1);
    CHECK(s_count(5, 4, SMethod::series) == 0);
    CHECK(s_count(5, 4, SMethod::enumerate) == 0);

    const SMatrix m(25);
    for (std::uint32_t n = 1; n <= 25; ++n) {
        const auto row = s_table(n, SMethod::enumerate);
        for (std::uint32_t k = 1; k <= n; ++k) {
            REQUIRE(s_count(k, n, SMethod::series) == row(k));
            REQUIRE(m(k, n) == row(k));
            if (n <= 12)
                REQUIRE(row(k) == oracle::s_count(k, n));
        }
    }
}

TEST_CASE("weight is conserved across all overpartitions") {
    for (std::uint32_t n = 1; n <= 20; ++n) {
        const auto st = enumeration_stats(n);
        std::uint64_t total = st.overlined_size_sum;
        for (std::uint32_t k = 1; k < st.s.size(); ++k)
            total += k * st.s[k];
        CHECK(total == n * st.count);
    }
}

TEST_CASE("A statistic routes agree") {
    const auto s = sieve_to(200);
    for (const char* name : {"one", "mu", "phi", "abs_mu", "chi", "sigma_1"}) {
        const auto a = arith::ArithmeticSequence::from_name(name, s);
        for (const auto& m : moduli) {
            const auto direct = a_values(a, m, 100, AMethod::direct);
            CHECK(direct == a_values(a, m, 100, AMethod::gf));
            CHECK(direct == a_values(a, m, 100, AMethod::convolution));
            const auto en = a_values(a, m, 25, AMethod::enumerate);
            CHECK(std::equal(en.begin(), en.end(), direct.begin()));
            CHECK(std::get<BigInt>(a_stat(a, m, 0, AMethod::direct)) == 0);
        }
    }
}

TEST_CASE("A statistic worked values") {
    const auto s = sieve_to(50);
    auto A = [&](const char* name, arith::ModulusParams m, std::int64_t n) {
        return std::get<BigInt>(a_stat(arith::ArithmeticSequence::from_name(name, s), m, n, AMethod::direct));
    };
    CHECK(A("chi", {1, 0}, 5) == 15);
    CHECK(A("abs_mu", {1, 0}, 5) == 44);
    CHECK(A("alt_abs_mu", {1, 0}, 5) == 24);
    for (std::int64_t n = 1; n <= 40; ++n)
        CHECK(A("mu", {1, 0}, n) == pbar(n - 1));
    // With a = id: A(a,2,0;4) = 5 a_1 + a_2 and A(a,2,1;4) = 15 a_1 + 2 a_2.
    CHECK(A("id", {2, 0}, 4) == 5 + 2);
    CHECK(A("id", {2, 1}, 4) == 15 + 4);
    CHECK(A("one", {2, 0}, 4) == 6);
    CHECK(A("one", {2, 1}, 4) == 17);

    const auto lam = arith::ArithmeticSequence::from_name("mangoldt", s);
    const auto direct = a_values_real(lam, {1, 0}, 40, AMethod::direct);
    const auto conv = a_values_real(lam, {1, 0}, 40, AMethod::convolution);
    for (std::size_t n = 0; n <= 40; ++n)
        CHECK(direct[n] == doctest::Approx(conv[n]).epsilon(1e-12));
}

TEST_CASE("Mbar counts") {
    CHECK(mbar(2, 12, MbarMethod::gf) == 16);
    CHECK(mbar(2, 12, MbarMethod::enumerate) == 16);
    CHECK(mbar(1, -1, MbarMethod::gf) == 0);
    for (std::uint32_t k = 1; k <= 3; ++k)
        for (std::uint32_t n = 0; n <= 25; ++n)
            REQUIRE(mbar(k, n, MbarMethod::gf) == mbar(k, n, MbarMethod::enumerate));
}

TEST_CASE("Mbar listing at k = 2, n = 12") {
    const std::set<std::string> listed = {
        "4 4 4",     "4* 4 4",     "3 3 3 3",     "3* 3 3 3",     "3 3 3 2 1",     "3 3 3 2* 1",
        "3 3 3 2 1*", "3 3 3 2* 1*", "3* 3 3 2 1", "3* 3 3 2* 1", "3* 3 3 2 1*", "3* 3 3 2* 1*",
        "3 3 3 1 1 1", "3 3 3 1* 1 1", "3* 3 3 1 1 1", "3* 3 3 1* 1 1"};
    std::set<std::string> got;
    for_each_overpartition(12, [&](const Overpartition& op) {
        if (mbar_predicate(op, 2, MbarReading::least_exceeding))
            got.insert(op.to_string());
    });
    CHECK(got == listed);
}

TEST_CASE("the greatest-part reading does not match the generating function") {
    bool differs = false;
    for (std::uint32_t n = 0; n <= 20 && !differs; ++n)
        differs = mbar_enumerate(1, n, MbarReading::greatest) != mbar(1, n, MbarMethod::gf);
    CHECK(differs);
}

TEST_CASE("distinct non-overlined sum") {
    CHECK(distinct_nonoverlined_sum(0, DistinctSumMethod::enumerate) == 0);
    CHECK(distinct_nonoverlined_sum(4, DistinctSumMethod::enumerate) == 26);
    const auto s = sieve_to(200);
    const auto phi = arith::ArithmeticSequence::from_name("phi", s);
    for (std::uint32_t n = 0; n <= 20; ++n) {
        const auto e = distinct_nonoverlined_sum(n, DistinctSumMethod::enumerate);
        CHECK(e == distinct_nonoverlined_sum(n, DistinctSumMethod::convolution));
        CHECK(e == std::get<BigInt>(a_stat(phi, {1, 0}, n, AMethod::direct)));
    }
    const auto a = a_values(phi, {1, 0}, 200, AMethod::direct);
    for (std::uint32_t n = 0; n <= 200; ++n)
        CHECK(a[n] % 2 == n % 2);
}
