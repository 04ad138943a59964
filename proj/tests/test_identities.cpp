#include <doctest.h>

#include <atomic>
#include <algorithm>
#include <cmath>

#include "overpart/identities.hpp"

using namespace overpart;
using namespace overpart::identities;

namespace {

const Workbench& bench() {
    static const Workbench wb(121, 6);
    return wb;
}

const IdentityReport& find(const std::vector<IdentityReport>& reports, const std::string& id,
                           std::optional<std::uint32_t> k = std::nullopt) {
    for (const auto& r : reports)
        if (r.identity_id == id && r.params.k == k)
            return r;
    FAIL("missing report " << id);
    throw std::logic_error("unreachable");
}

BigInt exact(const arith::Value& v) { return std::get<BigInt>(v); }

} // namespace

TEST_CASE("value agreement") {
    CHECK(values_agree(BigInt(5), BigInt(5)));
    CHECK_FALSE(values_agree(BigInt(5), BigInt(6)));
    CHECK(values_agree(1.0, 1.0 + 1e-12));
    CHECK_FALSE(values_agree(1.0, 1.0 + 1e-6));
    CHECK(values_agree(0.0, 1e-13));
    CHECK_FALSE(values_agree(0.0, 1e-10));
    // A cancelled sum is measured against the size of its terms.
    CHECK(values_agree(0.0, 1e-10, {}, 1e4));
    CHECK(relative_residual(2.0, 2.0) == 0.0);
    CHECK(relative_residual(0.0, 0.0) == 0.0);
    CHECK(relative_residual(BigInt(4), BigInt(5)) == doctest::Approx(0.2));
}

TEST_CASE("overpartition recurrence") {
    const auto r = bench().check_rec(121);
    CHECK(r.passed());
    CHECK(r.rows.size() == 122);
    // pbar(3) - 2 pbar(2) = 8 - 8 = 0.
    CHECK(exact(r.rows[3].lhs) == 0);
    CHECK(exact(r.rows[0].lhs) == 1);
}

TEST_CASE("Mobius decomposition of pbar") {
    const auto r = bench().check_mu_decomposition(120);
    CHECK(r.passed());
    CHECK(exact(r.rows[3].lhs) == 8);
    CHECK(exact(r.rows[3].rhs) == 8);
    CHECK_THROWS(bench().check_mu_decomposition(121));
}

TEST_CASE("finite-k identity across sequences and moduli") {
    const auto& wb = bench();
    for (const auto& name : identity_grid_sequences()) {
        const auto a = wb.sequence(name);
        for (const auto& m : modulus_grid(3))
            for (std::uint32_t k : {1u, 2u, 5u}) {
                const auto r = wb.check_th2(a, m, k, 120);
                CHECK_MESSAGE(r.passed(), name << " alpha=" << m.alpha() << " beta=" << m.beta() << " k=" << k);
                CHECK(r.rows.size() == 120);
            }
    }
    const auto lam = wb.check_th2(wb.sequence("mangoldt"), {1, 0}, 3, 120);
    CHECK(lam.passed());
    CHECK(std::holds_alternative<double>(lam.rows.front().lhs));
    CHECK_THROWS_AS(wb.check_th2(wb.sequence("one"), {1, 0}, 0, 10), std::invalid_argument);
    CHECK_THROWS(wb.check_th2(wb.sequence("one"), {1, 0}, 7, 10));
    CHECK_THROWS(wb.check_th2(wb.sequence("one"), {1, 0}, 1, 200));
}

TEST_CASE("with the Mobius function the identity reduces to the shifted recurrence") {
    const auto& wb = bench();
    const auto r = wb.check_th2(wb.sequence("mu"), {1, 0}, 2, 60);
    CHECK(r.passed());
    // B(mu,1,0;n) = [n = 1], so the right side is Mbar_k(n - 1).
    for (const auto& row : r.rows)
        CHECK(exact(row.rhs) == wb.mbar_coefficients(2)[static_cast<std::size_t>(row.n - 1)]);
}

TEST_CASE("limit identity") {
    const auto& wb = bench();
    for (const char* name : {"one", "mu", "phi", "chi", "sigma_1", "lambda"})
        for (const auto& m : modulus_grid(4))
            CHECK(wb.check_th1(wb.sequence(name), m, 120).passed());
    CHECK(wb.check_th1(wb.sequence("mangoldt"), {2, 1}, 120).passed());
}

TEST_CASE("sign form") {
    const auto& wb = bench();
    for (const auto& name : sign_grid_sequences())
        for (const auto& m : modulus_grid(2))
            for (std::uint32_t k = 1; k <= 3; ++k)
                CHECK(wb.check_c3(wb.sequence(name), m, k, 120).passed());
    const auto z = wb.check_c3(wb.sequence("zero"), {1, 0}, 2, 50);
    CHECK(z.passed());
    CHECK(z.notes.empty());
    // The right side vanishes at n = (k+1)^2 itself.
    const auto one = wb.check_c3(wb.sequence("one"), {1, 0}, 2, 50);
    CHECK(exact(one.rows[8].rhs) == 0);
    REQUIRE(one.notes.size() == 1);
    CHECK(one.notes[0].find("{9") != std::string::npos);
    CHECK_THROWS_AS(wb.check_c3(wb.sequence("mu"), {1, 0}, 1, 50), std::invalid_argument);
    CHECK_THROWS_AS(wb.check_c3(wb.sequence("mangoldt"), {1, 0}, 1, 50), std::invalid_argument);
}

TEST_CASE("totient family") {
    const auto reports = bench().check_phi_suite(6, 120);
    for (const auto& r : reports)
        CHECK_MESSAGE(r.passed(), r.identity_id);
    CHECK(exact(find(reports, "phi.distinct_sum").rows[4].lhs) == 26);
    for (std::uint32_t k = 1; k <= 6; ++k)
        CHECK(find(reports, "phi.mbar", k).passed());
    CHECK(find(reports, "phi.parity").passed());
    CHECK(find(reports, "phi.limit").passed());
}

TEST_CASE("prime-part family") {
    const auto reports = bench().check_prime_suite(6, 120);
    for (const auto& r : reports)
        CHECK_MESSAGE(r.passed(), r.identity_id);
    const auto& count = find(reports, "prime.count");
    const auto row5 = std::find_if(count.rows.begin(), count.rows.end(), [](const auto& r) { return r.n == 5; });
    REQUIRE(row5 != count.rows.end());
    CHECK(exact(row5->lhs) == 15);
    CHECK(find(reports, "prime.limit").passed());
    CHECK(find(reports, "prime_sum.limit").passed());
}

TEST_CASE("squarefree family") {
    const auto reports = bench().check_squarefree_suite(6, 120);
    for (const auto& r : reports)
        CHECK_MESSAGE(r.passed(), r.identity_id);
    const auto& count = find(reports, "squarefree.count");
    const auto row5 = std::find_if(count.rows.begin(), count.rows.end(), [](const auto& r) { return r.n == 5; });
    REQUIRE(row5 != count.rows.end());
    CHECK(exact(row5->lhs) == 44);
    CHECK(find(reports, "squarefree.alt_divisor_sum").passed());
    CHECK(find(reports, "divisors_of_square.limit").passed());
}

TEST_CASE("series-level identities") {
    CHECK(Workbench::check_gauss(200).passed());
    for (std::uint32_t k = 1; k <= 6; ++k)
        CHECK(Workbench::check_eq4(k, 100).passed());
}

TEST_CASE("task runner keeps order") {
    std::vector<ReportTask> tasks;
    std::atomic<int> ran{0};
    for (int i = 0; i < 12; ++i)
        tasks.push_back([i, &ran] {
            ++ran;
            IdentityReport r;
            r.identity_id = "t" + std::to_string(i);
            return std::vector<IdentityReport>{r, r};
        });
    for (unsigned threads : {1u, 3u, 0u}) {
        ran = 0;
        const auto out = run_tasks(tasks, threads);
        CHECK(ran == 12);
        REQUIRE(out.size() == 24);
        for (int i = 0; i < 12; ++i)
            CHECK(out[2 * i].identity_id == "t" + std::to_string(i));
    }
}

TEST_CASE("grid helpers") {
    CHECK(modulus_grid(4).size() == 10);
    CHECK(identity_grid_sequences().size() == 11);
    for (const auto& m : modulus_grid(4))
        CHECK(m.beta() < m.alpha());
}
