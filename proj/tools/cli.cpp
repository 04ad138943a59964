#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "overpart/overpartitions.hpp"
#include "overpart/qseries.hpp"

namespace overpart::cli {

namespace {

using identities::IdentityReport;
using identities::ReportTask;
using identities::Workbench;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct RunConfig {
    std::string identity;
    std::optional<std::uint32_t> n_max;
    std::optional<std::uint32_t> n;
    std::optional<std::uint32_t> k;
    std::uint32_t k_max = 4;
    std::optional<std::uint32_t> alpha;
    std::optional<std::uint32_t> beta;
    std::uint32_t alpha_max = 4;
    std::optional<std::string> sequence;
    std::string method;
    Format format = Format::csv;
    std::string out_path;
    unsigned threads = 0;
};

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string value_text(const arith::Value& v) {
    if (const auto* b = std::get_if<BigInt>(&v))
        return to_decimal(*b);
    return format_double(std::get<double>(v));
}

json value_json(const arith::Value& v) {
    if (const auto* b = std::get_if<BigInt>(&v))
        return to_decimal(*b);
    return std::get<double>(v);
}

json params_json(const identities::ReportParams& p) {
    json j = json::object();
    if (!p.sequence.empty())
        j["seq"] = p.sequence;
    if (p.alpha)
        j["alpha"] = *p.alpha;
    if (p.beta)
        j["beta"] = *p.beta;
    if (p.k)
        j["k"] = *p.k;
    return j;
}

std::string params_text(const identities::ReportParams& p) {
    std::string s;
    auto add = [&s](const std::string& kv) { s += (s.empty() ? "" : ";") + kv; };
    if (!p.sequence.empty())
        add("seq=" + p.sequence);
    if (p.alpha)
        add("alpha=" + std::to_string(*p.alpha));
    if (p.beta)
        add("beta=" + std::to_string(*p.beta));
    if (p.k)
        add("k=" + std::to_string(*p.k));
    return s;
}

std::uint32_t require_n_max(const RunConfig& cfg, std::uint32_t fallback) { return cfg.n_max.value_or(fallback); }

arith::ModulusParams modulus_of(const RunConfig& cfg) {
    try {
        return arith::ModulusParams(cfg.alpha.value_or(1), cfg.beta.value_or(0));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<arith::ModulusParams> moduli_of(const RunConfig& cfg) {
    if (cfg.beta && !cfg.alpha)
        throw UsageError("--beta requires --alpha");
    if (cfg.alpha)
        return {modulus_of(cfg)};
    return identities::modulus_grid(cfg.alpha_max);
}

std::vector<std::string> sequences_of(const RunConfig& cfg, std::vector<std::string> defaults) {
    if (!cfg.sequence)
        return defaults;
    // Validate the name before any work starts.
    try {
        arith::ArithmeticSequence::from_name(*cfg.sequence, std::make_shared<arith::Sieve>(2));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return {*cfg.sequence};
}

std::vector<std::uint32_t> ks_of(const RunConfig& cfg) {
    if (cfg.k) {
        if (*cfg.k == 0)
            throw UsageError("--k must be positive");
        return {*cfg.k};
    }
    std::vector<std::uint32_t> ks;
    for (std::uint32_t k = 1; k <= cfg.k_max; ++k)
        ks.push_back(k);
    return ks;
}

std::uint32_t max_k(const RunConfig& cfg) { return cfg.k ? std::max(*cfg.k, cfg.k_max) : cfg.k_max; }

// pbar ------------------------------------------------------------------

void cmd_pbar(const RunConfig& cfg, std::ostream& out) {
    const auto n_max = require_n_max(cfg, 20);
    std::vector<BigInt> values;
    if (cfg.method.empty() || cfg.method == "recurrence")
        values = overpartitions::pbar_table().prefix(n_max);
    else if (cfg.method == "gf")
        values = overpartitions::pbar_from_gf(n_max);
    else if (cfg.method == "enumerate") {
        if (n_max > overpartitions::enumeration_cap)
            throw UsageError("enumeration is capped at n <= " + std::to_string(overpartitions::enumeration_cap));
        for (std::uint32_t n = 0; n <= n_max; ++n)
            values.emplace_back(overpartitions::enumeration_stats(n).count);
    } else
        throw UsageError("pbar --method must be recurrence, gf or enumerate");

    if (cfg.format == Format::csv)
        out << "n,pbar\n";
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        if (cfg.format == Format::csv)
            out << n << ',' << to_decimal(values[n]) << '\n';
        else
            out << json{{"n", n}, {"pbar", to_decimal(values[n])}}.dump() << '\n';
    }
}

// stable ----------------------------------------------------------------

void cmd_stable(const RunConfig& cfg, std::ostream& out) {
    overpartitions::SMethod method = overpartitions::SMethod::series;
    if (cfg.method == "enumerate")
        method = overpartitions::SMethod::enumerate;
    else if (!cfg.method.empty() && cfg.method != "series")
        throw UsageError("stable --method must be series or enumerate");
    if (cfg.n && cfg.n_max)
        throw UsageError("stable takes either --n or --max");
    const std::uint32_t first = cfg.n.value_or(1);
    const std::uint32_t last = cfg.n ? *cfg.n : require_n_max(cfg, 10);
    if (method == overpartitions::SMethod::enumerate && last > overpartitions::enumeration_cap)
        throw UsageError("enumeration is capped at n <= " + std::to_string(overpartitions::enumeration_cap));

    if (cfg.format == Format::csv)
        out << "n,k,s\n";
    for (std::uint32_t n = first; n <= last; ++n) {
        const auto row = overpartitions::s_table(n, method);
        for (std::uint32_t k = 1; k <= n; ++k) {
            if (cfg.format == Format::csv)
                out << n << ',' << k << ',' << to_decimal(row(k)) << '\n';
            else
                out << json{{"n", n}, {"k", k}, {"s", to_decimal(row(k))}}.dump() << '\n';
        }
    }
}

// enumerate -------------------------------------------------------------

void cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.n)
        throw UsageError("enumerate needs --n");
    if (*cfg.n > overpartitions::enumeration_cap)
        throw UsageError("enumeration is capped at n <= " + std::to_string(overpartitions::enumeration_cap));
    overpartitions::for_each_overpartition(*cfg.n, [&](const overpartitions::Overpartition& op) {
        out << op.to_string() << '\n';
    });
}

// verify ----------------------------------------------------------------

std::vector<ReportTask> verify_tasks(const RunConfig& cfg, const std::shared_ptr<const Workbench>& wb,
                                     std::uint32_t n_max) {
    const auto& id = cfg.identity;
    std::vector<ReportTask> tasks;
    auto single = [&](auto fn) { tasks.push_back([fn] { return std::vector<IdentityReport>{fn()}; }); };

    if (id == "rec") {
        single([wb, n_max] { return wb->check_rec(n_max); });
    } else if (id == "mu_decomp") {
        single([wb, n_max] { return wb->check_mu_decomposition(n_max); });
    } else if (id == "gauss") {
        single([n_max] { return Workbench::check_gauss(n_max); });
    } else if (id == "eq4") {
        for (const auto k : ks_of(cfg))
            single([k, n_max] { return Workbench::check_eq4(k, n_max); });
    } else if (id == "phi") {
        tasks.push_back([wb, k = max_k(cfg), n_max] { return wb->check_phi_suite(k, n_max); });
    } else if (id == "prime") {
        tasks.push_back([wb, k = max_k(cfg), n_max] { return wb->check_prime_suite(k, n_max); });
    } else if (id == "squarefree") {
        tasks.push_back([wb, k = max_k(cfg), n_max] { return wb->check_squarefree_suite(k, n_max); });
    } else if (id == "th2" || id == "th1" || id == "c3") {
        auto defaults = id == "c3" ? identities::sign_grid_sequences() : identities::identity_grid_sequences();
        if (id != "c3")
            defaults.push_back("mangoldt");
        const auto names = sequences_of(cfg, defaults);
        const auto moduli = moduli_of(cfg);
        const auto ks = ks_of(cfg);
        for (const auto& name : names) {
            const auto seq = wb->sequence(name);
            if (id == "c3" && !seq.nonnegative())
                throw UsageError("c3 needs a nonnegative sequence; '" + name + "' takes negative values");
            if (id == "c3" && !seq.is_exact())
                throw UsageError("c3 runs on exact sequences");
            for (const auto& m : moduli) {
                if (id == "th1") {
                    single([wb, seq, m, n_max] { return wb->check_th1(seq, m, n_max); });
                    continue;
                }
                for (const auto k : ks) {
                    if (id == "th2")
                        single([wb, seq, m, k, n_max] { return wb->check_th2(seq, m, k, n_max); });
                    else
                        single([wb, seq, m, k, n_max] { return wb->check_c3(seq, m, k, n_max); });
                }
            }
        }
    } else {
        throw UsageError("unknown identity '" + id +
                         "' (expected rec, th2, c3, th1, mu_decomp, phi, prime, squarefree, gauss, eq4)");
    }
    return tasks;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::uint32_t n_max = require_n_max(cfg, 120);
    // mu_decomp at n reads S(k, n+1).
    const std::uint32_t table_max = cfg.identity == "mu_decomp" ? n_max + 1 : n_max;
    const auto wb = std::make_shared<const Workbench>(table_max, max_k(cfg));
    const auto reports = identities::run_tasks(verify_tasks(cfg, wb, n_max), cfg.threads);

    if (cfg.format == Format::csv)
        out << verify_csv_header << '\n';
    for (const auto& r : reports) {
        out << (cfg.format == Format::csv ? to_csv_rows(r) : to_json_lines(r));
        err << r.identity_id;
        if (const auto p = params_text(r.params); !p.empty())
            err << " [" << p << "]";
        err << " n=" << r.n_first << ".." << r.n_last << " violations=" << r.violations.size() << " ("
            << r.elapsed.count() << " s)\n";
        for (const auto& note : r.notes)
            err << "  note: " << note << '\n';
    }
    return exit_code(reports);
}

// astat / mbar ------------------------------------------------------------

void cmd_astat(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.sequence)
        throw UsageError("astat needs --seq");
    const auto m = modulus_of(cfg);
    const std::uint32_t last = cfg.n ? *cfg.n : require_n_max(cfg, 20);
    const std::uint32_t first = cfg.n ? *cfg.n : 0;
    overpartitions::AMethod method = overpartitions::AMethod::direct;
    if (cfg.method == "gf")
        method = overpartitions::AMethod::gf;
    else if (cfg.method == "convolution")
        method = overpartitions::AMethod::convolution;
    else if (cfg.method == "enumerate")
        method = overpartitions::AMethod::enumerate;
    else if (!cfg.method.empty() && cfg.method != "direct")
        throw UsageError("astat --method must be direct, gf, convolution or enumerate");
    if (method == overpartitions::AMethod::enumerate && last > overpartitions::enumeration_cap)
        throw UsageError("enumeration is capped at n <= " + std::to_string(overpartitions::enumeration_cap));

    const auto sieve = std::make_shared<arith::Sieve>(std::max<std::uint32_t>(last, 2));
    arith::ArithmeticSequence seq = [&] {
        try {
            return arith::ArithmeticSequence::from_name(*cfg.sequence, sieve);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    std::vector<arith::Value> values;
    if (seq.is_exact())
        for (auto& v : overpartitions::a_values(seq, m, last, method))
            values.emplace_back(std::move(v));
    else
        for (auto v : overpartitions::a_values_real(seq, m, last, method))
            values.emplace_back(v);

    if (cfg.format == Format::csv)
        out << "n,a\n";
    for (std::uint32_t n = first; n <= last; ++n) {
        if (cfg.format == Format::csv)
            out << n << ',' << value_text(values[n]) << '\n';
        else
            out << json{{"n", n}, {"a", value_json(values[n])}}.dump() << '\n';
    }
}

void cmd_mbar(const RunConfig& cfg, std::ostream& out) {
    const std::uint32_t k = cfg.k.value_or(1);
    if (k == 0)
        throw UsageError("--k must be positive");
    const std::uint32_t last = cfg.n ? *cfg.n : require_n_max(cfg, 20);
    const std::uint32_t first = cfg.n ? *cfg.n : 0;
    std::vector<BigInt> values;
    if (cfg.method.empty() || cfg.method == "gf") {
        const auto gf = qseries::mbar_gf(k, last);
        values.assign(gf.coefficients().begin(), gf.coefficients().end());
    } else if (cfg.method == "enumerate") {
        if (last > overpartitions::enumeration_cap)
            throw UsageError("enumeration is capped at n <= " + std::to_string(overpartitions::enumeration_cap));
        for (std::uint32_t n = 0; n <= last; ++n)
            values.emplace_back(overpartitions::mbar_enumerate(k, n, overpartitions::MbarReading::least_exceeding));
    } else
        throw UsageError("mbar --method must be gf or enumerate");

    if (cfg.format == Format::csv)
        out << "n,mbar\n";
    for (std::uint32_t n = first; n <= last; ++n) {
        if (cfg.format == Format::csv)
            out << n << ',' << to_decimal(values[n]) << '\n';
        else
            out << json{{"n", n}, {"k", k}, {"mbar", to_decimal(values[n])}}.dump() << '\n';
    }
}

} // namespace

std::string to_json_lines(const IdentityReport& report) {
    std::string s;
    const auto params = params_json(report.params);
    for (const auto& row : report.rows) {
        const json j{{"identity_id", report.identity_id}, {"params", params},       {"n", row.n},
                     {"lhs", value_json(row.lhs)},        {"rhs", value_json(row.rhs)}, {"pass", row.pass}};
        s += j.dump();
        s += '\n';
    }
    return s;
}

std::string to_csv_rows(const IdentityReport& report) {
    std::string s;
    const auto params = params_text(report.params);
    for (const auto& row : report.rows) {
        s += report.identity_id + ',' + params + ',' + std::to_string(row.n) + ',' + value_text(row.lhs) + ',' +
             value_text(row.rhs) + ',' + (row.pass ? "true" : "false") + '\n';
    }
    return s;
}

int exit_code(const std::vector<IdentityReport>& reports) {
    const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
    return all_pass ? ExitCode::ok : ExitCode::violation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Overpartition statistics and identity verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out_path, "Write results to PATH instead of standard output");
    };

    auto* pbar = app.add_subcommand("pbar", "Overpartition counts pbar(0..max)");
    pbar->add_option("--max", cfg.n_max, "Largest n");
    pbar->add_option("--method", cfg.method, "recurrence (default), gf or enumerate");
    add_common(pbar);

    auto* stable = app.add_subcommand("stable", "S(k,n) rows");
    stable->add_option("--n", cfg.n, "Single n");
    stable->add_option("--max", cfg.n_max, "All n in 1..max");
    stable->add_option("--method", cfg.method, "series (default) or enumerate");
    add_common(stable);

    auto* enumerate = app.add_subcommand("enumerate", "List the overpartitions of n, overlined parts marked *");
    enumerate->add_option("--n", cfg.n, "n (at most 40)")->required();
    enumerate->add_option("--out", cfg.out_path, "Write results to PATH instead of standard output");

    auto* astat = app.add_subcommand("astat", "A(a,alpha,beta;n)");
    astat->add_option("--seq", cfg.sequence, "Weight sequence")->required();
    astat->add_option("--alpha", cfg.alpha, "alpha (default 1)");
    astat->add_option("--beta", cfg.beta, "beta (default 0)");
    astat->add_option("--n", cfg.n, "Single n");
    astat->add_option("--max", cfg.n_max, "All n in 0..max");
    astat->add_option("--method", cfg.method, "direct (default), gf, convolution or enumerate");
    add_common(astat);

    auto* mbar = app.add_subcommand("mbar", "Mbar_k(n)");
    mbar->add_option("--k", cfg.k, "k (default 1)");
    mbar->add_option("--n", cfg.n, "Single n");
    mbar->add_option("--max", cfg.n_max, "All n in 0..max");
    mbar->add_option("--method", cfg.method, "gf (default) or enumerate");
    add_common(mbar);

    auto* verify = app.add_subcommand("verify", "Check an identity; exit 1 on any violation");
    verify->add_option("identity", cfg.identity,
                       "rec, th2, c3, th1, mu_decomp, phi, prime, squarefree, gauss or eq4")
        ->required();
    verify->add_option("--max", cfg.n_max, "Largest n (series order for gauss/eq4), default 120");
    verify->add_option("--k", cfg.k, "Single k");
    verify->add_option("--kmax", cfg.k_max, "Check k = 1..kmax (default 4)");
    verify->add_option("--alpha", cfg.alpha, "alpha; default runs every alpha <= --alpha-max");
    verify->add_option("--beta", cfg.beta, "beta (default 0 when --alpha is given)");
    verify->add_option("--alpha-max", cfg.alpha_max, "Grid bound on alpha (default 4)");
    verify->add_option("--seq", cfg.sequence, "Weight sequence; default runs the full grid");
    verify->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
    add_common(verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    }
    cfg.format = format == "json" ? Format::json : Format::csv;

    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) {
            err << "error: cannot open " << cfg.out_path << '\n';
            return ExitCode::usage;
        }
    }
    std::ostream& sink = cfg.out_path.empty() ? out : file;

    try {
        if (pbar->parsed())
            cmd_pbar(cfg, sink);
        else if (stable->parsed())
            cmd_stable(cfg, sink);
        else if (enumerate->parsed())
            cmd_enumerate(cfg, sink);
        else if (astat->parsed())
            cmd_astat(cfg, sink);
        else if (mbar->parsed())
            cmd_mbar(cfg, sink);
        else if (verify->parsed())
            return cmd_verify(cfg, sink, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    }
    return ExitCode::ok;
}

} // namespace overpart::cli
