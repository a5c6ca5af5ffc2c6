// Command-line front end: densities of exponentially S-numbers, exact series
// coefficients, brute-force census, and a cross-check battery.
//
// Exit codes: 0 success, 1 failed verify check, 2 bad arguments or set-spec,
// 3 budget refusal.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "expdensity/coefficients.hpp"
#include "expdensity/counting_oracle.hpp"
#include "expdensity/density_engine.hpp"
#include "expdensity/errors.hpp"
#include "expdensity/exponent_set.hpp"
#include "expdensity/numerics.hpp"

namespace {

using namespace expdensity;

struct CliConfig {
    std::string set_spec;
    int digits = 20;
    uint64_t prime_cutoff = kDefaultPrimeCutoff;
    bool prime_cutoff_given = false;
    std::optional<int> terms;
    uint64_t limit = 1'000'000;
    int max_n = 20;
    std::string method;
    bool json = false;
    bool verbose = false;
    bool h_from_engine = false;
    std::string out_path;
};

void emit(const CliConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
    out << text;
}

uint64_t resolve_cutoff_with_warning(const CliConfig& cfg) {
    uint64_t b = resolve_prime_cutoff(cfg.prime_cutoff);
    if (cfg.prime_cutoff_given && b != cfg.prime_cutoff)
        std::cerr << "note: raised --prime-cutoff to the next prime: " << b << "\n";
    return b;
}

int run_density(const CliConfig& cfg) {
    ExponentSet set = ExponentSet::parse(cfg.set_spec);
    DensityResult result = [&] {
        if (cfg.method == "euler")
            return density_euler_truncated(set, cfg.limit, cfg.digits);
        HybridOptions opts;
        opts.digits = cfg.digits;
        opts.prime_cutoff = resolve_cutoff_with_warning(cfg);
        opts.terms = cfg.terms;
        return density_hybrid(set, opts);
    }();

    if (result.error_bound > BigReal::ten_pow(-cfg.digits, 96))
        std::cerr << "note: guaranteed error " << result.error_bound.to_sci(2)
                  << " exceeds 10^-" << cfg.digits << "; trailing digits are not certified\n";

    if (cfg.json) {
        emit(cfg, result.to_json() + "\n");
        return 0;
    }
    std::string text = result.h.to_fixed(cfg.digits) + "\n";
    if (cfg.verbose) {
        text += "log_h       = " + result.log_h.to_fixed(cfg.digits) + "\n";
        text += "error_bound = " + result.error_bound.to_sci(3) + "\n";
        text += "B = " + std::to_string(result.prime_cutoff_B) +
                ", N = " + std::to_string(result.series_terms_N) + "\n";
    }
    emit(cfg, text);
    return 0;
}

int run_coeffs(const CliConfig& cfg) {
    ExponentSet set = ExponentSet::parse(cfg.set_spec);
    const bool recursion = cfg.method != "partition";
    const bool partition = cfg.method == "partition" || cfg.method == "both";
    if (partition && cfg.max_n > 60)
        throw SpecError("--max-n is capped at 60 for the partition method");
    const int N = cfg.max_n;

    VSeq v = set.v_seq(std::max(2, N));
    std::vector<mpz_class> f_rec, f_par;
    std::vector<mpq_class> M_rec;
    if (recursion) {
        CoeffTable table = make_coeff_table(v, N); // asserts f = n(v+M) + Cauchy
        f_rec = std::move(table.f);
        M_rec = std::move(table.M);
    }
    if (partition) {
        f_par.reserve(static_cast<size_t>(N - 1));
        for (int n = 2; n <= N; ++n) {
            f_par.push_back(f_partition(v, n));
            if (abs(f_par.back()) > cauchy_f_limit(n))
                throw std::logic_error("coefficient bound violated at n=" + std::to_string(n));
        }
        if (!recursion) {
            M_rec.assign(static_cast<size_t>(N - 1), mpq_class(0));
            for (int n = 4; n <= N; ++n)
                M_rec[static_cast<size_t>(n - 2)] = M_explicit(v, n);
        }
    }
    const std::vector<mpz_class>& f = recursion ? f_rec : f_par;

    if (cfg.json) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int n = 2; n <= N; ++n) {
            nlohmann::ordered_json row;
            row["n"] = n;
            row["f"] = f[static_cast<size_t>(n - 2)].get_str();
            row["M"] = {{"num", M_rec[static_cast<size_t>(n - 2)].get_num().get_str()},
                        {"den", M_rec[static_cast<size_t>(n - 2)].get_den().get_str()}};
            if (cfg.method == "both")
                row["agree"] = f_rec[static_cast<size_t>(n - 2)] ==
                                       f_par[static_cast<size_t>(n - 2)]
                                   ? "ok"
                                   : "MISMATCH";
            rows.push_back(std::move(row));
        }
        emit(cfg, rows.dump() + "\n");
        return 0;
    }

    std::string text = cfg.method == "both" ? "n\tf_n\tM_n\tagree\n" : "n\tf_n\tM_n\n";
    for (int n = 2; n <= N; ++n) {
        text += std::to_string(n) + "\t" + f[static_cast<size_t>(n - 2)].get_str() +
                "\t" + M_rec[static_cast<size_t>(n - 2)].get_str();
        if (cfg.method == "both")
            text += f_rec[static_cast<size_t>(n - 2)] == f_par[static_cast<size_t>(n - 2)]
                        ? "\tok"
                        : "\tMISMATCH";
        text += "\n";
    }
    emit(cfg, text);
    return 0;
}

int run_count(const CliConfig& cfg) {
    ExponentSet set = ExponentSet::parse(cfg.set_spec);
    CensusReport report;
    if (cfg.h_from_engine) {
        HybridOptions opts;
        opts.digits = cfg.digits;
        DensityResult density = density_hybrid(set, opts);
        report = empirical_density_check(set, cfg.limit, density.h, cfg.digits);
    } else {
        report = count_members(set, cfg.limit);
    }

    if (cfg.json) {
        emit(cfg, report.to_json() + "\n");
        return 0;
    }
    std::string text = "count = " + std::to_string(report.count) + "\n";
    text += "empirical_density = " + BigReal::of(report.empirical_density, 96).to_fixed(12) + "\n";
    if (report.reference_h) {
        text += "h = " + report.reference_h->to_fixed(cfg.digits) + "\n";
        text += "deviation = " + report.deviation->to_sci(3) + "\n";
        text += std::string("check = ") + (*report.pass ? "pass" : "FAIL") + "\n";
    }
    if (cfg.verbose) {
        char label[96];
        std::snprintf(label, sizeof label,
                      "error-term growth constant c = %.6f (reference label only)\n",
                      CensusReport::kErrorTermGrowthConstant);
        text += label;
    }
    emit(cfg, text);
    return 0;
}

int run_verify(const CliConfig& cfg) {
    ExponentSet set = ExponentSet::parse(cfg.set_spec);

    auto fail = [](const std::string& name) {
        std::cout << "FAIL: " << name << "\n";
        return 1;
    };

    {
        VSeq v = set.v_seq(25);
        std::vector<mpz_class> f = f_recursive(v, 25);
        for (int n = 2; n <= 25; ++n)
            if (f_partition(v, n) != f[static_cast<size_t>(n - 2)])
                return fail("coefficient dual path (n <= 25)");
        std::cout << "ok: coefficient dual path (n <= 25)\n";
    }
    {
        VSeq v = set.v_seq(20);
        CoeffTable table = make_coeff_table(v, 20); // asserts f = n(v+M), Cauchy
        for (int n = 4; n <= 20; ++n)
            if (M_explicit(v, n) != table.M_at(n))
                return fail("M dual path (n <= 20)");
        std::cout << "ok: M dual path (n <= 20), f_n = n(v_n + M_n), Cauchy bound\n";
    }
    HybridOptions opts;
    opts.digits = cfg.digits;
    DensityResult hybrid = density_hybrid(set, opts);
    {
        DensityResult euler = density_euler_truncated(set, 1'000'000, cfg.digits);
        BigReal gap = (hybrid.h - euler.h).abs();
        if (gap > hybrid.error_bound + euler.error_bound)
            return fail("hybrid vs euler-truncated agreement (X = 10^6)");
        std::cout << "ok: hybrid vs euler-truncated agreement (X = 10^6)\n";
    }
    {
        mpfr_prec_t prec = hybrid.h.precision_bits();
        BigReal pi = BigReal::pi(prec);
        BigReal lower = BigReal::of_ulong(6, prec) / (pi * pi);
        BigReal slack = hybrid.error_bound + BigReal::pow2(-40);
        if (hybrid.h < lower - slack || hybrid.h > BigReal::of_ulong(1, prec) + slack)
            return fail("density range [6/pi^2, 1]");
        std::cout << "ok: density range [6/pi^2, 1]\n";
    }
    {
        CensusReport census = empirical_density_check(set, 1'000'000, hybrid.h, cfg.digits);
        if (!*census.pass) return fail("census agreement (x = 10^6)");
        std::cout << "ok: census agreement (x = 10^6), deviation "
                  << census.deviation->to_sci(2) << "\n";
    }
    std::cout << "all checks passed\n";
    return 0;
}

int run_presets() {
    for (const auto& [name, desc] : ExponentSet::preset_catalog())
        std::cout << name << "\t" << desc << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"densities of exponentially S-numbers"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_set_option = [&cfg](CLI::App* cmd) {
        cmd->add_option("--set", cfg.set_spec,
                        "set spec: preset:<name> | list:1,2,... | mask:<bits>")
            ->required();
    };
    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_flag("--json", cfg.json, "machine-readable JSON output");
        cmd->add_flag("--verbose", cfg.verbose, "extra diagnostics");
        cmd->add_option("--out", cfg.out_path, "write output to a file instead of stdout");
    };

    CLI::App* density = app.add_subcommand("density", "compute h(E(S))");
    add_set_option(density);
    density->add_option("--digits", cfg.digits, "decimal digits (default 20)")
        ->check(CLI::Range(1, kMaxDigits));
    density->add_option("--prime-cutoff", cfg.prime_cutoff,
                        "series split point B (default 101; raised to a prime)")
        ->check(CLI::Range(static_cast<uint64_t>(2), static_cast<uint64_t>(100'000)));
    density->add_option("--terms", cfg.terms, "series length N (default: auto)")
        ->check(CLI::Range(2, kMaxRecursionN));
    density->add_option("--method", cfg.method, "hybrid (default) | euler")
        ->check(CLI::IsMember({"hybrid", "euler"}))
        ->default_val("hybrid");
    density->add_option("--limit", cfg.limit, "prime limit X for --method euler")
        ->check(CLI::Range(static_cast<uint64_t>(2), static_cast<uint64_t>(1'000'000'000)));
    add_common(density);

    CLI::App* coeffs = app.add_subcommand("coeffs", "exact f_n and M_n tables");
    add_set_option(coeffs);
    coeffs->add_option("--max-n", cfg.max_n, "largest n (default 20)")
        ->check(CLI::Range(2, kMaxRecursionN));
    coeffs->add_option("--method", cfg.method, "recursion (default) | partition | both")
        ->check(CLI::IsMember({"recursion", "partition", "both"}))
        ->default_val("recursion");
    add_common(coeffs);

    CLI::App* count = app.add_subcommand("count", "census of members up to a limit");
    add_set_option(count);
    count->add_option("--limit", cfg.limit, "census limit x")->required();
    count->add_flag("--h-from-engine", cfg.h_from_engine,
                    "also compute h and report deviation and pass/fail");
    count->add_option("--digits", cfg.digits, "digits for the engine h (default 20)")
        ->check(CLI::Range(1, kMaxDigits));
    add_common(count);

    CLI::App* verify = app.add_subcommand("verify", "run all cross-checks for a set");
    add_set_option(verify);
    verify->add_option("--digits", cfg.digits, "digits for the density checks (default 20)")
        ->check(CLI::Range(1, kMaxDigits));

    CLI::App* presets = app.add_subcommand("presets", "list available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.prime_cutoff_given = density->count("--prime-cutoff") > 0;

    try {
        if (app.got_subcommand(density)) return run_density(cfg);
        if (app.got_subcommand(coeffs)) return run_coeffs(cfg);
        if (app.got_subcommand(count)) return run_count(cfg);
        if (app.got_subcommand(verify)) return run_verify(cfg);
        if (app.got_subcommand(presets)) return run_presets();
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
