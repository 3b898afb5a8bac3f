#include <CLI11.hpp>

#include <iostream>

#include "wzeta/cli.hpp"

using wzeta::cli::JobConfig;

namespace {

void add_common_flags(CLI::App* cmd, JobConfig& config, std::string* primes) {
    cmd->add_option("--slack", config.slack, "extra valuation headroom when reporting")
        ->capture_default_str();
    cmd->add_option("--jobs", config.jobs, "worker threads for per-prime verification (0 = auto)")
        ->capture_default_str();
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--max-n", config.max_truncation, "truncation guard; the basis size doubles per degree")
        ->capture_default_str();
    cmd->add_option("--max-prime", config.max_prime, "largest allowed prime range bound")
        ->capture_default_str();
    cmd->add_option("--cache-dir", config.cache_dir, "basis cache directory");
    cmd->add_flag("--no-cache", config.no_cache, "ignore and do not write the basis cache");
    if (primes)
        cmd->add_option("--primes", *primes, "prime range lo..hi")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wzeta: discovers and certifies weighted congruences for multiple harmonic sums.\n"
        "Series syntax: terms \"<rational> z[parts]\" joined by +/-, e.g. \"1 z[1] - 1/3 z[2,1]\";\n"
        "a bare rational is a constant term; rationals are \"p/q\" or integers."};
    app.require_subcommand(1);

    JobConfig config;
    std::string primes = "5..100";
    std::string element_file, statement_file, composition = "[1]";
    int order = 1;
    long binom_k = 2, binom_r = 1;
    int zeta_k = 2, zeta_terms = 6;
    long zeta_p = 7;

    auto* essentials = app.add_subcommand("essentials", "list essential compositions for a truncation");
    essentials->add_option("--n", config.truncation, "truncation degree")->required();
    add_common_flags(essentials, config, nullptr);

    auto* reduce = app.add_subcommand("reduce", "reduce a series onto essential compositions; emit its congruence");
    reduce->add_option("file", element_file, "series file")->required();
    reduce->add_option("--n", config.truncation, "truncation degree")->required();
    reduce->add_option("--out", config.out, "congruence JSON output path (phi written alongside)");
    add_common_flags(reduce, config, nullptr);

    auto* discover = app.add_subcommand("discover", "find linear relations among reductions of the given series");
    discover->add_option("file", element_file, "file with one series per line")->required();
    discover->add_option("--n", config.truncation, "truncation degree")->required();
    discover->add_option("--out", config.out, "prefix for congruence JSON files");
    add_common_flags(discover, config, nullptr);

    auto* verify = app.add_subcommand("verify", "check a congruence statement over a prime range");
    verify->add_option("file", statement_file, "congruence JSON file")->required();
    add_common_flags(verify, config, &primes);

    auto* matrix = app.add_subcommand("matrix", "export the relation matrix as CSV");
    matrix->add_option("--n", config.truncation, "truncation degree")->required();
    matrix->add_option("--out", config.out, "CSV output path (stdout if omitted)");
    add_common_flags(matrix, config, nullptr);

    auto* special = app.add_subcommand("special", "verify the built-in asymptotic identities");
    special->require_subcommand(1);

    auto* reversal = special->add_subcommand("reversal", "truncated reversal series for a composition");
    reversal->add_option("--s", composition, "composition, e.g. [2,1]")->required();
    reversal->add_option("--n", order, "truncation order")->required();
    add_common_flags(reversal, config, &primes);

    auto* ones = special->add_subcommand("ones", "alternating sum of p^m H({1}^m)");
    ones->add_option("--N", order, "truncation order")->required();
    add_common_flags(ones, config, &primes);

    auto* binom = special->add_subcommand("binom", "C(kp, rp) against its restricted-sum series");
    binom->add_option("--k", binom_k)->required();
    binom->add_option("--r", binom_r)->required();
    binom->add_option("--N", order, "series truncation order")->required();
    add_common_flags(binom, config, &primes);

    auto* zetap = special->add_subcommand("zetap", "partial sums of the series for p^k zeta_p(k)");
    zetap->add_option("--k", zeta_k, "zeta argument (>= 2)")->required();
    zetap->add_option("--p", zeta_p, "prime (>= 5)")->required();
    zetap->add_option("--terms", zeta_terms, "number of series terms")->capture_default_str();
    add_common_flags(zetap, config, nullptr);

    CLI11_PARSE(app, argc, argv);

    try {
        std::tie(config.prime_lo, config.prime_hi) = wzeta::cli::parse_prime_range(primes);
        auto& out = std::cout;
        auto& err = std::cerr;
        if (essentials->parsed()) return wzeta::cli::cmd_essentials(config, out, err);
        if (reduce->parsed()) return wzeta::cli::cmd_reduce(config, element_file, out, err);
        if (discover->parsed()) return wzeta::cli::cmd_discover(config, element_file, out, err);
        if (verify->parsed()) return wzeta::cli::cmd_verify(config, statement_file, out, err);
        if (matrix->parsed()) return wzeta::cli::cmd_matrix(config, out, err);
        if (special->parsed()) {
            if (reversal->parsed())
                return wzeta::cli::cmd_special_reversal(config, composition, order, out, err);
            if (ones->parsed()) return wzeta::cli::cmd_special_ones(config, order, out, err);
            if (binom->parsed())
                return wzeta::cli::cmd_special_binom(config, binom_k, binom_r, order, out, err);
            if (zetap->parsed())
                return wzeta::cli::cmd_special_zetap(config, zeta_k, zeta_p, zeta_terms, out, err);
        }
        std::cerr << "no subcommand selected\n";
        return wzeta::cli::kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return wzeta::cli::kExitError;
    }
}
