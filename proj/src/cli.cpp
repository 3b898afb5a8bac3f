#include "wzeta/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace wzeta::cli {

namespace fs = std::filesystem;

VerifyOptions JobConfig::verify_options() const {
    VerifyOptions opt;
    opt.slack = slack;
    opt.jobs = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
    opt.prime_guard = max_prime;
    return opt;
}

std::pair<long, long> parse_prime_range(const std::string& text) {
    auto dots = text.find("..");
    long lo, hi;
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stol(text);
        } else {
            lo = std::stol(text.substr(0, dots));
            hi = std::stol(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("prime range must be \"lo..hi\": " + text);
    }
    if (lo < 2 || hi < lo)
        throw std::invalid_argument("prime range must satisfy 2 <= lo <= hi: " + text);
    return {lo, hi};
}

std::filesystem::path default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return fs::path(xdg) / "wzeta";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "wzeta";
    return fs::path(".wzeta-cache");
}

namespace {

std::string read_text_file(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

// Joins non-comment lines into one series expression.
std::string strip_comments(const std::string& text) {
    std::istringstream is(text);
    std::string line, out;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        out += line;
        out += ' ';
    }
    return out;
}

void require_truncation(const JobConfig& config, int minimum) {
    if (config.truncation < minimum)
        throw std::invalid_argument("--n must be at least " + std::to_string(minimum));
    if (config.truncation > config.max_truncation)
        throw std::invalid_argument("--n exceeds --max-n (" +
                                    std::to_string(config.max_truncation) +
                                    "); basis size doubles per degree");
}

int report_exit(const VerificationReport& report, const JobConfig& config, std::ostream& out) {
    if (config.format == "json") {
        out << report.to_json().dump(2) << '\n';
    } else {
        out << report.table();
    }
    return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << j.dump(2) << '\n';
    if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

ReducedBasis obtain_basis(const JobConfig& config, std::ostream& diag) {
    fs::path dir = config.cache_dir.empty() ? default_cache_dir() : config.cache_dir;
    fs::path file = dir / ("basis_n" + std::to_string(config.truncation) + "_k" +
                           std::to_string(kKernelVersion) + ".json");
    if (!config.no_cache && fs::exists(file)) {
        try {
            return ReducedBasis::load(file);
        } catch (const std::exception& e) {
            diag << "note: ignoring unusable cache " << file.string() << " (" << e.what() << ")\n";
        }
    }
    auto basis = ReducedBasis::reduce(RelationMatrix::build(config.truncation, config.max_truncation));
    if (!config.no_cache) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (!ec) {
            try {
                basis.save(file);
            } catch (const std::exception& e) {
                diag << "note: could not write cache " << file.string() << " (" << e.what() << ")\n";
            }
        }
    }
    return basis;
}

int cmd_essentials(const JobConfig& config, std::ostream& out, std::ostream& err) {
    require_truncation(config, 2);
    ReducedBasis basis = obtain_basis(config, err);
    const auto& essentials = basis.essential_columns();
    if (config.format == "json") {
        nlohmann::json names = nlohmann::json::array();
        for (const auto& c : essentials) names.push_back(c.str());
        out << nlohmann::json{{"truncation", config.truncation}, {"essential", std::move(names)}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    if (essentials.empty()) {
        out << "none\n";
        return kExitOk;
    }
    for (size_t i = 0; i < essentials.size(); ++i) {
        if (i) out << ' ';
        out << essentials[i].str();
    }
    out << '\n';
    return kExitOk;
}

int cmd_reduce(const JobConfig& config, const fs::path& element_file, std::ostream& out,
               std::ostream& err) {
    require_truncation(config, 2);
    TruncatedSeries element =
        TruncatedSeries::parse(strip_comments(read_text_file(element_file)), config.truncation);
    ReducedBasis basis = obtain_basis(config, err);
    TruncatedSeries phi = basis.reduce_element(element);
    CongruenceStatement statement = basis.congruence_for(element);

    out << "phi: " << phi.str() << '\n';
    out << "congruence (normalized): " << statement.normalized_text() << '\n';
    out << "congruence (display):    " << statement.display_text() << '\n';

    if (!config.out.empty()) {
        write_json_file(config.out, statement.to_json());
        fs::path phi_path = config.out;
        phi_path.replace_extension(".phi.json");
        write_json_file(phi_path, phi.to_json());
        out << "wrote " << config.out.string() << " and " << phi_path.string() << '\n';
    }
    return kExitOk;
}

int cmd_discover(const JobConfig& config, const fs::path& elements_file, std::ostream& out,
                 std::ostream& err) {
    require_truncation(config, 2);
    std::vector<TruncatedSeries> elements;
    std::istringstream lines(read_text_file(elements_file));
    std::string line;
    size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            elements.push_back(TruncatedSeries::parse(line, config.truncation));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (elements.empty()) throw std::invalid_argument("no series found in " + elements_file.string());

    ReducedBasis basis = obtain_basis(config, err);
    auto vectors = basis.discover(elements);
    if (vectors.empty()) {
        out << "no relations found\n";
        return kExitOk;
    }
    for (size_t v = 0; v < vectors.size(); ++v) {
        out << "relation " << v + 1 << ": (";
        for (size_t i = 0; i < vectors[v].size(); ++i) {
            if (i) out << ", ";
            out << rational_to_string(vectors[v][i]);
        }
        out << ")\n";
        TruncatedSeries combined(config.truncation);
        for (size_t i = 0; i < elements.size(); ++i) {
            TruncatedSeries scaled = elements[i];
            scaled *= vectors[v][i];
            combined += scaled;
        }
        CongruenceStatement statement = basis.congruence_for(combined);
        out << "  " << statement.display_text() << '\n';
        if (!config.out.empty()) {
            fs::path path = config.out;
            path += "." + std::to_string(v + 1) + ".json";
            write_json_file(path, statement.to_json());
            out << "  wrote " << path.string() << '\n';
        }
    }
    return kExitOk;
}

int cmd_verify(const JobConfig& config, const fs::path& statement_file, std::ostream& out,
               std::ostream& err) {
    (void)err;
    nlohmann::json j;
    {
        std::ifstream is(statement_file);
        if (!is) throw std::runtime_error("cannot open " + statement_file.string());
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("invalid statement file " + statement_file.string() + ": " +
                                     e.what());
        }
    }
    CongruenceStatement statement = CongruenceStatement::from_json(j);
    auto report =
        verify_congruence(statement, config.prime_lo, config.prime_hi, config.verify_options());
    return report_exit(report, config, out);
}

int cmd_matrix(const JobConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    require_truncation(config, 2);
    RelationMatrix m = RelationMatrix::build(config.truncation, config.max_truncation);
    if (config.out.empty()) {
        m.write_csv(out);
    } else {
        std::ofstream os(config.out);
        if (!os) throw std::runtime_error("cannot open " + config.out.string() + " for writing");
        m.write_csv(os);
        if (!os) throw std::runtime_error("failed writing " + config.out.string());
        out << "wrote " << config.out.string() << " (" << m.rows().size() << " rows, "
            << m.columns().size() << " columns)\n";
    }
    return kExitOk;
}

int cmd_special_reversal(const JobConfig& config, const std::string& composition, int order,
                         std::ostream& out, std::ostream& err) {
    (void)err;
    auto report = verify_reversal_series(Composition::parse(composition), order, config.prime_lo,
                                         config.prime_hi, config.verify_options());
    return report_exit(report, config, out);
}

int cmd_special_ones(const JobConfig& config, int order, std::ostream& out, std::ostream& err) {
    (void)err;
    auto report = verify_ones_alternating(order, config.prime_lo, config.prime_hi,
                                          config.verify_options());
    return report_exit(report, config, out);
}

int cmd_special_binom(const JobConfig& config, long k, long r, int order, std::ostream& out,
                      std::ostream& err) {
    (void)err;
    auto report = verify_binomial_representation(k, r, order, config.prime_lo, config.prime_hi,
                                                 config.verify_options());
    return report_exit(report, config, out);
}

int cmd_special_zetap(const JobConfig& config, int k, long p, int terms, std::ostream& out,
                      std::ostream& err) {
    (void)err;
    PrimePowerResidue residue = padic_zeta_series(k, p, terms);
    int certified = padic_zeta_certified_exponent(k, terms);
    bool even = k % 2 == 0;
    bool ok = !even || residue.valuation() >= certified;
    if (config.format == "json") {
        nlohmann::json j{{"k", k},
                         {"p", p},
                         {"terms", terms},
                         {"certified_exponent", certified},
                         {"value", residue.value().get_str()},
                         {"valuation", residue.valuation()},
                         {"valuation_capped", residue.valuation_capped()}};
        if (even) j["passed"] = ok;
        out << j.dump(2) << '\n';
    } else {
        out << "partial sum of the p-adic zeta series for p^" << k << " zeta_p(" << k << "), p=" << p
            << ", " << terms << " terms\n";
        out << "value mod p^" << residue.exponent() << ": " << residue.value().get_str() << '\n';
        out << "certified exponent: " << certified << ", achieved valuation: "
            << (residue.valuation_capped() ? ">=" : "") << residue.valuation() << '\n';
        if (even) out << (ok ? "pass" : "FAIL") << " (zeta_p vanishes at even arguments)\n";
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace wzeta::cli
