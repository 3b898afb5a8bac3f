#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "wzeta/harmonic.hpp"
#include "wzeta/relations.hpp"

namespace wzeta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitError = 2;

struct JobConfig {
    int truncation = 0;
    long prime_lo = 5;
    long prime_hi = 100;
    int slack = 2;
    unsigned jobs = 0;  // 0: pick from hardware
    std::filesystem::path cache_dir;  // empty: per-user cache directory
    bool no_cache = false;
    std::filesystem::path out;
    std::string format = "text";  // "text" | "json"
    int max_truncation = kDefaultMaxTruncation;
    long max_prime = 100000;

    VerifyOptions verify_options() const;
};

// "lo..hi" -> [lo, hi]; a single number means a one-prime range.
std::pair<long, long> parse_prime_range(const std::string& text);

std::filesystem::path default_cache_dir();

// Builds or loads the reduced basis for config.truncation, honoring the
// cache settings. A stale or unreadable cache entry is rebuilt.
ReducedBasis obtain_basis(const JobConfig& config, std::ostream& diag);

int cmd_essentials(const JobConfig& config, std::ostream& out, std::ostream& err);
int cmd_reduce(const JobConfig& config, const std::filesystem::path& element_file,
               std::ostream& out, std::ostream& err);
int cmd_discover(const JobConfig& config, const std::filesystem::path& elements_file,
                 std::ostream& out, std::ostream& err);
int cmd_verify(const JobConfig& config, const std::filesystem::path& statement_file,
               std::ostream& out, std::ostream& err);
int cmd_matrix(const JobConfig& config, std::ostream& out, std::ostream& err);

int cmd_special_reversal(const JobConfig& config, const std::string& composition, int order,
                         std::ostream& out, std::ostream& err);
int cmd_special_ones(const JobConfig& config, int order, std::ostream& out, std::ostream& err);
int cmd_special_binom(const JobConfig& config, long k, long r, int order, std::ostream& out,
                      std::ostream& err);
int cmd_special_zetap(const JobConfig& config, int k, long p, int terms, std::ostream& out,
                      std::ostream& err);

}  // namespace wzeta::cli
