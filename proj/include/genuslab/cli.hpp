#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace genuslab::cli {

struct Config {
    std::filesystem::path cache_dir = "cache";
    bool use_cache = true;
    unsigned threads = 1;
    std::int64_t oracle_bound = 1'000'000;
    std::uint64_t verdict_bound = 1'000'000;
    int precision_bits = 113;
};

using EnvLookup = std::function<std::optional<std::string>(std::string const &)>;

/// Defaults overridden by GENUSLAB_CACHE and GENUSLAB_THREADS. Flags are
/// applied on top by run(). Invalid values raise InvalidArgument.
Config config_from_environment(EnvLookup const & env);

/// One row of the reference table of Q(sqrt q, sqrt rs).
struct TableRow {
    std::int64_t q, r, s;
    std::int64_t h_K, h1, h2, h3;
};

std::vector<TableRow> const & reference_table();

/// Exit codes: 0 success, 1 validation or usage error, 2 internal
/// inconsistency.
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err, EnvLookup const & env);
int run(int argc, char const * const * argv, std::ostream & out, std::ostream & err);

} // namespace genuslab::cli
