#pragma once

#include "persym/persym.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace persym::cli {

enum ExitCode : int {
    ok = 0,
    mismatch = 1,
    usage = 2,
    budget_refused = 3,
    no_closed_form = 4,
};

/// Runs one command line (args excludes the program name); the JSON report goes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::ordered_json census_report(const RankDistribution& dist, std::uint64_t shard_count,
                                     std::uint64_t shard_index);

/// Inverse of census_report's "params"/"gamma"/"tuples_scanned" fields.
RankDistribution distribution_from_report(const nlohmann::ordered_json& report);

/// "i,gamma" header and one line per rank.
std::string gamma_csv(const RankDistribution& dist);

}  // namespace persym::cli
