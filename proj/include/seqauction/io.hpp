#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "seqauction/analysis.hpp"
#include "seqauction/welfare.hpp"

namespace seqauction {

struct NamedInstance {
  Instance instance;
  std::string name;
  std::optional<TieBreakRule> tie;
};

// Instance files are JSON with T, v1 and v2 as arrays of exact rational
// strings ("p" or "p/q"; never floats), plus an optional name and
// tie-break spec. Validation failures throw std::invalid_argument naming
// the offending field/index and the violated constraint.
NamedInstance parse_instance(const nlohmann::json& doc);
NamedInstance load_instance_file(const std::string& path);
nlohmann::ordered_json instance_json(const Instance& inst,
                                     const std::string& name,
                                     const TieBreakRule* tie = nullptr);

nlohmann::ordered_json tie_rule_json(const TieBreakRule& tie);
TieBreakRule parse_tie_rule(const nlohmann::json& doc);
// CLI spelling: buyer1 | buyer2 | uniform | q=<rational>
TieBreakRule parse_tie_flag(const std::string& flag);

// Machine-readable run report: solved-game tables, realized paths with
// prices, greedy tables, check outcomes, welfare summary. All rationals
// appear exactly; decimals are added only as companions. Byte-for-byte
// reproducible for a given (instance, mode, tie, path cap).
nlohmann::ordered_json run_report(const NamedInstance& named, Mode mode,
                                  const TieBreakRule& tie, size_t path_cap);

nlohmann::ordered_json greedy_report(const NamedInstance& named);

// Figure-style DOT rendering of the solved lattice: node labels
// "(x1,x2)--t" with forward utilities, arcs labelled by bids, solid for
// winning and dashed for losing arcs, bold on positive-probability
// realized arcs from the source.
std::string lattice_dot(const SolvedGame& game, const std::string& name);

// Per-node table (bids, win probability, utilities, price, greedy
// quantities) as CSV.
std::string nodes_csv(const SolvedGame& game, const GreedyProfile& profile);

// Realized price trajectories as CSV rows (path, round, node, winner,
// price, probability) for external plotting.
std::string trajectory_csv(const SolvedGame& game, size_t path_cap);

// Writes via a temp file plus rename so readers never observe partial
// output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace seqauction
