#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seqauction/equilibrium.hpp"

namespace seqauction {

inline constexpr size_t default_path_cap = size_t{1} << 16;

// One positive-probability play-through from a start node to a terminal
// node: the visited nodes, the winner and price of each round, and the
// product of per-round win probabilities.
struct PathRealization {
  std::vector<Node> nodes;
  std::vector<int> winners;
  std::vector<Rat> prices;
  Rat probability;

  Node start() const { return nodes.front(); }
  Node finish() const { return nodes.back(); }
  size_t rounds() const { return winners.size(); }
  int items_won(int buyer) const {
    return own_items(finish(), buyer) - own_items(start(), buyer);
  }
  // Sum over the rounds this buyer won of (value gained - price paid).
  Rat realized_utility(const Instance& inst, int buyer) const;
};

struct PathSet {
  std::vector<PathRealization> paths;
  // Enumeration stopped at the cap; results are incomplete. Checks must
  // treat this as an error, never as a silently smaller sample.
  bool truncated = false;
};

// Depth-first enumeration (buyer-1 branch first) of every path from
// `start` whose rounds all happen with positive probability.
PathSet realized_paths(const SolvedGame& game, Node start,
                       size_t cap = default_path_cap);

struct Violation {
  std::string what;
  Node node;
  int buyer = 0;
  std::string expected;
  std::string actual;
};

struct Report {
  std::string name;
  size_t cases_checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string what, Node node, int buyer, std::string expected,
           std::string actual);
};

// Prices along every realized path from `start` must be weakly
// decreasing.
Report check_declining_prices(const SolvedGame& game, Node start = Node{0, 0},
                              size_t cap = default_path_cap);

// Simulates both buyers posting greedy bids from `start` and checks, per
// realized path: some eligible buyer (a monopsonist when one exists, else
// a minimum-threshold-price buyer) earns exactly its greedy utility and
// wins at least its greedy demand; both buyers win at least their greedy
// demands; prices equal that buyer's threshold price until its demand
// first equals the remaining supply and its baseline price afterwards;
// prices weakly decrease.
Report greedy_outcome_check(const Instance& inst, Node start,
                            const TieBreakRule& tie,
                            size_t cap = default_path_cap);

// Wherever a monopsonist exists, the no-overbid equilibrium and the
// greedy simulation must agree on the per-node price and both buyers'
// expected utilities.
Report monopsonist_equivalence_check(const Instance& inst,
                                     const TieBreakRule& tie);

// True when some positive-probability path from x reaches a final round
// y with bid_i(y) >= bid_{-i}(y).
bool is_quasi_monopsonist(const SolvedGame& game, int buyer, Node x);

// Structural checks on a no-overbid equilibrium: (a) at reachable nodes
// where neither buyer demands the entire supply, the price is at least
// the minimum threshold price; (b) every decision node has a
// quasi-monopsonist; (c) being a quasi-monopsonist survives the shift
// x -> x + e_{-i} - e_i.
Report eql_character_check(const SolvedGame& game,
                           const GreedyProfile& profile);

// How the start of the competitive-phase boundary is detected. The
// default settles the phase when exactly one buyer stays
// quasi-monopsonist for the rest of the path; the alternative uses the
// first node where a true monopsonist exists.
enum class CompetitiveBoundary {
  quasi_monopsonist_settled,
  first_monopsonist,
};

struct PhaseSegmentation {
  size_t competitive_end = 0;  // first round of the competition-reduction phase
  size_t reduction_end = 0;    // first round of the monopsony phase
  int monopsonist = 0;         // 0 when the whole path stays competitive
};

PhaseSegmentation phase_segmentation(
    const SolvedGame& game, const GreedyProfile& profile,
    const PathRealization& path,
    CompetitiveBoundary boundary = CompetitiveBoundary::quasi_monopsonist_settled);

// Node-level invariants of the greedy quantities (power, payoff, demand,
// baseline and threshold evolution), checked at every decision node.
Report greedy_invariant_suite(const Instance& inst,
                              const GreedyProfile& profile);

// Path probabilities from a start node must sum to exactly one.
Report check_path_probabilities(const SolvedGame& game, Node start,
                                size_t cap = default_path_cap);

}  // namespace seqauction
