#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqauction/greedy.hpp"
#include "seqauction/valuation.hpp"

namespace seqauction {

enum class Mode {
  no_overbid,       // bids capped by the current incremental value
  overbid_allowed,  // bids are the raw marginal value for winning
};

std::string mode_str(Mode mode);

// Probability that buyer 1 is awarded the item when bids are exactly
// equal. Off ties the higher bid always wins.
class TieBreakRule {
 public:
  static TieBreakRule buyer1();
  static TieBreakRule buyer2();
  static TieBreakRule uniform();
  static TieBreakRule constant(Rat q);
  // Per-node q values; nodes missing from the table use default_q.
  static TieBreakRule table(std::map<Node, Rat> entries, Rat default_q);

  const Rat& q(Node x) const;
  const std::string& describe() const { return description_; }

 private:
  TieBreakRule(Rat default_q, std::string description);

  Rat default_q_;
  std::map<Node, Rat> table_;
  std::string description_;
};

// How the per-node bids of a solved game were produced.
enum class BidRule {
  equilibrium,  // backward-induction bids for the chosen mode
  greedy,       // threshold prices capped by incremental values
};

// Per-node bids, win probabilities and expected forward utilities for a
// bid rule and tie-breaking rule. Immutable once built; safe to share.
class SolvedGame {
 public:
  const Instance& instance() const { return inst_; }
  int T() const { return inst_.T(); }
  Mode mode() const { return mode_; }
  BidRule bid_rule() const { return bid_rule_; }
  const TieBreakRule& tie() const { return tie_; }

  const Rat& bid(int buyer, Node x) const;
  Rat win_prob(int buyer, Node x) const;
  // Expected forward utility; zero at terminal nodes.
  Rat utility(int buyer, Node x) const;
  // The price paid at x: the losing (second-highest) bid.
  Rat price(Node x) const;

 private:
  friend SolvedGame solve(const Instance&, Mode, const TieBreakRule&);
  friend SolvedGame greedy_outcome_game(const Instance&, const TieBreakRule&);

  struct Cell {
    Rat bid1, bid2, win1, u1, u2;
  };

  SolvedGame(Instance inst, Mode mode, BidRule rule, TieBreakRule tie);
  const Cell& cell(Node x) const;
  void run_recursion();

  Instance inst_;
  Mode mode_;
  BidRule bid_rule_;
  TieBreakRule tie_;
  NodeTable<Cell> cells_;
};

// Backward induction over the lattice. In overbid_allowed mode the bids
// are used exactly as the marginal-value formulas produce them, with no
// clamping; in no_overbid mode each bid is capped by the buyer's current
// incremental value.
SolvedGame solve(const Instance& inst, Mode mode, const TieBreakRule& tie);

// The outcome when both buyers post their greedy bids at every node,
// evaluated under the same expected-utility recursion.
SolvedGame greedy_outcome_game(const Instance& inst, const TieBreakRule& tie);

struct DeviationViolation {
  Node node;
  int buyer;
  Rat candidate_bid;
  Rat equilibrium_utility;
  Rat deviation_utility;
};

// One-step deviation oracle, independent of the closed-form bid rules:
// for every decision node and buyer, holding the opponent fixed, no
// candidate bid from {0, b_opp - eta, b_opp, b_opp + eta, v_i(1|x), own
// equilibrium bid, uncapped marginal value} may strictly increase the
// expected forward utility at that node. Candidates above the cap are
// dropped in no_overbid mode. eta is 1/1000 of the smallest nonzero bid
// gap in the game.
std::vector<DeviationViolation> deviation_check(const SolvedGame& game);

// Recomputes the forward-utility recursion from the stored bids and win
// probabilities; returns the nodes where the stored values disagree.
std::vector<Node> recursion_mismatches(const SolvedGame& game);

struct TieIndependenceResult {
  Mode mode;
  bool utilities_equal;
  // First disagreement found, if any: node, buyer, and the two values.
  std::optional<Node> node;
  int buyer = 0;
  Rat value_a, value_b;
};

// Solves under tie rules q in {0, 1/2, 1} and compares utilities at every
// node. With overbidding allowed they must be identical; with the
// no-overbidding cap they may legitimately differ.
TieIndependenceResult utilities_tiebreak_independence_check(
    const Instance& inst, Mode mode);

}  // namespace seqauction
