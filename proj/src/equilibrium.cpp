#include "seqauction/equilibrium.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace seqauction {

std::string mode_str(Mode mode) {
  return mode == Mode::no_overbid ? "no-overbid" : "overbid";
}

TieBreakRule::TieBreakRule(Rat default_q, std::string description)
    : default_q_(std::move(default_q)), description_(std::move(description)) {
  if (default_q_ < 0 || default_q_ > 1) {
    throw std::invalid_argument("tie probability " + rat_str(default_q_) +
                                " outside [0,1]");
  }
}

TieBreakRule TieBreakRule::buyer1() { return TieBreakRule(Rat(1), "buyer1"); }
TieBreakRule TieBreakRule::buyer2() { return TieBreakRule(Rat(0), "buyer2"); }
TieBreakRule TieBreakRule::uniform() {
  return TieBreakRule(make_rat(1, 2), "uniform");
}

TieBreakRule TieBreakRule::constant(Rat q) {
  std::string desc = "q=" + rat_str(q);
  return TieBreakRule(std::move(q), desc);
}

TieBreakRule TieBreakRule::table(std::map<Node, Rat> entries, Rat default_q) {
  TieBreakRule rule(std::move(default_q), "table");
  for (const auto& [node, q] : entries) {
    if (q < 0 || q > 1) {
      throw std::invalid_argument("tie probability " + rat_str(q) + " at " +
                                  node_str(node) + " outside [0,1]");
    }
  }
  rule.table_ = std::move(entries);
  return rule;
}

const Rat& TieBreakRule::q(Node x) const {
  auto it = table_.find(x);
  return it == table_.end() ? default_q_ : it->second;
}

SolvedGame::SolvedGame(Instance inst, Mode mode, BidRule rule,
                       TieBreakRule tie)
    : inst_(std::move(inst)),
      mode_(mode),
      bid_rule_(rule),
      tie_(std::move(tie)),
      cells_(inst_.T()) {}

const SolvedGame::Cell& SolvedGame::cell(Node x) const {
  if (!is_decision(x, T())) {
    throw std::logic_error("no bids at terminal node " + node_str(x));
  }
  return cells_.at(x);
}

const Rat& SolvedGame::bid(int buyer, Node x) const {
  return buyer == 1 ? cell(x).bid1 : cell(x).bid2;
}

Rat SolvedGame::win_prob(int buyer, Node x) const {
  const Rat& w1 = cell(x).win1;
  return buyer == 1 ? w1 : Rat(1 - w1);
}

Rat SolvedGame::utility(int buyer, Node x) const {
  if (is_terminal(x, T())) return Rat(0);
  return buyer == 1 ? cells_.at(x).u1 : cells_.at(x).u2;
}

Rat SolvedGame::price(Node x) const {
  const Cell& c = cell(x);
  return rat_min(c.bid1, c.bid2);
}

// Fills win probabilities and forward utilities from the bids already
// stored in each cell. Visits groups with remaining supply ascending so
// child utilities are always available.
void SolvedGame::run_recursion() {
  int T = inst_.T();
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      Cell& c = cells_.at(x);
      Node w1 = child(x, 1, T);
      Node w2 = child(x, 2, T);
      if (c.bid1 > c.bid2) {
        c.win1 = 1;
      } else if (c.bid1 < c.bid2) {
        c.win1 = 0;
      } else {
        c.win1 = tie_.q(x);
      }
      Rat lose1 = utility(1, w2);
      Rat lose2 = utility(2, w1);
      c.u1 = c.win1 * (incremental(inst_, 1, 1, x) - c.bid2 + utility(1, w1)) +
             (1 - c.win1) * lose1;
      c.u2 = (1 - c.win1) *
                 (incremental(inst_, 2, 1, x) - c.bid1 + utility(2, w2)) +
             c.win1 * lose2;
    }
  }
}

SolvedGame solve(const Instance& inst, Mode mode, const TieBreakRule& tie) {
  SolvedGame game(inst, mode, BidRule::equilibrium, tie);
  int T = inst.T();
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      SolvedGame::Cell& c = game.cells_.at(x);
      Node w1 = child(x, 1, T);
      Node w2 = child(x, 2, T);
      Rat v1 = incremental(inst, 1, 1, x);
      Rat v2 = incremental(inst, 2, 1, x);
      // marginal value for winning: increment + u(win) - u(lose)
      Rat mv1 = v1 + game.utility(1, w1) - game.utility(1, w2);
      Rat mv2 = v2 + game.utility(2, w2) - game.utility(2, w1);
      c.bid1 = mode == Mode::no_overbid ? rat_min(v1, mv1) : mv1;
      c.bid2 = mode == Mode::no_overbid ? rat_min(v2, mv2) : mv2;
      if (c.bid1 > c.bid2) {
        c.win1 = 1;
      } else if (c.bid1 < c.bid2) {
        c.win1 = 0;
      } else {
        c.win1 = tie.q(x);
      }
      c.u1 = c.win1 * (v1 - c.bid2 + game.utility(1, w1)) +
             (1 - c.win1) * game.utility(1, w2);
      c.u2 = (1 - c.win1) * (v2 - c.bid1 + game.utility(2, w2)) +
             c.win1 * game.utility(2, w1);
    }
  }
  return game;
}

SolvedGame greedy_outcome_game(const Instance& inst, const TieBreakRule& tie) {
  GreedyProfile profile(inst);
  SolvedGame game(inst, Mode::no_overbid, BidRule::greedy, tie);
  int T = inst.T();
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      SolvedGame::Cell& c = game.cells_.at(x);
      c.bid1 = profile.bid(1, x);
      c.bid2 = profile.bid(2, x);
    }
  }
  game.run_recursion();
  return game;
}

namespace {

// Smallest nonzero |bid1 - bid2| over all decision nodes; 1 when every
// node ties.
Rat smallest_bid_gap(const SolvedGame& game) {
  Rat gap(0);
  bool found = false;
  for (const auto& group : nodes_by_remaining(game.T())) {
    for (Node x : group) {
      if (is_terminal(x, game.T())) continue;
      Rat d = game.bid(1, x) - game.bid(2, x);
      if (d < 0) d = -d;
      if (d > 0 && (!found || d < gap)) {
        gap = d;
        found = true;
      }
    }
  }
  return found ? gap : Rat(1);
}

}  // namespace

std::vector<DeviationViolation> deviation_check(const SolvedGame& game) {
  std::vector<DeviationViolation> violations;
  const Instance& inst = game.instance();
  int T = inst.T();
  Rat eta = smallest_bid_gap(game) / 1000;
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      for (int buyer = 1; buyer <= 2; ++buyer) {
        int opp = other(buyer);
        Rat opp_bid = game.bid(opp, x);
        Rat value = incremental(inst, buyer, 1, x);
        Rat u_win = game.utility(buyer, child(x, buyer, T));
        Rat u_lose = game.utility(buyer, child(x, opp, T));
        Rat marginal = value + u_win - u_lose;
        std::vector<Rat> candidates = {Rat(0),         opp_bid - eta,
                                       opp_bid,        opp_bid + eta,
                                       value,          game.bid(buyer, x),
                                       marginal};
        Rat u_eq = game.utility(buyer, x);
        for (const Rat& c : candidates) {
          if (game.mode() == Mode::no_overbid && c > value) continue;
          Rat prob;
          if (c > opp_bid) {
            prob = 1;
          } else if (c < opp_bid) {
            prob = 0;
          } else {
            prob = buyer == 1 ? game.tie().q(x) : Rat(1 - game.tie().q(x));
          }
          Rat u_dev = prob * (value - opp_bid + u_win) + (1 - prob) * u_lose;
          if (u_dev > u_eq) {
            violations.push_back({x, buyer, c, u_eq, u_dev});
          }
        }
      }
    }
  }
  return violations;
}

std::vector<Node> recursion_mismatches(const SolvedGame& game) {
  std::vector<Node> bad;
  const Instance& inst = game.instance();
  int T = inst.T();
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      Node w1 = child(x, 1, T);
      Node w2 = child(x, 2, T);
      const Rat& b1 = game.bid(1, x);
      const Rat& b2 = game.bid(2, x);
      Rat pi1;
      if (b1 > b2) {
        pi1 = 1;
      } else if (b1 < b2) {
        pi1 = 0;
      } else {
        pi1 = game.tie().q(x);
      }
      Rat u1 = pi1 * (incremental(inst, 1, 1, x) - b2 + game.utility(1, w1)) +
               (1 - pi1) * game.utility(1, w2);
      Rat u2 =
          (1 - pi1) * (incremental(inst, 2, 1, x) - b1 + game.utility(2, w2)) +
          pi1 * game.utility(2, w1);
      if (u1 != game.utility(1, x) || u2 != game.utility(2, x) ||
          pi1 != game.win_prob(1, x)) {
        bad.push_back(x);
      }
    }
  }
  return bad;
}

TieIndependenceResult utilities_tiebreak_independence_check(
    const Instance& inst, Mode mode) {
  TieIndependenceResult result{mode, true, std::nullopt, 0, Rat(0), Rat(0)};
  SolvedGame base = solve(inst, mode, TieBreakRule::buyer2());
  for (const TieBreakRule& rule :
       {TieBreakRule::uniform(), TieBreakRule::buyer1()}) {
    SolvedGame alt = solve(inst, mode, rule);
    for (const auto& group : nodes_by_remaining(inst.T())) {
      for (Node x : group) {
        if (is_terminal(x, inst.T())) continue;
        for (int buyer = 1; buyer <= 2; ++buyer) {
          Rat a = base.utility(buyer, x);
          Rat b = alt.utility(buyer, x);
          if (a != b) {
            result.utilities_equal = false;
            result.node = x;
            result.buyer = buyer;
            result.value_a = a;
            result.value_b = b;
            return result;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace seqauction
