#pragma once

#include <array>

#include "seqauction/valuation.hpp"

namespace seqauction {

// Quantities induced by the wait-then-outbid ("greedy") strategy in which
// buyer i bids zero for t-k rounds and then outbids the opponent for the
// final k rounds.

// Payoff of targeting exactly k items from x:
//   sum_{j<=k} v_i(j|x) - k * v_{-i}(t-k+1|x), and 0 for k = 0.
// May be negative for unprofitable targets.
Rat greedy_payoff(const Instance& inst, int buyer, int k, Node x);

// Best payoff over k in [0, t]. Always >= 0 since k = 0 yields 0.
Rat greedy_utility(const Instance& inst, int buyer, Node x);

// Smallest maximizer of the greedy payoff.
int greedy_demand(const Instance& inst, int buyer, Node x);

// Largest k with v_i(k|x) strictly above v_{-i}(t-k+1|x); 0 when none.
// Measures how many items the buyer could profitably wrestle away.
int duopsony_factor(const Instance& inst, int buyer, Node x);

// Price the buyer must beat to secure its greedy demand:
// v_i(1|x) when it has no duopsony power, else v_{-i}(t-kappa+1|x).
Rat baseline_price(const Instance& inst, int buyer, Node x);

// Bid consistent with earning exactly the greedy utility in both
// continuations: v_i(1|x) + mu_i(x+e_i) - mu_i(x+e_{-i}), child terms
// zero at t = 1.
Rat threshold_price(const Instance& inst, int buyer, Node x);

// Threshold price capped by the current incremental value.
Rat greedy_bid(const Instance& inst, int buyer, Node x);

// Buyer i is a monopsonist when the opponent has no duopsony power.
bool is_monopsonist(const Instance& inst, int buyer, Node x);

// All of the above for every node, built in one pass over the lattice
// with remaining supply ascending so threshold prices read cached child
// utilities. Immutable once built.
class GreedyProfile {
 public:
  explicit GreedyProfile(const Instance& inst);

  const Instance& instance() const { return inst_; }
  int T() const { return inst_.T(); }

  // mu/f/kappa are defined (as zero) at terminal nodes as well.
  int f(int buyer, Node x) const { return cell(x).f[idx(buyer)]; }
  const Rat& mu(int buyer, Node x) const { return cell(x).mu[idx(buyer)]; }
  int kappa(int buyer, Node x) const { return cell(x).kappa[idx(buyer)]; }

  // Prices exist only at decision nodes.
  const Rat& beta(int buyer, Node x) const;
  const Rat& threshold(int buyer, Node x) const;
  Rat bid(int buyer, Node x) const;

  bool monopsonist(int buyer, Node x) const {
    return f(other(buyer), x) == 0;
  }

 private:
  struct Cell {
    std::array<int, 2> f{0, 0};
    std::array<int, 2> kappa{0, 0};
    std::array<Rat, 2> mu;
    std::array<Rat, 2> beta;
    std::array<Rat, 2> p;
  };

  static size_t idx(int buyer) { return static_cast<size_t>(buyer - 1); }
  const Cell& cell(Node x) const { return cells_.at(x); }

  Instance inst_;
  NodeTable<Cell> cells_;
};

}  // namespace seqauction
