// Test-only brute-force oracles, written straight from the definitions
// with naive loops. They must stay independent of the library's
// prefix-sum / cached-profile implementations they cross-check.
#pragma once

#include <vector>

#include "seqauction/valuation.hpp"

namespace oracle {

using seqauction::Instance;
using seqauction::Node;
using seqauction::Rat;

inline Rat naive_payoff(const Instance& inst, int buyer, int k, Node x) {
  if (k == 0) return Rat(0);
  int t = seqauction::remaining(x, inst.T());
  int own = seqauction::own_items(x, buyer);
  int opp = seqauction::own_items(x, seqauction::other(buyer));
  Rat sum(0);
  for (int j = 1; j <= k; ++j) {
    sum += inst.of(buyer).increment(own + j);
  }
  return sum - Rat(k) * inst.of(seqauction::other(buyer))
                            .increment(opp + t - k + 1);
}

inline Rat naive_utility(const Instance& inst, int buyer, Node x) {
  int t = seqauction::remaining(x, inst.T());
  Rat best(0);
  for (int k = 1; k <= t; ++k) {
    Rat p = naive_payoff(inst, buyer, k, x);
    if (p > best) best = p;
  }
  return best;
}

inline int naive_demand(const Instance& inst, int buyer, Node x) {
  int t = seqauction::remaining(x, inst.T());
  Rat best(0);
  int arg = 0;
  for (int k = 1; k <= t; ++k) {
    Rat p = naive_payoff(inst, buyer, k, x);
    if (p > best) {
      best = p;
      arg = k;
    }
  }
  return arg;
}

inline int naive_power(const Instance& inst, int buyer, Node x) {
  int t = seqauction::remaining(x, inst.T());
  int own = seqauction::own_items(x, buyer);
  int opp = seqauction::own_items(x, seqauction::other(buyer));
  int f = 0;
  for (int k = 1; k <= t; ++k) {
    if (inst.of(buyer).increment(own + k) >
        inst.of(seqauction::other(buyer)).increment(opp + t - k + 1)) {
      f = k;
    }
  }
  return f;
}

// All k maximizing the welfare split, by direct enumeration.
inline std::vector<int> naive_argopt(const Instance& inst, Node x) {
  int t = seqauction::remaining(x, inst.T());
  std::vector<Rat> sw;
  for (int k = 0; k <= t; ++k) {
    Rat s(0);
    for (int j = 1; j <= k; ++j) {
      s += inst.of(1).increment(x.x1 + j);
    }
    for (int j = 1; j <= t - k; ++j) {
      s += inst.of(2).increment(x.x2 + j);
    }
    sw.push_back(s);
  }
  Rat best = sw[0];
  for (const Rat& s : sw) {
    if (s > best) best = s;
  }
  std::vector<int> arg;
  for (int k = 0; k <= t; ++k) {
    if (sw[static_cast<size_t>(k)] == best) arg.push_back(k);
  }
  return arg;
}

}  // namespace oracle
