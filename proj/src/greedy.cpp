#include "seqauction/greedy.hpp"

#include <stdexcept>

namespace seqauction {

namespace {

void require_decision(const Instance& inst, Node x, const char* what) {
  if (!is_decision(x, inst.T())) {
    throw std::logic_error(std::string(what) + " at terminal node " +
                           node_str(x));
  }
}

}  // namespace

Rat greedy_payoff(const Instance& inst, int buyer, int k, Node x) {
  int t = remaining(x, inst.T());
  if (k < 0 || k > t) {
    throw std::out_of_range("greedy_payoff: k = " + std::to_string(k) +
                            " outside [0," + std::to_string(t) + "]");
  }
  if (k == 0) return Rat(0);
  Rat own = cumulative_from(inst, buyer, k, x);
  Rat block = incremental(inst, other(buyer), t - k + 1, x);
  return own - Rat(k) * block;
}

Rat greedy_utility(const Instance& inst, int buyer, Node x) {
  require_decision(inst, x, "greedy_utility");
  int t = remaining(x, inst.T());
  Rat best(0);
  for (int k = 1; k <= t; ++k) {
    Rat payoff = greedy_payoff(inst, buyer, k, x);
    if (payoff > best) best = payoff;
  }
  return best;
}

int greedy_demand(const Instance& inst, int buyer, Node x) {
  require_decision(inst, x, "greedy_demand");
  int t = remaining(x, inst.T());
  Rat best(0);
  int arg = 0;
  for (int k = 1; k <= t; ++k) {
    Rat payoff = greedy_payoff(inst, buyer, k, x);
    if (payoff > best) {
      best = payoff;
      arg = k;
    }
  }
  return arg;
}

int duopsony_factor(const Instance& inst, int buyer, Node x) {
  require_decision(inst, x, "duopsony_factor");
  int t = remaining(x, inst.T());
  int f = 0;
  for (int k = 1; k <= t; ++k) {
    if (incremental(inst, buyer, k, x) >
        incremental(inst, other(buyer), t - k + 1, x)) {
      f = k;
    }
  }
  return f;
}

Rat baseline_price(const Instance& inst, int buyer, Node x) {
  require_decision(inst, x, "baseline_price");
  int t = remaining(x, inst.T());
  if (duopsony_factor(inst, buyer, x) == 0) {
    return incremental(inst, buyer, 1, x);
  }
  int kappa = greedy_demand(inst, buyer, x);
  return incremental(inst, other(buyer), t - kappa + 1, x);
}

Rat threshold_price(const Instance& inst, int buyer, Node x) {
  require_decision(inst, x, "threshold_price");
  int t = remaining(x, inst.T());
  Rat own = incremental(inst, buyer, 1, x);
  if (t == 1) return own;  // both children terminal
  Rat mu_win = greedy_utility(inst, buyer, child(x, buyer, inst.T()));
  Rat mu_lose = greedy_utility(inst, buyer, child(x, other(buyer), inst.T()));
  return own + mu_win - mu_lose;
}

Rat greedy_bid(const Instance& inst, int buyer, Node x) {
  return rat_min(threshold_price(inst, buyer, x),
                 incremental(inst, buyer, 1, x));
}

bool is_monopsonist(const Instance& inst, int buyer, Node x) {
  return duopsony_factor(inst, other(buyer), x) == 0;
}

GreedyProfile::GreedyProfile(const Instance& inst)
    : inst_(inst), cells_(inst.T()) {
  int T = inst_.T();
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      Cell& c = cells_.at(x);
      if (is_terminal(x, T)) continue;  // zero-initialised cell is correct
      int t = remaining(x, T);
      for (int buyer = 1; buyer <= 2; ++buyer) {
        size_t b = idx(buyer);
        c.f[b] = duopsony_factor(inst_, buyer, x);
        // mu and kappa in one scan
        Rat best(0);
        int arg = 0;
        for (int k = 1; k <= t; ++k) {
          Rat payoff = greedy_payoff(inst_, buyer, k, x);
          if (payoff > best) {
            best = payoff;
            arg = k;
          }
        }
        c.mu[b] = best;
        c.kappa[b] = arg;
        c.beta[b] = c.f[b] == 0
                        ? incremental(inst_, buyer, 1, x)
                        : incremental(inst_, other(buyer), t - arg + 1, x);
        // threshold from already-solved children (t-1 group)
        Rat own = incremental(inst_, buyer, 1, x);
        if (t == 1) {
          c.p[b] = own;
        } else {
          c.p[b] = own + cells_.at(child(x, buyer, T)).mu[b] -
                   cells_.at(child(x, other(buyer), T)).mu[b];
        }
      }
    }
  }
}

const Rat& GreedyProfile::beta(int buyer, Node x) const {
  if (!is_decision(x, T())) {
    throw std::logic_error("beta at terminal node " + node_str(x));
  }
  return cell(x).beta[idx(buyer)];
}

const Rat& GreedyProfile::threshold(int buyer, Node x) const {
  if (!is_decision(x, T())) {
    throw std::logic_error("threshold at terminal node " + node_str(x));
  }
  return cell(x).p[idx(buyer)];
}

Rat GreedyProfile::bid(int buyer, Node x) const {
  return rat_min(threshold(buyer, x), incremental(inst_, buyer, 1, x));
}

}  // namespace seqauction
