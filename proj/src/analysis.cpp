#include "seqauction/analysis.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace seqauction {

Rat PathRealization::realized_utility(const Instance& inst, int buyer) const {
  Rat u(0);
  for (size_t j = 0; j < winners.size(); ++j) {
    if (winners[j] == buyer) {
      u += incremental(inst, buyer, 1, nodes[j]) - prices[j];
    }
  }
  return u;
}

PathSet realized_paths(const SolvedGame& game, Node start, size_t cap) {
  PathSet out;
  int T = game.T();
  std::vector<Node> nodes{start};
  std::vector<int> winners;
  std::vector<Rat> prices;

  std::function<void(Node, const Rat&)> dfs = [&](Node x, const Rat& prob) {
    if (out.truncated) return;
    if (is_terminal(x, T)) {
      if (out.paths.size() >= cap) {
        out.truncated = true;
        return;
      }
      out.paths.push_back(PathRealization{nodes, winners, prices, prob});
      return;
    }
    Rat price = game.price(x);
    for (int winner : {1, 2}) {
      Rat wp = game.win_prob(winner, x);
      if (wp == 0) continue;
      Node next = child(x, winner, T);
      nodes.push_back(next);
      winners.push_back(winner);
      prices.push_back(price);
      dfs(next, Rat(prob * wp));
      nodes.pop_back();
      winners.pop_back();
      prices.pop_back();
    }
  };
  dfs(start, Rat(1));
  return out;
}

void Report::add(std::string what, Node node, int buyer, std::string expected,
                 std::string actual) {
  violations.push_back(Violation{std::move(what), node, buyer,
                                 std::move(expected), std::move(actual)});
}

namespace {

void flag_truncation(Report& report, const PathSet& paths, Node start) {
  if (paths.truncated) {
    report.add("path-cap-exceeded", start, 0, "complete enumeration",
               "enumeration stopped at cap");
  }
}

}  // namespace

Report check_declining_prices(const SolvedGame& game, Node start, size_t cap) {
  Report report{"declining-prices"};
  PathSet paths = realized_paths(game, start, cap);
  flag_truncation(report, paths, start);
  for (const PathRealization& path : paths.paths) {
    ++report.cases_checked;
    for (size_t j = 0; j + 1 < path.prices.size(); ++j) {
      if (path.prices[j] < path.prices[j + 1]) {
        report.add("price-increase", path.nodes[j + 1], 0,
                   "price <= " + rat_str(path.prices[j]),
                   rat_str(path.prices[j + 1]));
      }
    }
  }
  return report;
}

Report check_path_probabilities(const SolvedGame& game, Node start,
                                size_t cap) {
  Report report{"path-probabilities"};
  PathSet paths = realized_paths(game, start, cap);
  flag_truncation(report, paths, start);
  if (paths.truncated) return report;
  Rat total(0);
  for (const PathRealization& path : paths.paths) {
    total += path.probability;
    ++report.cases_checked;
  }
  if (total != 1) {
    report.add("probability-mass", start, 0, "1", rat_str(total));
  }
  return report;
}

namespace {

// Does `path` fit the pattern greedy play guarantees buyer c: exact
// greedy utility, threshold prices until c first demands the entire
// remaining supply, baseline prices afterwards.
bool matches_greedy_pattern(const Instance& inst, const GreedyProfile& profile,
                            const PathRealization& path, int c) {
  if (path.realized_utility(inst, c) != profile.mu(c, path.start())) {
    return false;
  }
  int T = inst.T();
  size_t binding = path.rounds();
  for (size_t j = 0; j < path.rounds(); ++j) {
    if (profile.kappa(c, path.nodes[j]) == remaining(path.nodes[j], T)) {
      binding = j;
      break;
    }
  }
  for (size_t j = 0; j < path.rounds(); ++j) {
    const Rat& want = j < binding ? profile.threshold(c, path.nodes[j])
                                  : profile.beta(c, path.nodes[j]);
    if (path.prices[j] != want) return false;
  }
  return true;
}

}  // namespace

Report greedy_outcome_check(const Instance& inst, Node start,
                            const TieBreakRule& tie, size_t cap) {
  Report report{"greedy-outcome"};
  int T = inst.T();
  if (!is_decision(start, T)) {
    throw std::invalid_argument("greedy_outcome_check: start " +
                                node_str(start) + " is not a decision node");
  }
  GreedyProfile profile(inst);
  SolvedGame game = greedy_outcome_game(inst, tie);
  PathSet paths = realized_paths(game, start, cap);
  flag_truncation(report, paths, start);
  if (paths.truncated) return report;

  std::vector<int> candidates;
  bool monopsonist_case =
      profile.monopsonist(1, start) || profile.monopsonist(2, start);
  if (monopsonist_case) {
    for (int buyer = 1; buyer <= 2; ++buyer) {
      if (profile.monopsonist(buyer, start)) candidates.push_back(buyer);
    }
  } else {
    const Rat& p1 = profile.threshold(1, start);
    const Rat& p2 = profile.threshold(2, start);
    if (p1 <= p2) candidates.push_back(1);
    if (p2 <= p1) candidates.push_back(2);
  }

  for (const PathRealization& path : paths.paths) {
    ++report.cases_checked;
    for (size_t j = 0; j + 1 < path.prices.size(); ++j) {
      if (path.prices[j] < path.prices[j + 1]) {
        report.add("greedy-price-increase", path.nodes[j + 1], 0,
                   "price <= " + rat_str(path.prices[j]),
                   rat_str(path.prices[j + 1]));
      }
    }
    for (int buyer = 1; buyer <= 2; ++buyer) {
      int won = path.items_won(buyer);
      int demand = profile.kappa(buyer, start);
      if (won < demand) {
        report.add("greedy-demand-met", start, buyer,
                   ">= " + std::to_string(demand), std::to_string(won));
      }
    }
    if (monopsonist_case) {
      for (int c : candidates) {
        if (path.realized_utility(inst, c) != profile.mu(c, start)) {
          report.add("monopsonist-utility", start, c,
                     rat_str(profile.mu(c, start)),
                     rat_str(path.realized_utility(inst, c)));
        }
      }
    }
    bool pattern_ok = false;
    for (int c : candidates) {
      if (matches_greedy_pattern(inst, profile, path, c)) {
        pattern_ok = true;
        break;
      }
    }
    if (!pattern_ok) {
      report.add("greedy-utility-price-pattern", start, 0,
                 "some eligible buyer earns its greedy utility at "
                 "threshold-then-baseline prices",
                 "no eligible buyer matches");
    }
  }
  return report;
}

Report monopsonist_equivalence_check(const Instance& inst,
                                     const TieBreakRule& tie) {
  Report report{"monopsonist-equivalence"};
  SolvedGame eq = solve(inst, Mode::no_overbid, tie);
  SolvedGame greedy = greedy_outcome_game(inst, tie);
  GreedyProfile profile(inst);
  int T = inst.T();
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      if (!profile.monopsonist(1, x) && !profile.monopsonist(2, x)) continue;
      ++report.cases_checked;
      if (eq.price(x) != greedy.price(x)) {
        report.add("price-mismatch", x, 0, rat_str(eq.price(x)),
                   rat_str(greedy.price(x)));
      }
      for (int buyer = 1; buyer <= 2; ++buyer) {
        if (eq.utility(buyer, x) != greedy.utility(buyer, x)) {
          report.add("utility-mismatch", x, buyer,
                     rat_str(eq.utility(buyer, x)),
                     rat_str(greedy.utility(buyer, x)));
        }
      }
    }
  }
  return report;
}

bool is_quasi_monopsonist(const SolvedGame& game, int buyer, Node x) {
  int T = game.T();
  if (!is_decision(x, T)) {
    throw std::invalid_argument("is_quasi_monopsonist: " + node_str(x) +
                                " is not a decision node");
  }
  NodeTable<char> visited(T);
  std::vector<Node> stack{x};
  visited.at(x) = 1;
  while (!stack.empty()) {
    Node y = stack.back();
    stack.pop_back();
    if (remaining(y, T) == 1) {
      if (game.bid(buyer, y) >= game.bid(other(buyer), y)) return true;
      continue;
    }
    for (int winner : {1, 2}) {
      if (game.win_prob(winner, y) == 0) continue;
      Node next = child(y, winner, T);
      if (!visited.at(next)) {
        visited.at(next) = 1;
        stack.push_back(next);
      }
    }
  }
  return false;
}

Report eql_character_check(const SolvedGame& game,
                           const GreedyProfile& profile) {
  if (game.mode() != Mode::no_overbid ||
      game.bid_rule() != BidRule::equilibrium) {
    throw std::invalid_argument(
        "eql_character_check needs a no-overbid equilibrium");
  }
  Report report{"equilibrium-structure"};
  int T = game.T();

  // (a) reachable nodes without a supply-binding demand: price at least
  // the minimum threshold price
  NodeTable<char> reachable(T);
  std::vector<Node> stack{Node{0, 0}};
  reachable.at(Node{0, 0}) = 1;
  while (!stack.empty()) {
    Node y = stack.back();
    stack.pop_back();
    if (is_terminal(y, T)) continue;
    int t = remaining(y, T);
    if (profile.kappa(1, y) < t && profile.kappa(2, y) < t) {
      ++report.cases_checked;
      Rat floor = rat_min(profile.threshold(1, y), profile.threshold(2, y));
      if (game.price(y) < floor) {
        report.add("price-below-min-threshold", y, 0, ">= " + rat_str(floor),
                   rat_str(game.price(y)));
      }
    }
    for (int winner : {1, 2}) {
      if (game.win_prob(winner, y) == 0) continue;
      Node next = child(y, winner, T);
      if (!reachable.at(next)) {
        reachable.at(next) = 1;
        stack.push_back(next);
      }
    }
  }

  // (b) a quasi-monopsonist exists everywhere; (c) the role survives the
  // swap of one item from the quasi-monopsonist to the opponent
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      ++report.cases_checked;
      bool qm1 = is_quasi_monopsonist(game, 1, x);
      bool qm2 = is_quasi_monopsonist(game, 2, x);
      if (!qm1 && !qm2) {
        report.add("no-quasi-monopsonist", x, 0, "some quasi-monopsonist",
                   "none");
      }
      for (int buyer = 1; buyer <= 2; ++buyer) {
        if (!(buyer == 1 ? qm1 : qm2)) continue;
        Node shifted = buyer == 1 ? Node{x.x1 - 1, x.x2 + 1}
                                  : Node{x.x1 + 1, x.x2 - 1};
        if (shifted.x1 < 0 || shifted.x2 < 0) continue;
        if (!is_quasi_monopsonist(game, buyer, shifted)) {
          report.add("quasi-monopsonist-shift", shifted, buyer,
                     "quasi-monopsonist (shifted from " + node_str(x) + ")",
                     "not");
        }
      }
    }
  }
  return report;
}

PhaseSegmentation phase_segmentation(const SolvedGame& game,
                                     const GreedyProfile& profile,
                                     const PathRealization& path,
                                     CompetitiveBoundary boundary) {
  int T = game.T();
  size_t len = path.rounds();
  PhaseSegmentation seg;
  seg.reduction_end = len;
  if (len == 0) return seg;
  int final_winner = path.winners.back();
  for (size_t j = 0; j < len; ++j) {
    if (profile.kappa(final_winner, path.nodes[j]) ==
        remaining(path.nodes[j], T)) {
      seg.reduction_end = j;
      break;
    }
  }

  if (boundary == CompetitiveBoundary::first_monopsonist) {
    seg.competitive_end = len;
    for (size_t j = 0; j < len; ++j) {
      for (int buyer = 1; buyer <= 2; ++buyer) {
        if (profile.monopsonist(buyer, path.nodes[j])) {
          seg.competitive_end = j;
          seg.monopsonist = buyer;
          break;
        }
      }
      if (seg.competitive_end == j) break;
    }
    return seg;
  }

  // default: earliest suffix of the path along which exactly one buyer,
  // always the same one, is a quasi-monopsonist
  seg.competitive_end = len;
  seg.monopsonist = 0;
  int settled = 0;
  for (size_t j = len; j-- > 0;) {
    bool qm1 = is_quasi_monopsonist(game, 1, path.nodes[j]);
    bool qm2 = is_quasi_monopsonist(game, 2, path.nodes[j]);
    if (qm1 == qm2) break;  // both or neither: identity not settled
    int who = qm1 ? 1 : 2;
    if (settled != 0 && settled != who) break;
    settled = who;
    seg.competitive_end = j;
    seg.monopsonist = who;
  }
  return seg;
}

namespace {

struct SuiteContext {
  const Instance& inst;
  const GreedyProfile& profile;
  Report& report;
};

void check_node(SuiteContext& ctx, Node x) {
  const Instance& inst = ctx.inst;
  const GreedyProfile& pr = ctx.profile;
  Report& rep = ctx.report;
  int T = inst.T();
  int t = remaining(x, T);

  for (int i = 1; i <= 2; ++i) {
    int o = other(i);
    Node win = child(x, i, T);
    Node lose = child(x, o, T);
    int f = pr.f(i, x);
    int kappa = pr.kappa(i, x);
    const Rat& mu = pr.mu(i, x);
    const Rat& beta = pr.beta(i, x);
    const Rat& p = pr.threshold(i, x);
    Rat v_own = incremental(inst, i, 1, x);

    if (t > 1) {
      int f_win = pr.f(i, win);
      int f_lose = pr.f(i, lose);
      if (f_win != std::max(f - 1, 0) || f_lose != std::min(f, t - 1)) {
        rep.add("power-evolution-aggregate", x, i,
                "f(win)=" + std::to_string(std::max(f - 1, 0)) + " f(lose)=" +
                    std::to_string(std::min(f, t - 1)),
                "f(win)=" + std::to_string(f_win) + " f(lose)=" +
                    std::to_string(f_lose));
      }
      if (f == 0 && (f_win != 0 || f_lose != 0)) {
        rep.add("no-power-absorbing", x, i, "0",
                std::to_string(f_win) + "," + std::to_string(f_lose));
      }
      if (f == t && (f_win != t - 1 || f_lose != t - 1)) {
        rep.add("strict-monopsonist-persists", x, i, std::to_string(t - 1),
                std::to_string(f_win) + "," + std::to_string(f_lose));
      }
      if (0 < f && f < t && (f_win != f - 1 || f_lose != f)) {
        rep.add("partial-power-evolution", x, i,
                "f(win)=" + std::to_string(f - 1) +
                    " f(lose)=" + std::to_string(f),
                "f(win)=" + std::to_string(f_win) +
                    " f(lose)=" + std::to_string(f_lose));
      }

      for (int k = 0; k <= t - 1; ++k) {
        if (greedy_payoff(inst, i, k, lose) != greedy_payoff(inst, i, k, x)) {
          rep.add("payoff-constant-on-loss", x, i,
                  rat_str(greedy_payoff(inst, i, k, x)) +
                      " at k=" + std::to_string(k),
                  rat_str(greedy_payoff(inst, i, k, lose)));
        }
      }
      for (int k = 1; k <= t; ++k) {
        Rat lhs = greedy_payoff(inst, i, k - 1, win);
        Rat rhs = greedy_payoff(inst, i, k, x) - v_own +
                  incremental(inst, o, t - k + 1, x);
        if (lhs != rhs) {
          rep.add("payoff-shift-on-win", x, i,
                  rat_str(rhs) + " at k=" + std::to_string(k), rat_str(lhs));
        }
      }

      if (pr.kappa(i, win) < kappa - 1) {
        rep.add("demand-drops-at-most-one", x, i,
                ">= " + std::to_string(kappa - 1),
                std::to_string(pr.kappa(i, win)));
      }
      if (kappa == t && pr.kappa(i, win) != t - 1) {
        rep.add("full-demand-persists-on-win", x, i, std::to_string(t - 1),
                std::to_string(pr.kappa(i, win)));
      }
    }

    // evolution of the greedy utility on a loss; terminal children carry
    // zero utility
    if (kappa < t) {
      if (pr.mu(i, lose) != mu) {
        rep.add("utility-constant-on-loss", x, i, rat_str(mu),
                rat_str(pr.mu(i, lose)));
      }
      if (pr.kappa(i, lose) != kappa) {
        rep.add("demand-constant-on-loss", x, i, std::to_string(kappa),
                std::to_string(pr.kappa(i, lose)));
      }
    } else if (!(pr.mu(i, lose) < mu)) {
      rep.add("utility-drops-on-loss-at-full-demand", x, i,
              "< " + rat_str(mu), rat_str(pr.mu(i, lose)));
    }
    if (kappa > 0) {
      Rat bound = mu - v_own + beta;
      if (pr.mu(i, win) < bound) {
        rep.add("utility-drop-bounded-on-win", x, i, ">= " + rat_str(bound),
                rat_str(pr.mu(i, win)));
      }
    }

    if (p < beta) {
      rep.add("threshold-at-least-baseline", x, i, ">= " + rat_str(beta),
              rat_str(p));
    }
    if (kappa == t && !(p > beta)) {
      rep.add("full-demand-strict-threshold", x, i, "> " + rat_str(beta),
              rat_str(p));
    }

    if (f > 1 && kappa < t) {
      const Rat& beta_win = pr.beta(i, win);
      if (beta_win < p) {
        rep.add("baseline-after-win-bounds-threshold", x, i,
                ">= " + rat_str(p), rat_str(beta_win));
      }
      if (beta_win == p &&
          greedy_payoff(inst, i, pr.kappa(i, win) + 1, x) != mu) {
        rep.add("baseline-after-win-equality-condition", x, i,
                "payoff(kappa(win)+1) == mu on equality",
                rat_str(greedy_payoff(inst, i, pr.kappa(i, win) + 1, x)) +
                    " != " + rat_str(mu));
      }
      if (pr.threshold(i, win) < p) {
        rep.add("threshold-weakly-increasing-on-win", x, i,
                ">= " + rat_str(p), rat_str(pr.threshold(i, win)));
      }
    }

    if (f > 1 && kappa < t - 1) {
      const Rat& p_lose = pr.threshold(i, lose);
      bool strict_expected = pr.kappa(i, win) == t - 1;
      if (p_lose > p) {
        rep.add("threshold-weakly-decreasing-on-loss", x, i,
                "<= " + rat_str(p), rat_str(p_lose));
      } else if (strict_expected != (p_lose < p)) {
        rep.add("threshold-decrease-strictness", x, i,
                strict_expected ? "strict decrease" : "no strict decrease",
                rat_str(p_lose) + " vs " + rat_str(p));
      }
    }

    if (kappa < t && f > 0) {
      Rat top = incremental(inst, o, t - pr.kappa(i, win), x);
      if (p > top) {
        rep.add("threshold-below-opponent-marginal", x, i,
                "<= " + rat_str(top), rat_str(p));
      }
      if (p == top && greedy_payoff(inst, i, pr.kappa(i, win) + 1, x) != mu) {
        rep.add("threshold-tightness-condition", x, i,
                "payoff(kappa(win)+1) == mu on tightness",
                rat_str(greedy_payoff(inst, i, pr.kappa(i, win) + 1, x)) +
                    " != " + rat_str(mu));
      }
    }
  }
}

}  // namespace

Report greedy_invariant_suite(const Instance& inst,
                              const GreedyProfile& profile) {
  Report report{"greedy-invariants"};
  SuiteContext ctx{inst, profile, report};
  int T = inst.T();
  for (const auto& group : nodes_by_remaining(T)) {
    for (Node x : group) {
      if (is_terminal(x, T)) continue;
      ++report.cases_checked;
      check_node(ctx, x);
    }
  }
  return report;
}

}  // namespace seqauction
