#include "seqauction/welfare.hpp"

#include <random>
#include <stdexcept>

#include "seqauction/greedy.hpp"
#include "seqauction/random_instance.hpp"

namespace seqauction {

Rat social_welfare(const Instance& inst, int k, Node x) {
  int t = remaining(x, inst.T());
  if (k < 0 || k > t) {
    throw std::out_of_range("social_welfare: k = " + std::to_string(k) +
                            " outside [0," + std::to_string(t) + "]");
  }
  return cumulative_from(inst, 1, k, x) + cumulative_from(inst, 2, t - k, x);
}

OptimalWelfare optimal_welfare(const Instance& inst, Node x) {
  int T = inst.T();
  if (!is_decision(x, T)) {
    throw std::logic_error("optimal_welfare at terminal node " + node_str(x));
  }
  int t = remaining(x, T);
  Rat best = social_welfare(inst, 0, x);
  std::vector<int> maximizers{0};
  for (int k = 1; k <= t; ++k) {
    Rat sw = social_welfare(inst, k, x);
    if (sw > best) {
      best = sw;
      maximizers.assign(1, k);
    } else if (sw == best) {
      maximizers.push_back(k);
    }
  }
  int lo = duopsony_factor(inst, 1, x);
  int hi = t - duopsony_factor(inst, 2, x);
  // the closed form must reproduce the brute-force argmax set exactly
  bool match = maximizers.front() == lo && maximizers.back() == hi &&
               static_cast<int>(maximizers.size()) == hi - lo + 1;
  if (!match) {
    throw std::logic_error(
        "optimal allocation interval mismatch at " + node_str(x) +
        ": formula [" + std::to_string(lo) + "," + std::to_string(hi) +
        "], brute force [" + std::to_string(maximizers.front()) + "," +
        std::to_string(maximizers.back()) + "] with " +
        std::to_string(maximizers.size()) + " maximizers");
  }
  return OptimalWelfare{best, lo, hi};
}

Rat path_efficiency(const Instance& inst, const PathRealization& path) {
  OptimalWelfare ow = optimal_welfare(inst, path.start());
  if (ow.opt == 0) return Rat(1);  // all-zero values: degenerate, fully efficient
  Rat sw = social_welfare(inst, path.items_won(1), path.start());
  return Rat(sw / ow.opt);
}

WelfareSummary equilibrium_efficiency(const Instance& inst, Mode mode,
                                      const TieBreakRule& tie, size_t cap) {
  WelfareSummary summary;
  Node root{0, 0};
  int t = inst.T();
  summary.sw_per_k.reserve(static_cast<size_t>(t) + 1);
  for (int k = 0; k <= t; ++k) {
    summary.sw_per_k.push_back(social_welfare(inst, k, root));
  }
  OptimalWelfare ow = optimal_welfare(inst, root);
  summary.opt = ow.opt;
  summary.argopt_lo = ow.argopt_lo;
  summary.argopt_hi = ow.argopt_hi;
  summary.degenerate = ow.opt == 0;

  SolvedGame game = solve(inst, mode, tie);
  PathSet paths = realized_paths(game, root, cap);
  summary.truncated = paths.truncated;
  Rat expected(0);
  bool first = true;
  for (const PathRealization& path : paths.paths) {
    Rat eff = path_efficiency(inst, path);
    expected += path.probability * eff;
    if (first || eff < summary.min_efficiency) {
      summary.min_efficiency = eff;
      first = false;
    }
  }
  summary.expected_efficiency = expected;
  return summary;
}

namespace {

// Efficiency of the subpath of `path` starting after j rounds.
Rat suffix_efficiency(const Instance& inst, const PathRealization& path,
                      size_t j) {
  Node from = path.nodes[j];
  OptimalWelfare ow = optimal_welfare(inst, from);
  if (ow.opt == 0) return Rat(1);
  int k = path.finish().x1 - from.x1;
  return Rat(social_welfare(inst, k, from) / ow.opt);
}

}  // namespace

Report subpath_bound_check(const Instance& inst, std::uint64_t seed,
                           int paths_per_instance) {
  Report report{"subpath-efficiency"};
  std::mt19937_64 rng(seed);
  int T = inst.T();
  for (int n = 0; n < paths_per_instance; ++n) {
    PathRealization path;
    path.probability = 1;
    Node x{0, 0};
    path.nodes.push_back(x);
    while (!is_terminal(x, T)) {
      int winner = (rng() % 2 == 0) ? 1 : 2;
      path.winners.push_back(winner);
      path.prices.push_back(Rat(0));  // prices are irrelevant to welfare
      x = child(x, winner, T);
      path.nodes.push_back(x);
    }
    ++report.cases_checked;

    size_t len = path.rounds();
    // one-step bound wherever neither buyer's power covers the supply
    for (size_t j = 0; j + 1 < len; ++j) {
      Node y = path.nodes[j];
      int s = remaining(y, T);
      if (duopsony_factor(inst, 1, y) < s && duopsony_factor(inst, 2, y) < s) {
        Rat whole = suffix_efficiency(inst, path, j);
        Rat tail = suffix_efficiency(inst, path, j + 1);
        if (whole < tail) {
          report.add("one-step-subpath-bound", y, 0, ">= " + rat_str(tail),
                     rat_str(whole));
        }
      }
    }
    // full-path conclusion, anchored at the earliest node where some
    // buyer's power covers the whole remaining supply (total power
    // persists once gained)
    size_t first_binding = len;
    for (size_t j = 0; j < len; ++j) {
      Node y = path.nodes[j];
      int s = remaining(y, T);
      if (duopsony_factor(inst, 1, y) == s ||
          duopsony_factor(inst, 2, y) == s) {
        first_binding = j;
        break;
      }
    }
    Rat whole = suffix_efficiency(inst, path, 0);
    if (first_binding == len) {
      if (whole != 1) {
        report.add("full-efficiency-without-total-power", path.start(), 0, "1",
                   rat_str(whole));
      }
    } else {
      Rat tail = suffix_efficiency(inst, path, first_binding);
      if (whole < tail) {
        report.add("subpath-bound-at-total-power", path.nodes[first_binding],
                   0, ">= " + rat_str(tail), rat_str(whole));
      }
    }
  }
  return report;
}

Report fractional_value_bound_check(const Instance& inst, Node x) {
  int T = inst.T();
  int t = remaining(x, T);
  if (!is_decision(x, T) || duopsony_factor(inst, 1, x) != t) {
    throw std::invalid_argument(
        "fractional_value_bound_check: buyer 1 must be a strict monopsonist "
        "at " +
        node_str(x));
  }
  Report report{"fractional-value-bound"};
  int kappa = greedy_demand(inst, 1, x);
  Rat kappa_integral = real_cumulative(inst, 1, Rat(kappa), x);
  Rat quarter = make_rat(1, 4);
  for (Rat len(0); len < t; len += quarter) {
    Rat width = Rat(t) - len;
    if (width <= kappa) continue;  // empty or inverted integral range
    ++report.cases_checked;
    Rat lhs = real_incremental(inst, 2, Role::opponent_side, len, x);
    Rat integral = real_cumulative(inst, 1, width, x) - kappa_integral;
    Rat rhs = integral / width;
    if (lhs < rhs) {
      report.add("fractional-bound", x, 2,
                 ">= " + rat_str(rhs) + " at len=" + rat_str(len),
                 rat_str(lhs));
    }
  }
  return report;
}

const Rat& one_minus_inv_e_lower() {
  // 1 - 1/e = 0.632120558828557678404476229838... truncated at 24 digits
  static const Rat lower = [] {
    Rat r(mpz_class("632120558828557678404476"),
          mpz_class("1000000000000000000000000"));
    r.canonicalize();
    return r;
  }();
  return lower;
}

const Rat& one_minus_inv_e_upper() {
  static const Rat upper = [] {
    Rat r(mpz_class("632120558828557678404477"),
          mpz_class("1000000000000000000000000"));
    r.canonicalize();
    return r;
  }();
  return upper;
}

long floor_t_times_one_minus_inv_e(int T) {
  long lo = rat_floor(Rat(T * one_minus_inv_e_lower()));
  long hi = rat_floor(Rat(T * one_minus_inv_e_upper()));
  if (lo != hi) {
    throw std::logic_error(
        "bracket for 1-1/e straddles an integer at T = " + std::to_string(T) +
        "; widen the constant's precision");
  }
  return lo;
}

Instance worst_case_instance(int T) {
  if (T < 1) throw std::invalid_argument("worst_case_instance: T < 1");
  long m = floor_t_times_one_minus_inv_e(T);
  std::vector<Rat> ones(static_cast<size_t>(T), Rat(1));
  std::vector<Rat> v2;
  v2.reserve(static_cast<size_t>(T));
  for (int i = 1; i <= T; ++i) {
    if (i <= m) {
      v2.push_back(make_rat(m - i + 1, T - i + 1));
    } else {
      v2.push_back(Rat(0));
    }
  }
  return Instance(Valuation(std::move(ones), "v1"),
                  Valuation(std::move(v2), "v2"));
}

PoaSuiteResult poa_suite(const PoaSuiteSpec& spec) {
  PoaSuiteResult result;
  if (spec.random_count > 0) {
    std::mt19937_64 rng(spec.seed);
    const TieBreakRule rules[3] = {TieBreakRule::buyer2(),
                                   TieBreakRule::uniform(),
                                   TieBreakRule::buyer1()};
    for (int n = 0; n < spec.random_count; ++n) {
      Instance inst = random_concave_instance(rng, spec.max_t);
      for (const TieBreakRule& tie : rules) {
        WelfareSummary summary = equilibrium_efficiency(
            inst, Mode::no_overbid, tie, spec.path_cap);
        ++result.corpus_cases;
        if (summary.truncated) {
          result.floor_violations.push_back(Violation{
              "path-cap-exceeded", Node{0, 0}, 0, "complete enumeration",
              "instance " + std::to_string(n)});
          continue;
        }
        if (summary.min_efficiency < one_minus_inv_e_lower()) {
          result.floor_violations.push_back(Violation{
              "efficiency-below-floor", Node{0, 0}, 0,
              ">= " + rat_str(one_minus_inv_e_lower()),
              rat_str(summary.min_efficiency) + " (instance " +
                  std::to_string(n) + ", tie " + tie.describe() + ")"});
        }
      }
    }
  }
  for (int T : spec.family_ts) {
    Instance inst = worst_case_instance(T);
    WelfareSummary summary = equilibrium_efficiency(
        inst, Mode::no_overbid, TieBreakRule::buyer2(), spec.path_cap);
    result.family_rows.push_back(PoaFamilyRow{T, summary.min_efficiency});
  }
  for (size_t i = 0; i < result.family_rows.size(); ++i) {
    if (i > 0 && result.family_rows[i].efficiency >
                     result.family_rows[i - 1].efficiency) {
      result.family_weakly_decreasing = false;
    }
    if (result.family_rows[i].efficiency < one_minus_inv_e_upper()) {
      result.family_above_limit = false;
    }
  }
  return result;
}

}  // namespace seqauction
