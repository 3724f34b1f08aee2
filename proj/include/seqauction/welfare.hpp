#pragma once

#include <cstdint>
#include <vector>

#include "seqauction/analysis.hpp"

namespace seqauction {

// Welfare of the split where buyer 1 takes k of the t remaining items:
// sum_{i<=k} v1(i|x) + sum_{i<=t-k} v2(i|x).
Rat social_welfare(const Instance& inst, int k, Node x);

struct OptimalWelfare {
  Rat opt;
  int argopt_lo;
  int argopt_hi;
};

// Best achievable welfare at x, by brute force over k, together with the
// interval of maximizers. The interval endpoints are also derived from
// the duopsony factors ([f1, t - f2]) and the two routes must coincide;
// a mismatch is a hard error.
OptimalWelfare optimal_welfare(const Instance& inst, Node x);

// Welfare of the path's final allocation divided by the optimum at its
// start. A degenerate instance with zero optimal welfare counts as fully
// efficient.
Rat path_efficiency(const Instance& inst, const PathRealization& path);

struct WelfareSummary {
  std::vector<Rat> sw_per_k;
  Rat opt;
  int argopt_lo = 0;
  int argopt_hi = 0;
  Rat min_efficiency;
  Rat expected_efficiency;
  bool truncated = false;
  bool degenerate = false;  // zero optimal welfare
};

// Solves the instance and aggregates efficiency over all realized
// equilibrium paths from the source.
WelfareSummary equilibrium_efficiency(const Instance& inst, Mode mode,
                                      const TieBreakRule& tie,
                                      size_t cap = default_path_cap);

// Spot checks on random (not necessarily equilibrium) paths: while no
// buyer ever has total duopsony power along a path, the path is fully
// efficient; otherwise its efficiency is bounded below by the efficiency
// of the subpath starting at the last node where some buyer's power
// equals the remaining supply. Also checks the one-step subpath bound.
Report subpath_bound_check(const Instance& inst, std::uint64_t seed,
                           int paths_per_instance);

// When buyer 1's duopsony power equals the whole remaining supply,
// buyer 2's extended increments are bounded below by running averages of
// buyer 1's. Checked on a quarter-integer grid with exact integrals.
// Throws if buyer 1 is not a strict monopsonist at x.
Report fractional_value_bound_check(const Instance& inst, Node x);

// Directed rational bracket around 1 - 1/e, with upper - lower < 1e-12.
const Rat& one_minus_inv_e_lower();
const Rat& one_minus_inv_e_upper();

// floor(T * (1 - 1/e)) via the bracket; errors out if the bracket
// straddles an integer for this T.
long floor_t_times_one_minus_inv_e(int T);

// The valuation family whose no-overbid equilibrium efficiency tends to
// 1 - 1/e: buyer 1 values every item at 1, buyer 2's i-th increment is
// max{(floor(T(1-1/e)) - i + 1) / (T - i + 1), 0}.
Instance worst_case_instance(int T);

struct PoaFamilyRow {
  int T;
  Rat efficiency;
};

struct PoaSuiteResult {
  // Random-corpus floor violations: efficiencies below the lower bracket
  // of 1 - 1/e.
  std::vector<Violation> floor_violations;
  size_t corpus_cases = 0;
  std::vector<PoaFamilyRow> family_rows;
  bool family_weakly_decreasing = true;
  bool family_above_limit = true;  // every row >= upper bracket
};

struct PoaSuiteSpec {
  int random_count = 0;
  int max_t = 8;
  std::uint64_t seed = 1;
  std::vector<int> family_ts;
  size_t path_cap = default_path_cap;
};

PoaSuiteResult poa_suite(const PoaSuiteSpec& spec);

}  // namespace seqauction
