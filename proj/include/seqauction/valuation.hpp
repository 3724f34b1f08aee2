#pragma once

#include <string>
#include <vector>

#include "seqauction/game_graph.hpp"
#include "seqauction/rational.hpp"

namespace seqauction {

// One buyer's incremental values v(1..T). Construction validates that the
// sequence is nonnegative and weakly decreasing (total value normalised at
// zero and concave); violations name the offending index.
class Valuation {
 public:
  explicit Valuation(std::vector<Rat> increments,
                     const std::string& label = "v");

  int items() const { return static_cast<int>(increments_.size()); }

  // v(k), 1-based. Out-of-range access is a hard error: the recursions
  // never index outside 1..T, so it indicates a caller bug.
  const Rat& increment(int k) const;

  // V(k) = v(1) + ... + v(k), V(0) = 0.
  const Rat& cumulative(int k) const;

 private:
  std::vector<Rat> increments_;
  std::vector<Rat> prefix_;
  std::string label_;
};

// The two buyers' data for one auction of T identical items.
struct Instance {
  Instance(Valuation buyer1, Valuation buyer2);

  int T() const { return v1.items(); }
  const Valuation& of(int buyer) const { return buyer == 1 ? v1 : v2; }

  Valuation v1;
  Valuation v2;
};

inline int own_items(Node x, int buyer) { return buyer == 1 ? x.x1 : x.x2; }

// v_i(k|x) = V_i(x_i + k) - V_i(x_i + k - 1): the k-th additional item
// given endowment x.
Rat incremental(const Instance& inst, int buyer, int k, Node x);

// Sum of buyer i's first k increments given endowment x.
Rat cumulative_from(const Instance& inst, int buyer, int k, Node x);

// Which of the two real-line extension formulas applies. The extension is
// only defined asymmetrically: a strict monopsonist's valuation steps at
// integer points from the left (ceiling), the opposing side's from the
// right (floor).
enum class Role { monopsonist_side, opponent_side };

// Piecewise-constant extension of the incremental value to real
// arguments tau in [0, t(x)]. monopsonist_side evaluates v(ceil(tau)|x)
// with ceil(0) treated as 1; opponent_side evaluates v(floor(tau+1)|x).
Rat real_incremental(const Instance& inst, int buyer, Role role,
                     const Rat& tau, Node x);

// Exact integral of the extension over [0, len]; a finite sum of unit and
// fractional rectangles. Agrees with cumulative_from at integer len.
Rat real_cumulative(const Instance& inst, int buyer, const Rat& len, Node x);

}  // namespace seqauction
