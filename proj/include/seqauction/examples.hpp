#pragma once

#include "seqauction/equilibrium.hpp"
#include "seqauction/valuation.hpp"

namespace seqauction {
namespace demo {

// Bundled demonstration instances, each exercising a distinctive
// equilibrium behaviour. The CLI's `example` subcommand writes these as
// instance files; the defaults match the bundled instances/ directory.

// Two items, values (10,9) vs (8,5): the weaker buyer wins round one and
// the outcome is inefficient even though it is the unique rational play.
Instance two_item_inefficiency();

// T items, constant 1 vs (1-eps, ..., 1-eps, 0): with overbidding
// allowed, buyer 2's round-one bid grows with T far beyond its value.
Instance overbidding_blowup(int T, const Rat& eps);

// Four items, both buyers value three items at 1 each: under the
// no-overbid cap the source node ties and payoffs depend on the
// tie-break probability.
Instance tie_sensitive();

// Three items, constant 1 vs (2/3-delta, 1/2+eps, 0) with 2*eps=3*delta:
// with overbidding allowed buyer 2's overbid squeezes buyer 1 below its
// greedy utility; without it buyer 1 sweeps the auction.
Instance greedy_squeeze(const Rat& delta, const Rat& eps);

inline Rat default_delta() { return make_rat(1, 100); }
inline Rat default_eps() { return make_rat(3, 200); }

}  // namespace demo
}  // namespace seqauction
