#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "seqauction/valuation.hpp"

namespace seqauction {

// Seeded generator for concave instances. Draws, in order: T uniform in
// [1, max_t], then per buyer a denominator D from {1, 2, 4} and T
// numerators uniform in [0, D], sorted descending. The tiny value grid
// produces many exact ties, which is what stresses the tie-break paths.
// Draws use modular reduction of the raw 64-bit stream so corpora are
// reproducible across standard libraries.
Instance random_concave_instance(std::mt19937_64& rng, int max_t);

std::vector<Instance> random_corpus(int count, int max_t, std::uint64_t seed);

}  // namespace seqauction
