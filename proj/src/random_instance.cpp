#include "seqauction/random_instance.hpp"

#include <algorithm>
#include <functional>

namespace seqauction {

namespace {

// uniform in [0, n] via modular reduction; bias is irrelevant at these
// ranges and the result does not depend on the standard library
uint64_t draw(std::mt19937_64& rng, uint64_t n) { return rng() % (n + 1); }

Valuation random_valuation(std::mt19937_64& rng, int T, const std::string& label) {
  static const int kDenominators[3] = {1, 2, 4};
  int den = kDenominators[draw(rng, 2)];
  std::vector<Rat> increments;
  increments.reserve(static_cast<size_t>(T));
  for (int k = 0; k < T; ++k) {
    increments.push_back(make_rat(static_cast<long>(draw(rng, den)), den));
  }
  std::sort(increments.begin(), increments.end(), std::greater<Rat>());
  return Valuation(std::move(increments), label);
}

}  // namespace

Instance random_concave_instance(std::mt19937_64& rng, int max_t) {
  int T = static_cast<int>(draw(rng, static_cast<uint64_t>(max_t) - 1)) + 1;
  Valuation v1 = random_valuation(rng, T, "v1");
  Valuation v2 = random_valuation(rng, T, "v2");
  return Instance(std::move(v1), std::move(v2));
}

std::vector<Instance> random_corpus(int count, int max_t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(random_concave_instance(rng, max_t));
  }
  return out;
}

}  // namespace seqauction
