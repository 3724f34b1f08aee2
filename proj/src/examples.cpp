#include "seqauction/examples.hpp"

#include <stdexcept>

namespace seqauction {
namespace demo {

Instance two_item_inefficiency() {
  return Instance(Valuation({Rat(10), Rat(9)}, "v1"),
                  Valuation({Rat(8), Rat(5)}, "v2"));
}

Instance overbidding_blowup(int T, const Rat& eps) {
  if (T < 2) throw std::invalid_argument("overbidding_blowup: T must be >= 2");
  std::vector<Rat> v1(static_cast<size_t>(T), Rat(1));
  std::vector<Rat> v2(static_cast<size_t>(T), Rat(1 - eps));
  v2.back() = 0;
  return Instance(Valuation(std::move(v1), "v1"),
                  Valuation(std::move(v2), "v2"));
}

Instance tie_sensitive() {
  std::vector<Rat> v{Rat(1), Rat(1), Rat(1), Rat(0)};
  return Instance(Valuation(v, "v1"), Valuation(v, "v2"));
}

Instance greedy_squeeze(const Rat& delta, const Rat& eps) {
  if (Rat(2 * eps) != Rat(3 * delta)) {
    throw std::invalid_argument(
        "greedy_squeeze: parameters must satisfy 2*eps = 3*delta");
  }
  std::vector<Rat> v1(3, Rat(1));
  std::vector<Rat> v2{Rat(make_rat(2, 3) - delta), Rat(make_rat(1, 2) + eps),
                      Rat(0)};
  return Instance(Valuation(std::move(v1), "v1"),
                  Valuation(std::move(v2), "v2"));
}

}  // namespace demo
}  // namespace seqauction
