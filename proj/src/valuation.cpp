#include "seqauction/valuation.hpp"

#include <stdexcept>
#include <utility>

namespace seqauction {

Valuation::Valuation(std::vector<Rat> increments, const std::string& label)
    : increments_(std::move(increments)), label_(label) {
  if (increments_.empty()) {
    throw std::invalid_argument(label_ + ": needs at least one increment");
  }
  for (size_t k = 0; k < increments_.size(); ++k) {
    if (increments_[k] < 0) {
      throw std::invalid_argument(
          label_ + "[" + std::to_string(k + 1) + "] = " +
          rat_str(increments_[k]) + " violates nonnegativity");
    }
    if (k > 0 && increments_[k] > increments_[k - 1]) {
      throw std::invalid_argument(
          label_ + "[" + std::to_string(k + 1) + "] = " +
          rat_str(increments_[k]) + " > " + label_ + "[" + std::to_string(k) +
          "] = " + rat_str(increments_[k - 1]) +
          " violates weakly decreasing increments");
    }
  }
  prefix_.resize(increments_.size() + 1);
  prefix_[0] = 0;
  for (size_t k = 0; k < increments_.size(); ++k) {
    prefix_[k + 1] = prefix_[k] + increments_[k];
  }
}

const Rat& Valuation::increment(int k) const {
  if (k < 1 || k > items()) {
    throw std::out_of_range(label_ + "(" + std::to_string(k) +
                            ") outside 1.." + std::to_string(items()));
  }
  return increments_[static_cast<size_t>(k) - 1];
}

const Rat& Valuation::cumulative(int k) const {
  if (k < 0 || k > items()) {
    throw std::out_of_range(label_ + ": cumulative(" + std::to_string(k) +
                            ") outside 0.." + std::to_string(items()));
  }
  return prefix_[static_cast<size_t>(k)];
}

Instance::Instance(Valuation buyer1, Valuation buyer2)
    : v1(std::move(buyer1)), v2(std::move(buyer2)) {
  if (v1.items() != v2.items()) {
    throw std::invalid_argument(
        "buyer valuations disagree on T: " + std::to_string(v1.items()) +
        " vs " + std::to_string(v2.items()));
  }
}

Rat incremental(const Instance& inst, int buyer, int k, Node x) {
  if (k < 1) {
    throw std::out_of_range("incremental: k = " + std::to_string(k) + " < 1");
  }
  return inst.of(buyer).increment(own_items(x, buyer) + k);
}

Rat cumulative_from(const Instance& inst, int buyer, int k, Node x) {
  int base = own_items(x, buyer);
  const Valuation& v = inst.of(buyer);
  return v.cumulative(base + k) - v.cumulative(base);
}

Rat real_incremental(const Instance& inst, int buyer, Role role,
                     const Rat& tau, Node x) {
  int t = remaining(x, inst.T());
  if (tau < 0 || tau > t) {
    throw std::out_of_range("real_incremental: tau = " + rat_str(tau) +
                            " outside [0," + std::to_string(t) + "]");
  }
  long k;
  if (role == Role::monopsonist_side) {
    k = rat_ceil(tau);
    if (k == 0) k = 1;  // right-continuous at 0
  } else {
    k = rat_floor(tau + 1);
  }
  return incremental(inst, buyer, static_cast<int>(k), x);
}

Rat real_cumulative(const Instance& inst, int buyer, const Rat& len, Node x) {
  int t = remaining(x, inst.T());
  if (len < 0 || len > t) {
    throw std::out_of_range("real_cumulative: len = " + rat_str(len) +
                            " outside [0," + std::to_string(t) + "]");
  }
  long whole = rat_floor(len);
  Rat frac = len - Rat(whole);
  Rat sum = cumulative_from(inst, buyer, static_cast<int>(whole), x);
  if (frac > 0) {
    sum += frac * incremental(inst, buyer, static_cast<int>(whole) + 1, x);
  }
  return sum;
}

}  // namespace seqauction
