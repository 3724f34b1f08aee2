#pragma once

#include <stdexcept>
#include <vector>

namespace seqauction {

// Lattice point of the auction state space: x1/x2 items already won by
// each buyer. The state space for T items is { (x1,x2) : x1 + x2 <= T };
// it is a DAG, not a tree, and every per-node quantity is memoized by
// (x1, x2).
struct Node {
  int x1 = 0;
  int x2 = 0;

  friend bool operator==(const Node& a, const Node& b) {
    return a.x1 == b.x1 && a.x2 == b.x2;
  }
  friend bool operator!=(const Node& a, const Node& b) { return !(a == b); }
  friend bool operator<(const Node& a, const Node& b) {
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.x2 < b.x2;
  }
};

inline int remaining(Node x, int T) { return T - x.x1 - x.x2; }
inline bool is_decision(Node x, int T) { return remaining(x, T) >= 1; }
inline bool is_terminal(Node x, int T) { return remaining(x, T) == 0; }

std::string node_str(Node x);

// x + e_winner. Calling this on a terminal node is a bug in the caller.
Node child(Node x, int winner, int T);

inline int node_count(int T) { return (T + 1) * (T + 2) / 2; }

// All nodes grouped by remaining supply, t ascending, so a backward
// solver visiting groups in order always has both children solved.
std::vector<std::vector<Node>> nodes_by_remaining(int T);

// Dense per-node storage keyed by (x1, x2).
template <typename V>
class NodeTable {
 public:
  NodeTable() : T_(0) {}
  explicit NodeTable(int T) : T_(T), cells_(node_count(T)) {}

  int T() const { return T_; }

  V& at(Node x) { return cells_[index(x)]; }
  const V& at(Node x) const { return cells_[index(x)]; }

 private:
  size_t index(Node x) const {
    if (x.x1 < 0 || x.x2 < 0 || x.x1 + x.x2 > T_) {
      throw std::out_of_range("node (" + std::to_string(x.x1) + "," +
                              std::to_string(x.x2) + ") outside lattice T=" +
                              std::to_string(T_));
    }
    return static_cast<size_t>(x.x1) * (T_ + 1) -
           static_cast<size_t>(x.x1) * (x.x1 - 1) / 2 + x.x2;
  }

  int T_;
  std::vector<V> cells_;
};

inline int other(int buyer) { return buyer == 1 ? 2 : 1; }

}  // namespace seqauction
