#include "seqauction/game_graph.hpp"

#include <string>

namespace seqauction {

std::string node_str(Node x) {
  return "(" + std::to_string(x.x1) + "," + std::to_string(x.x2) + ")";
}

Node child(Node x, int winner, int T) {
  if (!is_decision(x, T)) {
    throw std::logic_error("child() called on terminal node " + node_str(x));
  }
  if (winner != 1 && winner != 2) {
    throw std::logic_error("winner must be buyer 1 or 2");
  }
  return winner == 1 ? Node{x.x1 + 1, x.x2} : Node{x.x1, x.x2 + 1};
}

std::vector<std::vector<Node>> nodes_by_remaining(int T) {
  std::vector<std::vector<Node>> groups(static_cast<size_t>(T) + 1);
  for (int t = 0; t <= T; ++t) {
    // nodes with x1 + x2 == T - t
    int sum = T - t;
    groups[t].reserve(static_cast<size_t>(sum) + 1);
    for (int x1 = 0; x1 <= sum; ++x1) {
      groups[t].push_back(Node{x1, sum - x1});
    }
  }
  return groups;
}

}  // namespace seqauction
