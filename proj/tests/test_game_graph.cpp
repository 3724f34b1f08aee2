#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "seqauction/game_graph.hpp"

using namespace seqauction;

TEST_CASE("remaining supply") {
  CHECK(remaining(Node{0, 0}, 2) == 2);
  CHECK(remaining(Node{1, 1}, 2) == 0);
  CHECK(remaining(Node{1, 0}, 3) == 2);
  CHECK(is_terminal(Node{2, 0}, 2));
  CHECK(is_decision(Node{0, 0}, 1));
}

TEST_CASE("children") {
  CHECK(child(Node{0, 0}, 1, 2) == Node{1, 0});
  Node c = child(Node{0, 1}, 2, 2);
  CHECK(c == Node{0, 2});
  CHECK(is_terminal(c, 2));
  CHECK(child(Node{1, 1}, 1, 3) == Node{2, 1});
  CHECK_THROWS_AS(child(Node{1, 1}, 1, 2), std::logic_error);
  CHECK_THROWS_AS(child(Node{0, 0}, 3, 2), std::logic_error);
}

TEST_CASE("enumeration by remaining supply") {
  auto groups = nodes_by_remaining(1);
  REQUIRE(groups.size() == 2);
  std::set<Node> t0(groups[0].begin(), groups[0].end());
  CHECK(t0 == std::set<Node>{Node{1, 0}, Node{0, 1}});
  CHECK(groups[1] == std::vector<Node>{Node{0, 0}});

  size_t total = 0;
  for (const auto& g : nodes_by_remaining(2)) total += g.size();
  CHECK(total == 6);

  for (int T : {1, 3, 7, 12}) {
    std::set<Node> seen;
    for (const auto& g : nodes_by_remaining(T)) {
      for (Node x : g) {
        CHECK(x.x1 + x.x2 <= T);
        CHECK(seen.insert(x).second);  // no duplicates
      }
    }
    // set equality against a direct double loop
    size_t direct = 0;
    for (int x1 = 0; x1 <= T; ++x1) {
      for (int x2 = 0; x1 + x2 <= T; ++x2) {
        ++direct;
        CHECK(seen.count(Node{x1, x2}) == 1);
      }
    }
    CHECK(seen.size() == direct);
    CHECK(static_cast<int>(direct) == node_count(T));
  }
}

TEST_CASE("children stay within the lattice and drop remaining by one") {
  int T = 5;
  for (const auto& g : nodes_by_remaining(T)) {
    for (Node x : g) {
      if (!is_decision(x, T)) continue;
      Node a = child(x, 1, T);
      Node b = child(x, 2, T);
      CHECK(a != b);
      CHECK(remaining(a, T) == remaining(x, T) - 1);
      CHECK(remaining(b, T) == remaining(x, T) - 1);
    }
  }
}

TEST_CASE("node table rejects off-lattice access") {
  NodeTable<int> table(3);
  table.at(Node{1, 2}) = 7;
  CHECK(table.at(Node{1, 2}) == 7);
  CHECK_THROWS_AS(table.at(Node{2, 2}), std::out_of_range);
  CHECK_THROWS_AS(table.at(Node{-1, 0}), std::out_of_range);
}
