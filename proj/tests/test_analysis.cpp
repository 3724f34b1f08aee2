#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "seqauction/analysis.hpp"
#include "seqauction/examples.hpp"
#include "seqauction/random_instance.hpp"
#include "seqauction/welfare.hpp"

using namespace seqauction;

namespace {
const Rat kDelta = make_rat(1, 100);
const Rat kEps = make_rat(3, 200);
const Node kRoot{0, 0};
}  // namespace

TEST_CASE("realized paths of the two-item instance") {
  Instance inst = demo::two_item_inefficiency();
  SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
  PathSet paths = realized_paths(game, kRoot);
  CHECK_FALSE(paths.truncated);
  REQUIRE(paths.paths.size() == 1);
  const PathRealization& p = paths.paths[0];
  CHECK(p.nodes == std::vector<Node>{kRoot, Node{0, 1}, Node{1, 1}});
  CHECK(p.winners == std::vector<int>{2, 1});
  CHECK(p.prices == std::vector<Rat>{Rat(6), Rat(5)});
  CHECK(p.probability == 1);
  CHECK(p.items_won(1) == 1);
  CHECK(p.realized_utility(inst, 1) == 5);
  CHECK(p.realized_utility(inst, 2) == 2);
}

TEST_CASE("deterministic tie rules never branch") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 60; ++n) {
    Instance inst = random_concave_instance(rng, 7);
    for (const TieBreakRule& tie :
         {TieBreakRule::buyer1(), TieBreakRule::buyer2()}) {
      SolvedGame game = solve(inst, Mode::no_overbid, tie);
      for (const auto& group : nodes_by_remaining(inst.T())) {
        for (Node x : group) {
          if (is_terminal(x, inst.T())) continue;
          CHECK(realized_paths(game, x).paths.size() == 1);
        }
      }
    }
  }
}

TEST_CASE("tie at the source splits the path set in half") {
  Instance inst = demo::tie_sensitive();
  SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
  PathSet paths = realized_paths(game, kRoot);
  REQUIRE(paths.paths.size() == 2);
  CHECK(paths.paths[0].probability == make_rat(1, 2));
  CHECK(paths.paths[1].probability == make_rat(1, 2));
  // only the source ties; play is forced afterwards
  CHECK(paths.paths[0].winners == std::vector<int>{1, 1, 1, 2});
  CHECK(paths.paths[1].winners == std::vector<int>{2, 2, 2, 1});
}

TEST_CASE("path probabilities sum to one from every start node") {
  std::mt19937_64 rng(6);
  for (int n = 0; n < 80; ++n) {
    Instance inst = random_concave_instance(rng, 8);
    SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
    for (const auto& group : nodes_by_remaining(inst.T())) {
      for (Node x : group) {
        if (is_terminal(x, inst.T())) continue;
        CHECK(check_path_probabilities(game, x).ok());
      }
    }
  }
}

TEST_CASE("path cap is reported, never silent") {
  Instance inst = demo::tie_sensitive();
  SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
  PathSet capped = realized_paths(game, kRoot, 1);
  CHECK(capped.truncated);
  Report r = check_declining_prices(game, kRoot, 1);
  CHECK_FALSE(r.ok());
  CHECK(r.violations[0].what == "path-cap-exceeded");
}

TEST_CASE("declining prices on the bundled instances") {
  Instance ex1 = demo::two_item_inefficiency();
  SolvedGame game = solve(ex1, Mode::no_overbid, TieBreakRule::uniform());
  CHECK(check_declining_prices(game, kRoot).ok());
  // single round: nothing to compare
  Instance solo(Valuation({Rat(2)}, "v1"), Valuation({Rat(1)}, "v2"));
  CHECK(check_declining_prices(
            solve(solo, Mode::no_overbid, TieBreakRule::uniform()), kRoot)
            .ok());
  // known to hold with overbidding as well for two buyers
  SolvedGame ob = solve(ex1, Mode::overbid_allowed, TieBreakRule::uniform());
  CHECK(check_declining_prices(ob, kRoot).ok());
}

TEST_CASE("greedy outcome on the two-item instance") {
  Instance inst = demo::two_item_inefficiency();
  Report r = greedy_outcome_check(inst, kRoot, TieBreakRule::uniform());
  CHECK(r.ok());
  // direct look at the simulated play
  SolvedGame sim = greedy_outcome_game(inst, TieBreakRule::uniform());
  PathSet paths = realized_paths(sim, kRoot);
  REQUIRE(paths.paths.size() == 1);
  CHECK(paths.paths[0].prices == std::vector<Rat>{Rat(6), Rat(5)});
  CHECK(paths.paths[0].realized_utility(inst, 1) == 5);
  CHECK(paths.paths[0].items_won(1) == 1);
}

TEST_CASE("greedy outcome with every increment equal") {
  std::vector<Rat> flat(4, make_rat(3, 4));
  Instance inst(Valuation(flat, "v1"), Valuation(flat, "v2"));
  Report r = greedy_outcome_check(inst, kRoot, TieBreakRule::uniform());
  CHECK(r.ok());
  SolvedGame sim = greedy_outcome_game(inst, TieBreakRule::uniform());
  PathSet paths = realized_paths(sim, kRoot);
  for (const PathRealization& p : paths.paths) {
    for (const Rat& price : p.prices) CHECK(price == make_rat(3, 4));
    CHECK(p.realized_utility(inst, 1) == 0);
    CHECK(p.realized_utility(inst, 2) == 0);
  }
}

TEST_CASE("greedy outcome on the remaining bundled instances") {
  for (const Instance& inst :
       {demo::overbidding_blowup(10, make_rat(1, 1000)),
        demo::tie_sensitive(), demo::greedy_squeeze(kDelta, kEps)}) {
    for (const TieBreakRule& tie :
         {TieBreakRule::buyer1(), TieBreakRule::uniform(),
          TieBreakRule::buyer2()}) {
      CHECK(greedy_outcome_check(inst, kRoot, tie).ok());
    }
  }
}

TEST_CASE("greedy outcome of the worst-case family at T=10") {
  Instance inst = worst_case_instance(10);
  Report r = greedy_outcome_check(inst, kRoot, TieBreakRule::buyer2());
  CHECK(r.ok());
  SolvedGame sim = greedy_outcome_game(inst, TieBreakRule::buyer2());
  PathSet paths = realized_paths(sim, kRoot);
  REQUIRE(paths.paths.size() == 1);
  CHECK(paths.paths[0].items_won(1) == 4);   // = greedy demand at the source
  CHECK(paths.paths[0].items_won(2) == 6);   // opponent takes the rest first
}

TEST_CASE("greedy outcome claims hold from every start node") {
  std::mt19937_64 rng(20240824);
  for (int n = 0; n < 40; ++n) {
    Instance inst = random_concave_instance(rng, 6);
    for (const auto& group : nodes_by_remaining(inst.T())) {
      for (Node x : group) {
        if (is_terminal(x, inst.T())) continue;
        for (const TieBreakRule& tie :
             {TieBreakRule::buyer2(), TieBreakRule::uniform()}) {
          Report r = greedy_outcome_check(inst, x, tie);
          if (!r.ok()) {
            for (const Violation& v : r.violations) {
              MESSAGE(v.what << " from " << node_str(x) << ": expected "
                             << v.expected << " got " << v.actual);
            }
          }
          CHECK(r.ok());
        }
      }
    }
  }
}

TEST_CASE("greedy and equilibrium play agree wherever a monopsonist exists") {
  CHECK(monopsonist_equivalence_check(demo::two_item_inefficiency(),
                                      TieBreakRule::uniform())
            .ok());
  std::mt19937_64 rng(20240815);
  for (int n = 0; n < 120; ++n) {
    Instance inst = random_concave_instance(rng, 8);
    for (const TieBreakRule& tie :
         {TieBreakRule::buyer1(), TieBreakRule::uniform(),
          TieBreakRule::buyer2()}) {
      Report r = monopsonist_equivalence_check(inst, tie);
      CHECK(r.ok());
    }
  }
}

TEST_CASE("quasi-monopsonist detection") {
  Instance ex1 = demo::two_item_inefficiency();
  SolvedGame game = solve(ex1, Mode::no_overbid, TieBreakRule::uniform());
  CHECK(is_quasi_monopsonist(game, 1, kRoot));
  CHECK_FALSE(is_quasi_monopsonist(game, 2, kRoot));

  Instance sym = demo::tie_sensitive();
  SolvedGame tied = solve(sym, Mode::no_overbid, TieBreakRule::uniform());
  CHECK(is_quasi_monopsonist(tied, 1, kRoot));
  CHECK(is_quasi_monopsonist(tied, 2, kRoot));
}

TEST_CASE("monopsonists are quasi-monopsonists") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    Instance inst = random_concave_instance(rng, 7);
    GreedyProfile profile(inst);
    SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
    for (const auto& group : nodes_by_remaining(inst.T())) {
      for (Node x : group) {
        if (is_terminal(x, inst.T())) continue;
        for (int buyer = 1; buyer <= 2; ++buyer) {
          if (profile.monopsonist(buyer, x)) {
            CHECK(is_quasi_monopsonist(game, buyer, x));
          }
        }
      }
    }
  }
}

TEST_CASE("equilibrium structure checks") {
  Instance ex1 = demo::two_item_inefficiency();
  GreedyProfile profile(ex1);
  SolvedGame game = solve(ex1, Mode::no_overbid, TieBreakRule::uniform());
  Report r = eql_character_check(game, profile);
  CHECK(r.ok());
  CHECK(game.price(kRoot) >=
        rat_min(profile.threshold(1, kRoot), profile.threshold(2, kRoot)));
  SolvedGame ob = solve(ex1, Mode::overbid_allowed, TieBreakRule::uniform());
  CHECK_THROWS_AS(eql_character_check(ob, profile), std::invalid_argument);

  std::mt19937_64 rng(20240816);
  for (int n = 0; n < 120; ++n) {
    Instance inst = random_concave_instance(rng, 8);
    GreedyProfile pr(inst);
    for (const TieBreakRule& tie :
         {TieBreakRule::buyer1(), TieBreakRule::uniform(),
          TieBreakRule::buyer2()}) {
      CHECK(eql_character_check(solve(inst, Mode::no_overbid, tie), pr).ok());
    }
  }
}

TEST_CASE("phase segmentation of the two-item equilibrium") {
  Instance inst = demo::two_item_inefficiency();
  GreedyProfile profile(inst);
  SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
  PathSet paths = realized_paths(game, kRoot);
  REQUIRE(paths.paths.size() == 1);
  PhaseSegmentation seg = phase_segmentation(game, profile, paths.paths[0]);
  CHECK(seg.competitive_end == 0);
  CHECK(seg.reduction_end == 1);
  CHECK(seg.monopsonist == 1);
  PhaseSegmentation alt =
      phase_segmentation(game, profile, paths.paths[0],
                         CompetitiveBoundary::first_monopsonist);
  CHECK(alt.monopsonist == 1);
  CHECK(alt.competitive_end == 0);  // buyer 1 is already a monopsonist
}

TEST_CASE("full-demand start spends the whole path in the monopsony phase") {
  Instance inst(Valuation({Rat(5), Rat(5), Rat(5)}, "v1"),
                Valuation({Rat(1), Rat(1), Rat(1)}, "v2"));
  GreedyProfile profile(inst);
  REQUIRE(profile.kappa(1, kRoot) == 3);
  SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
  PathSet paths = realized_paths(game, kRoot);
  REQUIRE(paths.paths.size() == 1);
  PhaseSegmentation seg = phase_segmentation(game, profile, paths.paths[0]);
  CHECK(seg.competitive_end == 0);
  CHECK(seg.reduction_end == 0);
  CHECK(seg.monopsonist == 1);
  for (const Rat& price : paths.paths[0].prices) CHECK(price == 1);
}

TEST_CASE("worst-case family phases: reduction spans the opponent's wins") {
  Instance inst = worst_case_instance(10);
  GreedyProfile profile(inst);
  SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::buyer2());
  PathSet paths = realized_paths(game, kRoot);
  REQUIRE(paths.paths.size() == 1);
  const PathRealization& path = paths.paths[0];
  int kappa = profile.kappa(1, kRoot);
  REQUIRE(kappa == 4);
  PhaseSegmentation seg = phase_segmentation(game, profile, path);
  CHECK(seg.monopsonist == 1);
  CHECK(seg.competitive_end == 0);
  CHECK(seg.reduction_end == static_cast<size_t>(10 - kappa));
  // the monopsony phase is exactly the final winner's sweep
  for (size_t j = 0; j < path.rounds(); ++j) {
    CHECK(path.winners[j] == (j < seg.reduction_end ? 2 : 1));
  }
}

TEST_CASE("phase ordering and demand persistence on random paths") {
  std::mt19937_64 rng(20240817);
  for (int n = 0; n < 100; ++n) {
    Instance inst = random_concave_instance(rng, 8);
    GreedyProfile profile(inst);
    SolvedGame game = solve(inst, Mode::no_overbid, TieBreakRule::uniform());
    PathSet paths = realized_paths(game, kRoot);
    REQUIRE_FALSE(paths.truncated);
    for (const PathRealization& path : paths.paths) {
      PhaseSegmentation seg = phase_segmentation(game, profile, path);
      CHECK(seg.competitive_end <= seg.reduction_end);
      CHECK(seg.reduction_end <= path.rounds());
      // once a buyer's demand covers the remaining supply on the path, it
      // wins every later round and its demand stays binding
      for (int buyer = 1; buyer <= 2; ++buyer) {
        bool bound = false;
        for (size_t j = 0; j < path.rounds(); ++j) {
          bool now = profile.kappa(buyer, path.nodes[j]) ==
                     remaining(path.nodes[j], inst.T());
          if (bound) {
            CHECK(path.winners[j] == buyer);
            CHECK(now);
          }
          bound = bound || now;
        }
      }
    }
  }
}

TEST_CASE("greedy invariants hold on the bundled instances") {
  for (const Instance& inst :
       {demo::two_item_inefficiency(), demo::tie_sensitive(),
        demo::greedy_squeeze(kDelta, kEps),
        demo::overbidding_blowup(6, make_rat(1, 1000)),
        worst_case_instance(10)}) {
    GreedyProfile profile(inst);
    Report r = greedy_invariant_suite(inst, profile);
    CHECK(r.ok());
  }
}

TEST_CASE("greedy invariants hold on a random corpus") {
  std::mt19937_64 rng(20240818);
  for (int n = 0; n < 200; ++n) {
    Instance inst = random_concave_instance(rng, 8);
    GreedyProfile profile(inst);
    Report r = greedy_invariant_suite(inst, profile);
    if (!r.ok()) {
      for (const Violation& v : r.violations) {
        MESSAGE(v.what << " at " << node_str(v.node) << " buyer " << v.buyer
                       << ": expected " << v.expected << " got " << v.actual);
      }
    }
    CHECK(r.ok());
  }
}
