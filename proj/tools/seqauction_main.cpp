// seqauction: exact solver and property checker for two-buyer sequential
// second-price auctions with or without the no-overbidding constraint.
//
// Subcommands: solve, greedy, export, check, poa, example. Exit codes:
// 0 success / no violations, 1 violations or internal assertion failure,
// 2 invalid input.

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "seqauction/examples.hpp"
#include "seqauction/io.hpp"
#include "seqauction/random_instance.hpp"

namespace sa = seqauction;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;

std::string resolve_out(const std::string& out) {
  if (out.empty()) return out;
  const char* dir = std::getenv("SEQAUCTION_OUT_DIR");
  if (dir != nullptr && *dir != '\0' && out.find('/') == std::string::npos) {
    return std::string(dir) + "/" + out;
  }
  return out;
}

void emit(const std::string& out, const std::string& content) {
  std::string path = resolve_out(out);
  if (path.empty()) {
    std::cout << content;
  } else {
    sa::write_file_atomic(path, content);
  }
}

sa::Mode parse_mode(const std::string& mode) {
  if (mode == "no-overbid") return sa::Mode::no_overbid;
  if (mode == "overbid") return sa::Mode::overbid_allowed;
  throw std::invalid_argument("bad --mode '" + mode +
                              "' (expected no-overbid | overbid)");
}

sa::TieBreakRule pick_tie(const std::string& flag,
                          const sa::NamedInstance& named) {
  if (!flag.empty()) return sa::parse_tie_flag(flag);
  if (named.tie.has_value()) return *named.tie;
  return sa::TieBreakRule::uniform();
}

// Named reports produced by all checks on one instance.
using InstanceOutcome = std::vector<std::pair<std::string, sa::Report>>;

// Runs fn(i) for i in [0, count) on a small worker pool; results land in
// a pre-sized vector so aggregation order stays deterministic.
template <typename Fn>
std::vector<InstanceOutcome> parallel_outcomes(size_t count, Fn&& fn) {
  std::vector<InstanceOutcome> results(count);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 16);
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        results[i] = fn(i);
      }
    });
  }
  for (std::thread& th : pool) th.join();
  return results;
}

struct CheckTally {
  size_t cases = 0;
  size_t violations = 0;
};

int run_checks(const std::vector<sa::NamedInstance>& corpus,
               const std::vector<std::string>& selected, std::uint64_t seed,
               size_t path_cap) {
  const std::vector<sa::TieBreakRule> rules = {sa::TieBreakRule::buyer2(),
                                               sa::TieBreakRule::uniform(),
                                               sa::TieBreakRule::buyer1()};
  auto wants = [&](const std::string& name) {
    for (const std::string& s : selected) {
      if (s == "all" || s == name) return true;
      if (s == "dpa" && name == "declining-prices") return true;  // shorthand
    }
    return false;
  };

  std::vector<InstanceOutcome> all_outcomes =
      parallel_outcomes(corpus.size(), [&](size_t idx) {
        const sa::Instance& inst = corpus[idx].instance;
        InstanceOutcome outcomes;
        sa::GreedyProfile profile(inst);
        if (wants("greedy-invariants")) {
          outcomes.emplace_back("greedy-invariants",
                                sa::greedy_invariant_suite(inst, profile));
        }
        if (wants("optimal-allocation")) {
          sa::Report r{"optimal-allocation"};
          for (const auto& group : sa::nodes_by_remaining(inst.T())) {
            for (sa::Node x : group) {
              if (sa::is_terminal(x, inst.T())) continue;
              ++r.cases_checked;
              try {
                sa::optimal_welfare(inst, x);
              } catch (const std::logic_error& err) {
                r.add("argopt-mismatch", x, 0, "formula == brute force",
                      err.what());
              }
            }
          }
          outcomes.emplace_back("optimal-allocation", std::move(r));
        }
        if (wants("subpath-efficiency")) {
          outcomes.emplace_back(
              "subpath-efficiency",
              sa::subpath_bound_check(inst, seed + idx, 50));
        }
        if (wants("fractional-bound")) {
          sa::Report r{"fractional-bound"};
          for (const auto& group : sa::nodes_by_remaining(inst.T())) {
            for (sa::Node x : group) {
              if (sa::is_terminal(x, inst.T())) continue;
              if (sa::duopsony_factor(inst, 1, x) !=
                  sa::remaining(x, inst.T())) {
                continue;
              }
              sa::Report one = sa::fractional_value_bound_check(inst, x);
              r.cases_checked += one.cases_checked;
              for (auto& v : one.violations) r.violations.push_back(v);
            }
          }
          outcomes.emplace_back("fractional-bound", std::move(r));
        }
        if (wants("tie-independence")) {
          sa::Report r{"tie-independence"};
          ++r.cases_checked;
          sa::TieIndependenceResult t =
              sa::utilities_tiebreak_independence_check(
                  inst, sa::Mode::overbid_allowed);
          if (!t.utilities_equal) {
            r.add("overbid-utility-depends-on-tie", *t.node, t.buyer,
                  sa::rat_str(t.value_a), sa::rat_str(t.value_b));
          }
          outcomes.emplace_back("tie-independence", std::move(r));
        }
        for (const sa::TieBreakRule& tie : rules) {
          if (wants("declining-prices") || wants("efficiency-floor") ||
              wants("equilibrium-structure") || wants("recursion")) {
            sa::SolvedGame game = sa::solve(inst, sa::Mode::no_overbid, tie);
            if (wants("declining-prices")) {
              outcomes.emplace_back(
                  "declining-prices",
                  sa::check_declining_prices(game, sa::Node{0, 0}, path_cap));
            }
            if (wants("equilibrium-structure")) {
              outcomes.emplace_back("equilibrium-structure",
                                    sa::eql_character_check(game, profile));
            }
            if (wants("recursion")) {
              sa::Report r{"recursion"};
              ++r.cases_checked;
              for (sa::Node x : sa::recursion_mismatches(game)) {
                r.add("recursion-mismatch", x, 0, "stored == recomputed",
                      "differs");
              }
              outcomes.emplace_back("recursion", std::move(r));
            }
            if (wants("efficiency-floor")) {
              sa::Report r{"efficiency-floor"};
              ++r.cases_checked;
              sa::WelfareSummary s = sa::equilibrium_efficiency(
                  inst, sa::Mode::no_overbid, tie, path_cap);
              if (s.truncated) {
                r.add("path-cap-exceeded", sa::Node{0, 0}, 0,
                      "complete enumeration", "truncated");
              } else if (s.min_efficiency < sa::one_minus_inv_e_lower()) {
                r.add("efficiency-below-floor", sa::Node{0, 0}, 0,
                      ">= " + sa::rat_str(sa::one_minus_inv_e_lower()),
                      sa::rat_str(s.min_efficiency));
              }
              outcomes.emplace_back("efficiency-floor", std::move(r));
            }
          }
          if (wants("greedy-outcome")) {
            outcomes.emplace_back(
                "greedy-outcome",
                sa::greedy_outcome_check(inst, sa::Node{0, 0}, tie, path_cap));
          }
          if (wants("monopsonist-equivalence")) {
            outcomes.emplace_back("monopsonist-equivalence",
                                  sa::monopsonist_equivalence_check(inst, tie));
          }
          if (wants("deviation")) {
            for (sa::Mode mode :
                 {sa::Mode::no_overbid, sa::Mode::overbid_allowed}) {
              sa::Report r{"deviation"};
              ++r.cases_checked;
              sa::SolvedGame game = sa::solve(inst, mode, tie);
              for (const sa::DeviationViolation& v :
                   sa::deviation_check(game)) {
                r.add("profitable-deviation", v.node, v.buyer,
                      "<= " + sa::rat_str(v.equilibrium_utility),
                      sa::rat_str(v.deviation_utility) + " with bid " +
                          sa::rat_str(v.candidate_bid));
              }
              outcomes.emplace_back("deviation", std::move(r));
            }
          }
        }

        return outcomes;
      });

  std::map<std::string, CheckTally> tally;
  for (const InstanceOutcome& outcomes : all_outcomes) {
    for (const auto& [name, report] : outcomes) {
      CheckTally& t = tally[name];
      t.cases += report.cases_checked;
      for (const sa::Violation& v : report.violations) {
        ++t.violations;
        if (t.violations <= 5) {
          std::cerr << "violation [" << name << "] " << v.what << " at "
                    << sa::node_str(v.node)
                    << (v.buyer ? " buyer " + std::to_string(v.buyer) : "")
                    << ": expected " << v.expected << ", got " << v.actual
                    << "\n";
        }
      }
    }
  }

  size_t total_violations = 0;
  for (const auto& [name, t] : tally) {
    std::cout << (t.violations == 0 ? "[ok]   " : "[FAIL] ") << name << ": "
              << t.cases << " cases, " << t.violations << " violations\n";
    total_violations += t.violations;
  }
  return total_violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact backward-induction solver for two-buyer sequential "
      "second-price auctions"};
  app.require_subcommand(1);

  std::string instance_path, mode_flag = "no-overbid", tie_flag, out_path;
  std::size_t path_cap = sa::default_path_cap;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* cmd, bool with_mode_tie) {
    if (with_mode_tie) {
      cmd->add_option("--mode", mode_flag,
                      "bidding regime: no-overbid | overbid");
      cmd->add_option("--tie", tie_flag,
                      "tie-break rule: buyer1 | buyer2 | uniform | "
                      "q=<rational> (default: instance file, else uniform)");
    }
    cmd->add_option("--out", out_path,
                    "output file (default stdout; relative names resolve "
                    "under $SEQAUCTION_OUT_DIR)");
    cmd->add_option("--path-cap", path_cap,
                    "maximum number of realized paths to enumerate");
  };

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve an instance and write a run report");
  solve_cmd->add_option("instance", instance_path, "instance JSON file")
      ->required();
  add_common(solve_cmd, true);

  CLI::App* greedy_cmd = app.add_subcommand(
      "greedy", "dump the per-node greedy quantities of an instance");
  greedy_cmd->add_option("instance", instance_path, "instance JSON file")
      ->required();
  add_common(greedy_cmd, false);

  std::string format = "dot", table = "nodes";
  CLI::App* export_cmd = app.add_subcommand(
      "export", "render the solved lattice as DOT or CSV tables");
  export_cmd->add_option("instance", instance_path, "instance JSON file")
      ->required();
  export_cmd->add_option("--format", format, "dot | csv");
  export_cmd->add_option("--table", table,
                         "csv table selection: nodes | trajectory");
  add_common(export_cmd, true);

  int random_count = 0, max_t = 8;
  std::vector<std::string> selected_checks{"all"};
  CLI::App* check_cmd = app.add_subcommand(
      "check", "run structural checks on an instance or a random corpus");
  check_cmd->add_option("instance", instance_path, "instance JSON file");
  check_cmd->add_option("--random", random_count,
                        "number of random instances to generate");
  check_cmd->add_option("--max-t", max_t, "maximum T for random instances");
  check_cmd->add_option("--seed", seed, "random corpus seed");
  check_cmd->add_option(
      "--check", selected_checks,
      "checks to run: declining-prices greedy-invariants greedy-outcome "
      "monopsonist-equivalence equilibrium-structure optimal-allocation "
      "efficiency-floor deviation subpath-efficiency fractional-bound "
      "tie-independence recursion all");
  add_common(check_cmd, false);

  std::string family;
  std::vector<int> t_list;
  CLI::App* poa_cmd = app.add_subcommand(
      "poa", "efficiency experiments: worst-case family or random corpus");
  poa_cmd->add_option("--family", family, "worst-case");
  poa_cmd->add_option("--t-list", t_list, "family sizes T")->delimiter(',');
  poa_cmd->add_option("--random", random_count, "number of random instances");
  poa_cmd->add_option("--max-t", max_t, "maximum T for random instances");
  poa_cmd->add_option("--seed", seed, "random corpus seed");
  add_common(poa_cmd, false);

  std::string example_id;
  std::string eps_flag, delta_flag;
  int example_t = 0;
  CLI::App* example_cmd = app.add_subcommand(
      "example", "write a bundled demonstration instance file");
  example_cmd
      ->add_option("id", example_id, "ex1 | ex2 | ex3 | ex4 | worst-case")
      ->required();
  example_cmd->add_option("--t", example_t,
                          "items (ex2 default 10; worst-case required)");
  example_cmd->add_option("--epsilon", eps_flag,
                          "epsilon (ex2 default 1/1000, ex4 default 3/200)");
  example_cmd->add_option("--delta", delta_flag, "delta (ex4 default 1/100)");
  add_common(example_cmd, false);

  try {
    app.parse(argc, argv);

    if (solve_cmd->parsed()) {
      sa::NamedInstance named = sa::load_instance_file(instance_path);
      sa::Mode mode = parse_mode(mode_flag);
      sa::TieBreakRule tie = pick_tie(tie_flag, named);
      nlohmann::ordered_json report =
          sa::run_report(named, mode, tie, path_cap);
      emit(out_path, report.dump(2) + "\n");
      return kExitOk;
    }

    if (greedy_cmd->parsed()) {
      sa::NamedInstance named = sa::load_instance_file(instance_path);
      emit(out_path, sa::greedy_report(named).dump(2) + "\n");
      return kExitOk;
    }

    if (export_cmd->parsed()) {
      sa::NamedInstance named = sa::load_instance_file(instance_path);
      sa::Mode mode = parse_mode(mode_flag);
      sa::TieBreakRule tie = pick_tie(tie_flag, named);
      sa::SolvedGame game = sa::solve(named.instance, mode, tie);
      if (format == "dot") {
        emit(out_path, sa::lattice_dot(game, named.name));
      } else if (format == "csv") {
        if (table == "nodes") {
          sa::GreedyProfile profile(named.instance);
          emit(out_path, sa::nodes_csv(game, profile));
        } else if (table == "trajectory") {
          emit(out_path, sa::trajectory_csv(game, path_cap));
        } else {
          throw std::invalid_argument("bad --table '" + table + "'");
        }
      } else {
        throw std::invalid_argument("bad --format '" + format + "'");
      }
      return kExitOk;
    }

    if (check_cmd->parsed()) {
      std::vector<sa::NamedInstance> corpus;
      if (!instance_path.empty()) {
        corpus.push_back(sa::load_instance_file(instance_path));
      }
      if (random_count > 0) {
        for (sa::Instance& inst :
             sa::random_corpus(random_count, max_t, seed)) {
          corpus.push_back(
              sa::NamedInstance{std::move(inst), "", std::nullopt});
        }
      }
      if (corpus.empty()) {
        throw std::invalid_argument(
            "check: give an instance file and/or --random N");
      }
      return run_checks(corpus, selected_checks, seed, path_cap);
    }

    if (poa_cmd->parsed()) {
      std::ostringstream csv;
      csv << "label,T,efficiency,efficiency_decimal\n";
      bool ok = true;
      if (!family.empty()) {
        if (family != "worst-case") {
          throw std::invalid_argument("bad --family '" + family + "'");
        }
        if (t_list.empty()) {
          throw std::invalid_argument("--family worst-case needs --t-list");
        }
        sa::PoaSuiteSpec spec;
        spec.family_ts = t_list;
        spec.path_cap = path_cap;
        sa::PoaSuiteResult result = sa::poa_suite(spec);
        for (const sa::PoaFamilyRow& row : result.family_rows) {
          csv << "worst-case," << row.T << ',' << sa::rat_str(row.efficiency)
              << ',' << sa::rat_decimal(row.efficiency) << '\n';
        }
        csv << "# weakly decreasing in T: "
            << (result.family_weakly_decreasing ? "yes" : "no") << '\n';
        csv << "# strictly above 1-1/e = "
            << sa::rat_decimal(sa::one_minus_inv_e_lower()) << "...: "
            << (result.family_above_limit ? "yes" : "no") << '\n';
        ok = result.family_weakly_decreasing && result.family_above_limit;
      }
      if (random_count > 0) {
        std::mt19937_64 rng(seed);
        size_t below = 0;
        for (int i = 0; i < random_count; ++i) {
          sa::Instance inst = sa::random_concave_instance(rng, max_t);
          sa::WelfareSummary s = sa::equilibrium_efficiency(
              inst, sa::Mode::no_overbid, sa::TieBreakRule::uniform(),
              path_cap);
          csv << "random-" << i << ',' << inst.T() << ','
              << sa::rat_str(s.min_efficiency) << ','
              << sa::rat_decimal(s.min_efficiency) << '\n';
          if (s.min_efficiency < sa::one_minus_inv_e_lower()) ++below;
        }
        csv << "# efficiencies below 1-1/e: " << below << '\n';
        ok = ok && below == 0;
      }
      if (family.empty() && random_count == 0) {
        throw std::invalid_argument(
            "poa: give --family worst-case --t-list ... and/or --random N");
      }
      emit(out_path, csv.str());
      return ok ? kExitOk : kExitViolation;
    }

    if (example_cmd->parsed()) {
      sa::NamedInstance named{
          sa::Instance(sa::Valuation({sa::Rat(1)}, "v1"),
                       sa::Valuation({sa::Rat(1)}, "v2")),
          example_id, std::nullopt};
      if (example_id == "ex1") {
        named.instance = sa::demo::two_item_inefficiency();
        named.name = "two-item-inefficiency";
      } else if (example_id == "ex2") {
        int T = example_t > 0 ? example_t : 10;
        sa::Rat eps =
            eps_flag.empty() ? sa::make_rat(1, 1000) : sa::rat_parse(eps_flag);
        named.instance = sa::demo::overbidding_blowup(T, eps);
        named.name = "overbidding-blowup";
      } else if (example_id == "ex3") {
        named.instance = sa::demo::tie_sensitive();
        named.name = "tie-sensitive";
      } else if (example_id == "ex4") {
        sa::Rat delta = delta_flag.empty() ? sa::demo::default_delta()
                                           : sa::rat_parse(delta_flag);
        sa::Rat eps = eps_flag.empty() ? sa::demo::default_eps()
                                       : sa::rat_parse(eps_flag);
        named.instance = sa::demo::greedy_squeeze(delta, eps);
        named.tie = sa::TieBreakRule::buyer2();
        named.name = "greedy-squeeze";
      } else if (example_id == "worst-case") {
        if (example_t < 1) {
          throw std::invalid_argument("example worst-case needs --t");
        }
        named.instance = sa::worst_case_instance(example_t);
        named.tie = sa::TieBreakRule::buyer2();
        named.name = "worst-case-" + std::to_string(example_t);
      } else {
        throw std::invalid_argument("unknown example '" + example_id + "'");
      }
      nlohmann::ordered_json doc = sa::instance_json(
          named.instance, named.name,
          named.tie.has_value() ? &*named.tie : nullptr);
      emit(out_path, doc.dump(2) + "\n");
      return kExitOk;
    }

    return kExitOk;
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? kExitOk : kExitBadInput;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kExitViolation;
  }
}
