#include "seqauction/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seqauction {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<Rat> parse_value_array(const json& doc, const std::string& key,
                                   int expected) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw std::invalid_argument("instance file: '" + key +
                                "' must be an array of rational strings");
  }
  const json& arr = doc[key];
  if (expected >= 0 && static_cast<int>(arr.size()) != expected) {
    throw std::invalid_argument(
        "instance file: '" + key + "' has " + std::to_string(arr.size()) +
        " entries, expected T = " + std::to_string(expected));
  }
  std::vector<Rat> values;
  values.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& cell = arr[i];
    if (!cell.is_string()) {
      throw std::invalid_argument(
          "instance file: " + key + "[" + std::to_string(i + 1) +
          "] must be a rational string (floats are not accepted)");
    }
    try {
      values.push_back(rat_parse(cell.get<std::string>()));
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument("instance file: " + key + "[" +
                                  std::to_string(i + 1) + "]: " + err.what());
    }
  }
  return values;
}

}  // namespace

TieBreakRule parse_tie_rule(const json& doc) {
  if (!doc.is_object() || !doc.contains("rule")) {
    throw std::invalid_argument("tie spec must be {\"rule\": ...}");
  }
  std::string rule = doc["rule"].get<std::string>();
  if (rule == "buyer1") return TieBreakRule::buyer1();
  if (rule == "buyer2") return TieBreakRule::buyer2();
  if (rule == "uniform") return TieBreakRule::uniform();
  if (rule == "q") {
    if (!doc.contains("q") || !doc["q"].is_string()) {
      throw std::invalid_argument("tie spec rule 'q' needs a rational 'q'");
    }
    return TieBreakRule::constant(rat_parse(doc["q"].get<std::string>()));
  }
  if (rule == "table") {
    Rat default_q = doc.contains("q") && doc["q"].is_string()
                        ? rat_parse(doc["q"].get<std::string>())
                        : make_rat(1, 2);
    std::map<Node, Rat> entries;
    for (const json& row : doc.value("entries", json::array())) {
      entries[Node{row.at("x1").get<int>(), row.at("x2").get<int>()}] =
          rat_parse(row.at("q").get<std::string>());
    }
    return TieBreakRule::table(std::move(entries), std::move(default_q));
  }
  throw std::invalid_argument("unknown tie rule '" + rule + "'");
}

TieBreakRule parse_tie_flag(const std::string& flag) {
  if (flag == "buyer1") return TieBreakRule::buyer1();
  if (flag == "buyer2") return TieBreakRule::buyer2();
  if (flag == "uniform") return TieBreakRule::uniform();
  if (flag.rfind("q=", 0) == 0) {
    return TieBreakRule::constant(rat_parse(flag.substr(2)));
  }
  throw std::invalid_argument(
      "bad tie rule '" + flag +
      "' (expected buyer1 | buyer2 | uniform | q=<rational>)");
}

nlohmann::ordered_json tie_rule_json(const TieBreakRule& tie) {
  ordered_json out;
  const std::string& desc = tie.describe();
  if (desc.rfind("q=", 0) == 0) {
    out["rule"] = "q";
    out["q"] = desc.substr(2);
  } else {
    out["rule"] = desc;
  }
  return out;
}

NamedInstance parse_instance(const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("instance file: top level must be an object");
  }
  if (!doc.contains("T") || !doc["T"].is_number_integer()) {
    throw std::invalid_argument("instance file: integer 'T' is required");
  }
  int T = doc["T"].get<int>();
  if (T < 1) {
    throw std::invalid_argument("instance file: T = " + std::to_string(T) +
                                " must be positive");
  }
  Valuation v1(parse_value_array(doc, "v1", T), "v1");
  Valuation v2(parse_value_array(doc, "v2", T), "v2");
  NamedInstance named{Instance(std::move(v1), std::move(v2)),
                      doc.value("name", std::string{}), std::nullopt};
  if (doc.contains("tie")) named.tie = parse_tie_rule(doc["tie"]);
  return named;
}

NamedInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open instance file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw std::invalid_argument("instance file '" + path +
                                "': " + err.what());
  }
  return parse_instance(doc);
}

ordered_json instance_json(const Instance& inst, const std::string& name,
                           const TieBreakRule* tie) {
  ordered_json out;
  if (!name.empty()) out["name"] = name;
  out["T"] = inst.T();
  for (int buyer = 1; buyer <= 2; ++buyer) {
    ordered_json arr = ordered_json::array();
    for (int k = 1; k <= inst.T(); ++k) {
      arr.push_back(rat_str(inst.of(buyer).increment(k)));
    }
    out[buyer == 1 ? "v1" : "v2"] = std::move(arr);
  }
  if (tie != nullptr) out["tie"] = tie_rule_json(*tie);
  return out;
}

namespace {

ordered_json node_row(const SolvedGame& game, const GreedyProfile& profile,
                      Node x) {
  ordered_json row;
  row["x1"] = x.x1;
  row["x2"] = x.x2;
  row["t"] = remaining(x, game.T());
  row["bid1"] = rat_str(game.bid(1, x));
  row["bid2"] = rat_str(game.bid(2, x));
  row["win1"] = rat_str(game.win_prob(1, x));
  row["u1"] = rat_str(game.utility(1, x));
  row["u2"] = rat_str(game.utility(2, x));
  row["price"] = rat_str(game.price(x));
  for (int buyer = 1; buyer <= 2; ++buyer) {
    std::string tag = std::to_string(buyer);
    row["f" + tag] = profile.f(buyer, x);
    row["mu" + tag] = rat_str(profile.mu(buyer, x));
    row["kappa" + tag] = profile.kappa(buyer, x);
    row["beta" + tag] = rat_str(profile.beta(buyer, x));
    row["p" + tag] = rat_str(profile.threshold(buyer, x));
  }
  return row;
}

ordered_json path_json(const Instance& inst, const PathRealization& path) {
  ordered_json out;
  out["probability"] = rat_str(path.probability);
  ordered_json rounds = ordered_json::array();
  for (size_t j = 0; j < path.rounds(); ++j) {
    ordered_json round;
    round["round"] = j + 1;
    round["node"] = ordered_json::array({path.nodes[j].x1, path.nodes[j].x2});
    round["winner"] = path.winners[j];
    round["price"] = rat_str(path.prices[j]);
    rounds.push_back(std::move(round));
  }
  out["rounds"] = std::move(rounds);
  out["items1"] = path.items_won(1);
  out["items2"] = path.items_won(2);
  out["utility1"] = rat_str(path.realized_utility(inst, 1));
  out["utility2"] = rat_str(path.realized_utility(inst, 2));
  out["efficiency"] = rat_str(path_efficiency(inst, path));
  return out;
}

// root-first ordering: remaining supply descending, then x1 ascending
std::vector<Node> report_order(int T) {
  std::vector<Node> order;
  order.reserve(static_cast<size_t>(node_count(T)));
  auto groups = nodes_by_remaining(T);
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    for (Node x : *it) order.push_back(x);
  }
  return order;
}

}  // namespace

ordered_json run_report(const NamedInstance& named, Mode mode,
                        const TieBreakRule& tie, size_t path_cap) {
  const Instance& inst = named.instance;
  ordered_json report;
  report["tool"] = "seqauction";
  report["instance"] = instance_json(inst, named.name);
  report["mode"] = mode_str(mode);
  report["tie"] = tie_rule_json(tie);
  report["path_cap"] = path_cap;

  SolvedGame game = solve(inst, mode, tie);
  GreedyProfile profile(inst);

  ordered_json nodes = ordered_json::array();
  for (Node x : report_order(inst.T())) {
    if (is_terminal(x, inst.T())) continue;
    nodes.push_back(node_row(game, profile, x));
  }
  report["nodes"] = std::move(nodes);

  PathSet paths = realized_paths(game, Node{0, 0}, path_cap);
  report["paths_truncated"] = paths.truncated;
  ordered_json path_rows = ordered_json::array();
  for (const PathRealization& path : paths.paths) {
    path_rows.push_back(path_json(inst, path));
  }
  report["paths"] = std::move(path_rows);

  WelfareSummary welfare = equilibrium_efficiency(inst, mode, tie, path_cap);
  ordered_json wf;
  ordered_json sw = ordered_json::array();
  for (const Rat& v : welfare.sw_per_k) sw.push_back(rat_str(v));
  wf["sw_per_k"] = std::move(sw);
  wf["opt"] = rat_str(welfare.opt);
  wf["argopt"] = ordered_json::array({welfare.argopt_lo, welfare.argopt_hi});
  wf["min_efficiency"] = rat_str(welfare.min_efficiency);
  wf["min_efficiency_decimal"] = rat_decimal(welfare.min_efficiency);
  wf["expected_efficiency"] = rat_str(welfare.expected_efficiency);
  wf["degenerate"] = welfare.degenerate;
  report["welfare"] = std::move(wf);

  ordered_json checks;
  Report declining = check_declining_prices(game, Node{0, 0}, path_cap);
  checks["declining_prices_violations"] = declining.violations.size();
  checks["deviation_violations"] = deviation_check(game).size();
  checks["recursion_mismatches"] = recursion_mismatches(game).size();
  report["checks"] = std::move(checks);
  return report;
}

ordered_json greedy_report(const NamedInstance& named) {
  const Instance& inst = named.instance;
  GreedyProfile profile(inst);
  ordered_json report;
  report["tool"] = "seqauction";
  report["instance"] = instance_json(inst, named.name);
  ordered_json nodes = ordered_json::array();
  for (Node x : report_order(inst.T())) {
    if (is_terminal(x, inst.T())) continue;
    ordered_json row;
    row["x1"] = x.x1;
    row["x2"] = x.x2;
    row["t"] = remaining(x, inst.T());
    for (int buyer = 1; buyer <= 2; ++buyer) {
      std::string tag = std::to_string(buyer);
      row["f" + tag] = profile.f(buyer, x);
      row["mu" + tag] = rat_str(profile.mu(buyer, x));
      row["kappa" + tag] = profile.kappa(buyer, x);
      row["beta" + tag] = rat_str(profile.beta(buyer, x));
      row["p" + tag] = rat_str(profile.threshold(buyer, x));
      row["bid" + tag] = rat_str(profile.bid(buyer, x));
    }
    nodes.push_back(std::move(row));
  }
  report["nodes"] = std::move(nodes);
  return report;
}

std::string lattice_dot(const SolvedGame& game, const std::string& name) {
  int T = game.T();
  // positive-probability reachability from the source marks the bold arcs;
  // the root-first ordering visits parents before children
  NodeTable<char> reachable(T);
  reachable.at(Node{0, 0}) = 1;
  std::vector<Node> order = report_order(T);
  for (Node x : order) {
    if (is_terminal(x, T) || !reachable.at(x)) continue;
    for (int winner : {1, 2}) {
      if (game.win_prob(winner, x) > 0) {
        reachable.at(child(x, winner, T)) = 1;
      }
    }
  }

  std::ostringstream out;
  out << "digraph \"" << (name.empty() ? "auction" : name) << "\" {\n";
  out << "  rankdir=TB;\n  node [shape=ellipse];\n";
  auto id = [](Node x) {
    return "n" + std::to_string(x.x1) + "_" + std::to_string(x.x2);
  };
  for (Node x : order) {
    out << "  " << id(x) << " [label=\"" << node_str(x) << "--"
        << remaining(x, T) << "\\n" << rat_str(game.utility(1, x)) << " : "
        << rat_str(game.utility(2, x)) << "\"";
    if (is_terminal(x, T)) out << " style=filled fillcolor=lightyellow";
    out << "];\n";
  }
  for (Node x : order) {
    if (is_terminal(x, T)) continue;
    for (int winner : {1, 2}) {
      Node next = child(x, winner, T);
      bool wins = game.win_prob(winner, x) > 0;
      bool realized = wins && reachable.at(x);
      out << "  " << id(x) << " -> " << id(next) << " [label=\""
          << rat_str(game.bid(winner, x)) << "\" style="
          << (wins ? "solid" : "dashed");
      if (realized) out << " penwidth=2.5";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string nodes_csv(const SolvedGame& game, const GreedyProfile& profile) {
  std::ostringstream out;
  out << "x1,x2,t,bid1,bid2,win1,u1,u2,price,"
         "f1,mu1,kappa1,beta1,p1,f2,mu2,kappa2,beta2,p2\n";
  for (Node x : report_order(game.T())) {
    if (is_terminal(x, game.T())) continue;
    out << x.x1 << ',' << x.x2 << ',' << remaining(x, game.T()) << ','
        << rat_str(game.bid(1, x)) << ',' << rat_str(game.bid(2, x)) << ','
        << rat_str(game.win_prob(1, x)) << ',' << rat_str(game.utility(1, x))
        << ',' << rat_str(game.utility(2, x)) << ',' << rat_str(game.price(x));
    for (int buyer = 1; buyer <= 2; ++buyer) {
      out << ',' << profile.f(buyer, x) << ',' << rat_str(profile.mu(buyer, x))
          << ',' << profile.kappa(buyer, x) << ','
          << rat_str(profile.beta(buyer, x)) << ','
          << rat_str(profile.threshold(buyer, x));
    }
    out << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const SolvedGame& game, size_t path_cap) {
  std::ostringstream out;
  out << "path,round,x1,x2,winner,price,probability\n";
  PathSet paths = realized_paths(game, Node{0, 0}, path_cap);
  for (size_t p = 0; p < paths.paths.size(); ++p) {
    const PathRealization& path = paths.paths[p];
    for (size_t j = 0; j < path.rounds(); ++j) {
      out << p + 1 << ',' << j + 1 << ',' << path.nodes[j].x1 << ','
          << path.nodes[j].x2 << ',' << path.winners[j] << ','
          << rat_str(path.prices[j]) << ',' << rat_str(path.probability)
          << '\n';
    }
  }
  if (paths.truncated) out << "# path enumeration truncated at cap\n";
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace seqauction
