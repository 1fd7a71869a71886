#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fotw/all.hpp"
#include "selftest.hpp"
#include "verify.hpp"

#ifndef FOTW_FIXTURE_DIR
#define FOTW_FIXTURE_DIR "fixtures"
#endif

namespace fotw::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;  // sentence evaluated to FALSE, or failed checks
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

namespace detail {

inline std::string quant_name(const OrderAnalysis& a, int v) {
  if (!a.index->bound[v]) return "free";
  return a.index->quant[v] == Quant::Exists ? "exists" : "forall";
}

inline json decomposition_json(const Graph& g, const TreeDecomposition& td, int width) {
  json nodes = json::array();
  for (int v : td.preorder()) {
    std::vector<std::string> bag;
    for (int x : td.bags[v]) bag.push_back(g.name(x));
    nodes.push_back({{"id", v}, {"parent", td.parent[v] < 0 ? json(nullptr) : json(td.parent[v])},
                     {"bag", bag}});
  }
  return {{"width", width}, {"nodes", nodes}};
}

inline json named_tree_json(const NamedTree& t) {
  json nodes = json::array();
  for (std::size_t v = 0; v < t.size(); ++v) {
    nodes.push_back({{"id", v}, {"parent", t.parent[v] < 0 ? json(nullptr) : json(t.parent[v])},
                     {"bag", t.bags[v]}});
  }
  return nodes;
}

inline std::string named_tree_text(const NamedTree& t) {
  std::ostringstream os;
  for (std::size_t v = 0; v < t.size(); ++v) {
    os << "  node " << v << " parent ";
    if (t.parent[v] < 0) {
      os << '-';
    } else {
      os << t.parent[v];
    }
    os << " bag {";
    for (std::size_t i = 0; i < t.bags[v].size(); ++i) os << (i ? "," : "") << t.bags[v][i];
    os << "}\n";
  }
  return os.str();
}

inline std::string pair_list(const std::vector<std::pair<std::string, std::string>>& ps,
                             const char* sep) {
  if (ps.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out += (i ? ", " : "") + ps[i].first + sep + ps[i].second;
  }
  return out;
}

struct Decomposed {
  Graph graph;
  TreeDecomposition td;
  int width = -1;
};

inline Decomposed decompose_input(const std::string& path, bool graph_input) {
  if (graph_input) {
    auto sg = parse_graph(read_file(path));
    auto res = stratified_treewidth(sg);
    return {sg.graph, std::move(res.td), res.width};
  }
  auto d = fotw_decomposition(load_formula(path));
  return {d.sg.graph, std::move(d.td), d.width};
}

}  // namespace detail

inline int cmd_analyze(const std::string& path, bool as_json, std::ostream& out) {
  Formula f = load_formula(path);
  auto a = compute_preceq(f);
  auto ad = compute_ad(f);
  std::vector<std::pair<std::string, std::string>> prec;
  std::vector<std::pair<std::string, std::string>> ent;
  for (auto& p : a.pairs(a.preceq)) {
    if (p.first != p.second) prec.push_back(p);
  }
  for (auto& p : a.pairs(a.entangled)) {
    if (p.first < p.second) ent.push_back(p);
  }
  if (as_json) {
    json vars = json::array();
    for (std::size_t v = 0; v < a.vars().size(); ++v) {
      const auto& x = a.vars()[v];
      vars.push_back({{"name", x}, {"quantifier", detail::quant_name(a, static_cast<int>(v))},
                      {"ead", a.ead[v]}, {"ad", ad.at(x)}});
    }
    out << json{{"formula", render(f)}, {"preceq", prec}, {"entangled", ent}, {"variables", vars}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "formula    " << render(f) << '\n';
  out << "preceq     " << detail::pair_list(prec, " < ") << '\n';
  out << "entangled  " << detail::pair_list(ent, " ~ ") << '\n';
  std::size_t wide = 8;
  for (const auto& x : a.vars()) wide = std::max(wide, x.size());
  out << '\n' << std::left << std::setw(static_cast<int>(wide) + 2) << "variable" << std::setw(12)
      << "quantifier" << std::setw(5) << "ead" << "ad\n";
  for (std::size_t v = 0; v < a.vars().size(); ++v) {
    const auto& x = a.vars()[v];
    out << std::setw(static_cast<int>(wide) + 2) << x << std::setw(12)
        << detail::quant_name(a, static_cast<int>(v)) << std::setw(5) << a.ead[v] << ad.at(x) << '\n';
  }
  return kExitOk;
}

inline int cmd_xenerp(const std::string& path, bool as_json, std::ostream& out) {
  Formula f = load_formula(path);
  Formula g = to_xenerp(f);
  if (as_json) {
    out << json{{"input", render(f)}, {"output", render(g)}, {"changed", !(f == g)}}.dump(2) << '\n';
  } else {
    out << render(g) << '\n';
  }
  return kExitOk;
}

inline int cmd_width(const std::string& path, bool graph_input, bool as_json, std::ostream& out) {
  int w = detail::decompose_input(path, graph_input).width;
  if (as_json) {
    out << json{{"width", w}}.dump() << '\n';
  } else {
    out << w << '\n';
  }
  return kExitOk;
}

inline int cmd_decompose(const std::string& path, bool graph_input, bool dot, bool as_json,
                         std::ostream& out) {
  auto d = detail::decompose_input(path, graph_input);
  if (as_json) {
    out << detail::decomposition_json(d.graph, d.td, d.width).dump(2) << '\n';
  } else if (dot) {
    out << decomposition_dot(d.graph, d.td);
  } else {
    out << decomposition_text(d.graph, d.td, d.width);
  }
  return kExitOk;
}

inline int cmd_translate(const std::string& path, int k, bool show_steps, bool keep_names,
                         bool as_json, std::ostream& out) {
  Formula f = load_formula(path);
  auto d = fotw_decomposition(f);
  if (k < 0) k = std::max(d.width + 1, 1);
  auto tr = translate(f, d, k, show_steps || as_json);
  Formula result = keep_names ? tr.result : rename_to_k_vars(tr.result, k);
  if (as_json) {
    json steps = json::array();
    for (const auto& s : tr.steps) {
      steps.push_back({{"case", s.kind}, {"variable", s.variable}, {"note", s.note},
                       {"formula", render(s.formula)}, {"tree", detail::named_tree_json(s.tree)}});
    }
    json aux = json::array();
    for (const auto& a : tr.aux) {
      aux.push_back({{"symbol", a.symbol}, {"args", a.args}, {"definition", render(a.definition)}});
    }
    out << json{{"k", k}, {"fotw", d.width}, {"result", render(result)}, {"aux", aux}, {"steps", steps}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  if (show_steps) {
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
      const auto& s = tr.steps[i];
      out << "step " << i + 1 << ": case " << s.kind;
      if (!s.variable.empty()) out << " on " << s.variable;
      if (!s.note.empty()) out << " (" << s.note << ")";
      out << "\n  " << render(s.formula) << '\n' << detail::named_tree_text(s.tree);
    }
    for (const auto& a : tr.aux) {
      out << "aux " << a.symbol << "(";
      for (std::size_t i = 0; i < a.args.size(); ++i) out << (i ? "," : "") << a.args[i];
      out << ") := " << render(a.definition) << '\n';
    }
    out << "result (k = " << k << "):\n";
  }
  out << render(result) << '\n';
  return kExitOk;
}

inline int cmd_eval(const std::string& path, const std::string& structure_path, bool naive,
                    bool as_json, std::ostream& out) {
  Formula f = parse_formula(read_file(path));
  Structure s = parse_structure(read_file(structure_path));
  Relation r = naive ? eval_naive(f, s) : evaluate(f, s);
  if (as_json) {
    json rows = json::array();
    for (const auto& t : r.tuples) {
      std::vector<std::string> row;
      for (int e : t) row.push_back(s.universe[e]);
      rows.push_back(row);
    }
    json j{{"schema", r.schema}, {"tuples", rows}};
    if (r.schema.empty()) j["value"] = r.truth();
    out << j.dump(2) << '\n';
  } else {
    out << r.to_text(s);
  }
  if (r.schema.empty() && !r.truth()) return kExitFalse;
  return kExitOk;
}

inline int cmd_game(const std::string& path, int k, bool monotone, bool strategy, bool as_json,
                    std::ostream& out) {
  auto sg = parse_graph(read_file(path));
  auto res = cops_win(sg, k, monotone);
  const Graph& g = sg.graph;
  if (as_json) {
    json table = json::array();
    if (strategy) {
      for (const auto& [st, y] : res.strategy) {
        table.push_back({{"cops", vertex_set_names(g, st.cops)},
                         {"robber", vertex_set_names(g, st.robber)},
                         {"move", vertex_set_names(g, y)}});
      }
    }
    json j{{"k", k}, {"monotone", monotone}, {"result", res.cops_win ? "WIN" : "LOSE"}};
    if (strategy) j["strategy"] = table;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << (res.cops_win ? "WIN" : "LOSE") << '\n';
  if (strategy && res.cops_win) {
    for (const auto& [st, y] : res.strategy) {
      out << "cops " << vertex_set_names(g, st.cops) << " robber " << vertex_set_names(g, st.robber)
          << " -> " << vertex_set_names(g, y) << '\n';
    }
  }
  return kExitOk;
}

inline int cmd_verify(std::uint64_t seed, int count, const std::string& suite, unsigned threads,
                      bool as_json, std::ostream& out) {
  if (count < 0) throw DomainError("verify: --count must be non-negative");
  auto names = suite_names();
  if (!suite.empty() && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw DomainError("verify: unknown suite " + suite);
  }
  auto reports = run_verify(seed, count, suite, threads);
  bool clean = true;
  json j = json::array();
  for (const auto& r : reports) {
    clean = clean && r.failures.empty();
    if (as_json) {
      json fails = json::array();
      for (const auto& [i, what] : r.failures) fails.push_back({{"instance", i}, {"detail", what}});
      j.push_back({{"suite", r.name}, {"instances", r.instances}, {"failures", fails}});
      continue;
    }
    out << r.name << ": " << r.instances << " instances, " << r.failures.size() << " failures\n";
    for (const auto& [i, what] : r.failures) out << "  instance " << i << ": " << what << '\n';
  }
  if (as_json) out << json{{"seed", seed}, {"suites", j}}.dump(2) << '\n';
  return clean ? kExitOk : kExitFalse;
}

inline int cmd_selftest(const std::string& dir, bool as_json, std::ostream& out) {
  auto checks = run_selftest(dir);
  int failed = 0;
  json j = json::array();
  for (const auto& c : checks) {
    if (!c.ok) ++failed;
    if (as_json) {
      j.push_back({{"fixture", c.fixture}, {"key", c.key}, {"ok", c.ok},
                   {"expected", json::parse(c.expected)}, {"actual", json::parse(c.actual)}});
      continue;
    }
    out << (c.ok ? "PASS " : "FAIL ") << c.fixture << ' ' << c.key;
    if (!c.ok) out << ": expected " << c.expected << ", got " << c.actual;
    out << '\n';
  }
  if (as_json) {
    out << json{{"checks", j}, {"failed", failed}}.dump(2) << '\n';
  } else {
    out << checks.size() - failed << '/' << checks.size() << " checks passed\n";
  }
  return failed == 0 ? kExitOk : kExitFalse;
}

// Argument vector without the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-order tree-width toolkit", "fotw"};
  app.require_subcommand(1);

  std::string file;
  std::string structure;
  std::string suite;
  std::string fixtures = FOTW_FIXTURE_DIR;
  bool as_json = false;
  bool graph_input = false;
  bool dot = false;
  bool show_steps = false;
  bool keep_names = false;
  bool naive = false;
  bool monotone = false;
  bool strategy = false;
  int k = -1;
  int count = 25;
  std::uint64_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto common = [&](CLI::App* sub, const char* what) {
    sub->add_flag("--json", as_json, "machine-readable output");
    if (what) sub->add_option("file", file, what)->required();
  };

  auto* analyze = app.add_subcommand("analyze", "preceq, entanglement, ead and ad of a formula");
  common(analyze, "formula file");
  auto* xenerp = app.add_subcommand("xenerp", "rewrite a formula into xenerp form");
  common(xenerp, "formula file");
  auto* width = app.add_subcommand("width", "first-order tree-width (or stratified tree-width with --graph)");
  common(width, "formula or graph file");
  width->add_flag("--graph", graph_input, "input is a stratified graph");
  auto* decompose = app.add_subcommand("decompose", "optimal stratified tree decomposition");
  common(decompose, "formula or graph file");
  decompose->add_flag("--graph", graph_input, "input is a stratified graph");
  decompose->add_flag("--dot", dot, "emit Graphviz DOT");
  auto* tr = app.add_subcommand("translate", "equivalent formula with at most k variables");
  common(tr, "formula file");
  tr->add_option("--k", k, "number of variables (default: fotw + 1)")->check(CLI::PositiveNumber);
  tr->add_flag("--show-steps", show_steps, "print every elimination step");
  tr->add_flag("--keep-names", keep_names, "skip renaming to k variable names");
  auto* ev = app.add_subcommand("eval", "evaluate a formula on a finite structure");
  common(ev, "formula file");
  ev->add_option("--structure", structure, "structure file")->required();
  ev->add_flag("--naive", naive, "direct Tarski semantics instead of the bounded-width pipeline");
  auto* game = app.add_subcommand("game", "stratified cops-and-robber game with k cops");
  common(game, "graph file");
  game->add_option("--k", k, "number of cops")->required()->check(CLI::NonNegativeNumber);
  game->add_flag("--monotone", monotone, "robber space may only shrink");
  game->add_flag("--strategy", strategy, "print the winning strategy table");
  auto* verify = app.add_subcommand("verify", "randomized property suites");
  common(verify, nullptr);
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--count", count, "instances per suite");
  verify->add_option("--suite", suite, "run one suite only")->check(CLI::IsMember(suite_names()));
  verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  auto* selftest = app.add_subcommand("selftest", "check the fixture table");
  common(selftest, nullptr);
  selftest->add_option("--fixtures", fixtures, "fixture directory");

  if (!args.empty() && !args.front().starts_with("-") && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "fotw: unknown subcommand " << args.front() << "\nRun with --help for more information.\n";
    return kExitUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(file, as_json, out);
    if (xenerp->parsed()) return cmd_xenerp(file, as_json, out);
    if (width->parsed()) return cmd_width(file, graph_input, as_json, out);
    if (decompose->parsed()) return cmd_decompose(file, graph_input, dot, as_json, out);
    if (tr->parsed()) return cmd_translate(file, k, show_steps, keep_names, as_json, out);
    if (ev->parsed()) return cmd_eval(file, structure, naive, as_json, out);
    if (game->parsed()) return cmd_game(file, k, monotone, strategy, as_json, out);
    if (verify->parsed()) return cmd_verify(seed, count, suite, threads, as_json, out);
    if (selftest->parsed()) return cmd_selftest(fixtures, as_json, out);
  } catch (const Error& e) {
    err << "fotw: " << e.what() << '\n';
    return kExitDomain;
  } catch (const json::exception& e) {
    err << "fotw: malformed JSON: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace fotw::cli
