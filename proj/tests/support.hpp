#pragma once

// Shared by the unit tests and the acceptance binary: formula families,
// generators and definition-level reference implementations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fotw/all.hpp"

namespace fotw::testkit {

inline std::string fixture_path(const std::string& name) {
  return std::string(FOTW_FIXTURE_DIR) + "/" + name;
}

inline Formula fixture_formula(const std::string& name) {
  return normalize_formula(parse_formula(read_file(fixture_path(name + ".fo"))));
}

inline std::string var_list(const std::string& stem, int n) {
  std::string out;
  for (int i = 1; i <= n; ++i) out += (i > 1 ? " " : "") + stem + std::to_string(i);
  return out;
}

// exists x1..xn. forall y. AND_i E(xi,y)
inline Formula star_formula(int n) {
  std::string body;
  for (int i = 1; i <= n; ++i) body += (i > 1 ? " & " : "") + ("E(x" + std::to_string(i) + ",y)");
  return parse_formula("exists " + var_list("x", n) + ". forall y. (" + body + ")");
}

// exists x1..xn. forall y. exists z. (AND_i R(xi,z) & P(y)); prenex, a conjunction of atoms.
inline Formula reorder_phi(int n) {
  std::string body;
  for (int i = 1; i <= n; ++i) body += "R(x" + std::to_string(i) + ",z) & ";
  return parse_formula("exists " + var_list("x", n) + ". forall y. exists z. (" + body + "P(y))");
}

// Same prefix, matrix AND_i (R(xi,z) & P(y)).
inline Formula reorder_psi(int n) {
  std::string body;
  for (int i = 1; i <= n; ++i) {
    body += (i > 1 ? " & " : "") + ("(R(x" + std::to_string(i) + ",z) & P(y))");
  }
  return parse_formula("exists " + var_list("x", n) + ". forall y. exists z. (" + body + ")");
}

inline int ew_ad_prime(const Formula& f) {
  return stratified_treewidth(stratify(f, compute_ad_prime(f))).width;
}

// Depths are rank-compressed, so the result is normalized.
template <class Rng>
StratifiedGraph random_normalized_graph(Rng& rng, int n, double p, int max_depth) {
  return normalize(random_stratified_graph(rng, n, p, max_depth)).sg;
}

// Edge {x,y} of G^(i): a path in G whose internal vertices all have depth
// above max(i, d(x), d(y)).
inline Graph literal_level_graph(const StratifiedGraph& sg, int i) {
  const Graph& g = sg.graph;
  std::size_t n = g.size();
  Graph out(g.names());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      int bar = std::max({i, sg.depth[x], sg.depth[y]});
      std::vector<char> seen(n, 0);
      std::vector<int> stack{static_cast<int>(x)};
      seen[x] = 1;
      bool linked = false;
      while (!stack.empty() && !linked) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbours(v)) {
          if (u == static_cast<int>(y)) {
            linked = true;
            break;
          }
          if (!seen[u] && sg.depth[u] > bar) {
            seen[u] = 1;
            stack.push_back(u);
          }
        }
      }
      if (linked) out.add_edge(static_cast<int>(x), static_cast<int>(y));
    }
  }
  return out;
}

struct ReferenceNode {
  int parent = -1;
  int level = 0;
  std::vector<int> C;
  std::vector<int> D;
  std::vector<int> D1;
  std::vector<int> D2;
};

// The component tree exactly as defined: C_root = V, D_t = C_t restricted to
// depths <= level, one child per component C of G[C_t \ D_t] with C_child = C + N(C).
inline std::vector<ReferenceNode> reference_component_tree(const StratifiedGraph& sg) {
  const Graph& g = sg.graph;
  std::size_t n = g.size();
  std::vector<ReferenceNode> nodes(1);
  for (std::size_t v = 0; v < n; ++v) nodes[0].C.push_back(static_cast<int>(v));
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    int lvl = nodes[t].level;
    std::vector<int> rest;
    for (int v : nodes[t].C) {
      if (sg.depth[v] <= lvl) {
        nodes[t].D.push_back(v);
        (sg.depth[v] == lvl ? nodes[t].D1 : nodes[t].D2).push_back(v);
      } else {
        rest.push_back(v);
      }
    }
    std::vector<char> done(n, 0);
    for (int s : rest) {
      if (done[s]) continue;
      std::set<int> comp{s};
      std::vector<int> stack{s};
      done[s] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbours(v)) {
          if (!done[u] && std::binary_search(rest.begin(), rest.end(), u)) {
            done[u] = 1;
            comp.insert(u);
            stack.push_back(u);
          }
        }
      }
      std::set<int> closed = comp;
      for (int v : comp) {
        for (int u : g.neighbours(v)) closed.insert(u);
      }
      ReferenceNode child;
      child.parent = static_cast<int>(t);
      child.level = lvl + 1;
      child.C.assign(closed.begin(), closed.end());
      nodes.push_back(std::move(child));
    }
  }
  return nodes;
}

// One comparable record per node of a modified component tree.
struct TreeRecord {
  int level;
  std::vector<int> D;
  std::vector<int> D1;
  std::vector<int> D2;
  int dropped;
  int parent_level;
  std::vector<int> parent_D1;
  std::set<std::pair<int, int>> edges;  // support of G^(level-1)[D]; G^(0)[D] at the root
  friend auto operator<=>(const TreeRecord&, const TreeRecord&) = default;
};

inline std::set<std::pair<int, int>> induced_edges(const Graph& g, const std::vector<int>& D) {
  std::set<std::pair<int, int>> out;
  for (std::size_t a = 0; a < D.size(); ++a) {
    for (std::size_t b = a + 1; b < D.size(); ++b) {
      if (g.adjacent(D[a], D[b])) out.emplace(D[a], D[b]);
    }
  }
  return out;
}

// Reference: drop every non-root node with empty D1, reattach to the nearest
// kept ancestor and count the dropped nodes in between.
inline std::vector<TreeRecord> reference_modified_records(const StratifiedGraph& sg) {
  auto nodes = reference_component_tree(sg);
  std::vector<TreeRecord> out;
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    const auto& nd = nodes[t];
    if (t > 0 && nd.D1.empty()) continue;
    int dropped = 0;
    int p = nd.parent;
    while (p > 0 && nodes[p].D1.empty()) {
      ++dropped;
      p = nodes[p].parent;
    }
    Graph level = literal_level_graph(sg, std::max(nd.level - 1, 0));
    TreeRecord r{nd.level, nd.D, nd.D1, nd.D2, dropped,
                 p < 0 ? -1 : nodes[p].level, p < 0 ? std::vector<int>{} : nodes[p].D1,
                 induced_edges(level, nd.D)};
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<TreeRecord> modified_records(const ComponentTree& ct) {
  std::vector<TreeRecord> out;
  for (const auto& nd : ct.nodes) {
    std::set<std::pair<int, int>> edges;
    for (const auto& [e, mult] : nd.edges) {
      if (mult > 0) edges.insert(e);
    }
    const ComponentTreeNode* par = nd.parent < 0 ? nullptr : &ct.nodes[nd.parent];
    out.push_back({nd.level, nd.D, nd.D1, nd.D2, nd.dropped, par ? par->level : -1,
                   par ? par->D1 : std::vector<int>{}, std::move(edges)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every d-respecting decomposition width by brute force over orderings, and
// round-trips through the two conversions.
struct WidthOracle {
  int brute = -1;
  int stratified = -1;
  bool decomposition_valid = false;
  int ordering_width_after = -1;     // decomposition -> ordering
  int decomposition_width_after = -1;  // ... -> decomposition
  bool ok() const {
    return brute == stratified && decomposition_valid && ordering_width_after == brute &&
           decomposition_width_after == brute;
  }
};

inline WidthOracle width_oracle(const StratifiedGraph& sg) {
  WidthOracle w;
  w.brute = brute_force_tw(sg);
  auto res = stratified_treewidth(sg);
  w.stratified = res.width;
  w.decomposition_valid = check_decomposition(sg, res.td).ok;
  if (!w.decomposition_valid) return w;
  auto ord = decomposition_to_ordering(sg, res.td);
  w.ordering_width_after = ordering_width(sg, ord);
  auto back = ordering_to_decomposition(sg, ord);
  w.decomposition_width_after = check_decomposition(sg, back).ok ? back.width() : -2;
  return w;
}

// Quantified variable count, used to bound generator output.
inline int bound_count(const Formula& f) {
  int c = 0;
  for_each_node(f, [&](const Formula& g, const NodePath&) { c += g.is_quantifier() ? 1 : 0; });
  return c;
}

inline std::mt19937_64 seeded(std::uint64_t stream, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(i),
                    static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace fotw::testkit
