#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/formula.hpp"

namespace fotw {

// Simple undirected graph on vertices 0..n-1 with optional names.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n, std::vector<char>(n, 0)) {
    for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  }
  explicit Graph(std::vector<std::string> names)
      : names_(std::move(names)), adj_(names_.size(), std::vector<char>(names_.size(), 0)) {}

  std::size_t size() const { return adj_.size(); }

  int add_vertex(std::string name) {
    names_.push_back(std::move(name));
    for (auto& row : adj_) row.push_back(0);
    adj_.emplace_back(names_.size(), 0);
    return static_cast<int>(names_.size()) - 1;
  }

  void add_edge(int u, int v) {
    if (u == v) return;
    adj_.at(u).at(v) = 1;
    adj_.at(v).at(u) = 1;
  }

  void remove_edge(int u, int v) {
    adj_.at(u).at(v) = 0;
    adj_.at(v).at(u) = 0;
  }

  bool adjacent(int u, int v) const { return adj_[u][v] != 0; }

  std::vector<int> neighbours(int v) const {
    std::vector<int> out;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (adj_[v][u]) out.push_back(static_cast<int>(u));
    }
    return out;
  }

  std::size_t degree(int v) const {
    return static_cast<std::size_t>(std::count(adj_[v].begin(), adj_[v].end(), 1));
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      for (std::size_t v = u + 1; v < adj_.size(); ++v) {
        if (adj_[u][v]) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
      }
    }
    return out;
  }

  std::size_t edge_count() const { return edges().size(); }

  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  int index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw DomainError("unknown vertex " + name);
    return static_cast<int>(it - names_.begin());
  }

  // Induced subgraph on `keep` (in the given order); names carried over.
  Graph induced(const std::vector<int>& keep) const {
    std::vector<std::string> nm;
    for (int v : keep) nm.push_back(names_[v]);
    Graph g(std::move(nm));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (std::size_t j = i + 1; j < keep.size(); ++j) {
        if (adjacent(keep[i], keep[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
    return g;
  }

  // Connected components of the subgraph induced by `within` (all vertices when empty).
  std::vector<std::vector<int>> components(const std::vector<char>& within = {}) const {
    std::size_t n = size();
    auto in = [&](std::size_t v) { return within.empty() || within[v]; };
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s] || !in(s)) continue;
      std::vector<int> comp;
      std::vector<int> stack{static_cast<int>(s)};
      seen[s] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (std::size_t u = 0; u < n; ++u) {
          if (adj_[v][u] && !seen[u] && in(u)) {
            seen[u] = 1;
            stack.push_back(static_cast<int>(u));
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.names_ == b.names_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<char>> adj_;
};

// A graph with a depth function d: V -> N.
struct StratifiedGraph {
  Graph graph;
  std::vector<int> depth;

  std::size_t size() const { return graph.size(); }
  int max_depth() const {
    int m = -1;
    for (int d : depth) m = std::max(m, d);
    return m;
  }
};

// G_phi: vertices var(f) in lexicographic order; edges between free variables and
// between variables sharing an atom. A formula without variables yields the empty graph.
inline Graph formula_graph(const Formula& f) {
  auto vars = variables(f);
  std::vector<std::string> names(vars.begin(), vars.end());
  Graph g(names);
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
  auto clique = [&](const std::set<std::string>& s) {
    for (const auto& a : s) {
      for (const auto& b : s) {
        if (a < b) g.add_edge(idx.at(a), idx.at(b));
      }
    }
  };
  clique(free_variables(f));
  for_each_node(f, [&](const Formula& h, const NodePath&) {
    if (h.is_literal()) clique(atom_variables(h));
  });
  return g;
}

}  // namespace fotw
