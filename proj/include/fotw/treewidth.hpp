#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fotw/component_tree.hpp"
#include "fotw/decomposition.hpp"
#include "fotw/error.hpp"
#include "fotw/graph.hpp"

namespace fotw {

struct WidthResult {
  int width = -1;
  TreeDecomposition td;
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }

struct MaskGraph {
  int n = 0;
  std::vector<Mask> adj;

  explicit MaskGraph(const Graph& g) : n(static_cast<int>(g.size())), adj(g.size(), 0) {
    if (g.size() > 64) throw DomainError("exact treewidth: piece has more than 64 vertices");
    for (auto [u, v] : g.edges()) {
      adj[u] |= bit(v);
      adj[v] |= bit(u);
    }
  }

  // Vertices outside S + v reachable from v through S: deg(v) after eliminating S.
  Mask reach(Mask s, int v) const {
    Mask seen = bit(v);
    Mask out = 0;
    Mask frontier = adj[v];
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      if (seen & bit(u)) continue;
      seen |= bit(u);
      if (s & bit(u)) {
        frontier |= adj[u] & ~seen;
      } else {
        out |= bit(u);
      }
    }
    return out;
  }
};

// Greedy elimination (min fill-in, then min degree, then lowest id). Returns the
// elimination sequence (first eliminated first) and its width.
inline std::pair<std::vector<int>, int> greedy_elimination(const MaskGraph& mg) {
  std::vector<Mask> adj = mg.adj;
  Mask alive = mg.n == 64 ? ~Mask{0} : (bit(mg.n) - 1);
  std::vector<int> seq;
  int width = -1;
  while (alive) {
    int best = -1;
    long bestFill = 0;
    int bestDeg = 0;
    for (Mask a = alive; a;) {
      int v = std::countr_zero(a);
      a &= a - 1;
      Mask nb = adj[v] & alive;
      long fill = 0;
      for (Mask b = nb; b;) {
        int u = std::countr_zero(b);
        b &= b - 1;
        fill += std::popcount(nb & ~adj[u] & ~bit(u));
      }
      int deg = std::popcount(nb);
      if (best < 0 || fill < bestFill || (fill == bestFill && deg < bestDeg)) {
        best = v;
        bestFill = fill;
        bestDeg = deg;
      }
    }
    Mask nb = adj[best] & alive;
    width = std::max(width, std::popcount(nb));
    for (Mask b = nb; b;) {
      int u = std::countr_zero(b);
      b &= b - 1;
      adj[u] |= nb & ~bit(u);
    }
    alive &= ~bit(best);
    seq.push_back(best);
  }
  return {seq, width};
}

// Degeneracy: a lower bound on treewidth.
inline int degeneracy(const MaskGraph& mg) {
  Mask alive = mg.n == 64 ? ~Mask{0} : (bit(mg.n) - 1);
  int lb = mg.n > 0 ? 0 : -1;
  while (alive) {
    int best = -1;
    int bestDeg = 0;
    for (Mask a = alive; a;) {
      int v = std::countr_zero(a);
      a &= a - 1;
      int d = std::popcount(mg.adj[v] & alive);
      if (best < 0 || d < bestDeg) {
        best = v;
        bestDeg = d;
      }
    }
    lb = std::max(lb, bestDeg);
    alive &= ~bit(best);
  }
  return lb;
}

}  // namespace detail

// Exact treewidth by dynamic programming over eliminated vertex sets, pruned by a
// greedy upper bound. Returns the width and an optimal ordering (v_1..v_n).
inline std::pair<int, EliminationOrdering> exact_treewidth(const Graph& g) {
  using detail::Mask;
  detail::MaskGraph mg(g);
  int n = mg.n;
  if (n == 0) return {-1, {}};
  auto [seq, ub] = detail::greedy_elimination(mg);
  auto finish = [](std::vector<int> s) {
    std::reverse(s.begin(), s.end());
    return s;
  };
  if (detail::degeneracy(mg) >= ub) return {ub, finish(seq)};

  struct Entry {
    int value;
    int last;
  };
  std::vector<std::unordered_map<Mask, Entry>> layers(1);
  layers[0][0] = {-1, -1};
  auto rebuild = [&](Mask s, std::size_t k) {
    std::vector<int> order;
    while (k > 0) {
      int v = layers[k].at(s).last;
      order.push_back(v);
      s &= ~detail::bit(v);
      --k;
    }
    std::reverse(order.begin(), order.end());
    return order;
  };
  Mask full = n == 64 ? ~Mask{0} : (detail::bit(n) - 1);
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    std::unordered_map<Mask, Entry> next;
    for (const auto& [s, e] : layers[k]) {
      int remaining = n - static_cast<int>(k);
      // Any completion costs at most remaining - 1.
      if (std::max(e.value, remaining - 1) < ub) {
        ub = std::max(e.value, remaining - 1);
        seq = rebuild(s, k);
        for (Mask r = full & ~s; r;) {
          int v = std::countr_zero(r);
          r &= r - 1;
          seq.push_back(v);
        }
      }
      for (Mask r = full & ~s; r;) {
        int v = std::countr_zero(r);
        r &= r - 1;
        int q = std::popcount(mg.reach(s, v));
        int nv = std::max(e.value, q);
        if (nv >= ub) continue;
        Mask t = s | detail::bit(v);
        auto it = next.find(t);
        if (it == next.end() || nv < it->second.value) next[t] = {nv, v};
      }
    }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  return {ub, finish(seq)};
}

// Minimum-width (plain) tree decomposition of g, made small.
inline WidthResult exact_decomposition(const Graph& g) {
  auto [w, ord] = exact_treewidth(g);
  StratifiedGraph sg{g, std::vector<int>(g.size(), 0)};
  return {w, make_small(ordering_to_decomposition(sg, ord))};
}

namespace detail {

// Re-roots a tree decomposition at node r.
inline TreeDecomposition reroot(const TreeDecomposition& td, int r) {
  std::vector<std::vector<int>> nb(td.size());
  for (std::size_t i = 0; i < td.size(); ++i) {
    if (td.parent[i] >= 0) {
      nb[i].push_back(td.parent[i]);
      nb[td.parent[i]].push_back(static_cast<int>(i));
    }
  }
  TreeDecomposition out = td;
  std::vector<char> seen(td.size(), 0);
  std::vector<int> stack{r};
  seen[r] = 1;
  out.parent[r] = -1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : nb[v]) {
      if (seen[u]) continue;
      seen[u] = 1;
      out.parent[u] = v;
      stack.push_back(u);
    }
  }
  return out;
}

inline std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline int first_holding(const TreeDecomposition& td, const std::vector<int>& s) {
  for (int v : td.preorder()) {
    if (subset(s, td.bags[v])) return v;
  }
  return -1;
}

}  // namespace detail

// Minimum-width d-stratified tree decomposition: component tree, exact per-node
// decompositions of G^(0)[D_t], connectors on D_t and D_u, gluing from the root.
inline WidthResult stratified_treewidth(const StratifiedGraph& input) {
  if (input.size() == 0) return {-1, TreeDecomposition::single({})};
  auto norm = normalize(input);
  const StratifiedGraph& sg = norm.sg;
  ComponentTree ct = component_tree(sg, true);

  std::vector<TreeDecomposition> piece(ct.nodes.size());
  int width = -1;
  for (std::size_t t = 0; t < ct.nodes.size(); ++t) {
    const auto& D = ct.nodes[t].D;
    auto local = exact_decomposition(ct.g0.induced(D));
    for (auto& bag : local.td.bags) {
      for (auto& v : bag) v = D[v];
      std::sort(bag.begin(), bag.end());
    }
    width = std::max(width, local.width);
    piece[t] = std::move(local.td);
  }

  TreeDecomposition out;
  auto ch = ct.children();
  // offset[t]: index of piece t's node 0 in `out`.
  std::vector<int> offset(ct.nodes.size(), -1);
  auto append = [&](const TreeDecomposition& p, int attachTo) {
    int base = static_cast<int>(out.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      int par = p.parent[i] < 0 ? attachTo : base + p.parent[i];
      out.parent.push_back(par);
      out.bags.push_back(p.bags[i]);
    }
    return base;
  };
  offset[0] = append(piece[0], -1);
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int t = queue[q];
    for (int u : ch[t]) {
      auto shared = detail::intersect(ct.nodes[t].D, ct.nodes[u].D);
      int xt = detail::first_holding(piece[t], shared);
      int xu = detail::first_holding(piece[u], shared);
      if (xt < 0 || xu < 0) throw Error("stratified_treewidth: no connector bag for D_t and D_u");
      piece[u] = detail::reroot(piece[u], xu);
      offset[u] = append(piece[u], offset[t] + xt);
      queue.push_back(u);
    }
  }
  out = simplify(std::move(out));
  return {width, std::move(out)};
}

// Plain treewidth (d constant).
inline WidthResult treewidth(const Graph& g) {
  return stratified_treewidth(StratifiedGraph{g, std::vector<int>(g.size(), 0)});
}

}  // namespace fotw
