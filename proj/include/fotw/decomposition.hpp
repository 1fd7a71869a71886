#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/graph.hpp"

namespace fotw {

// Rooted tree of bags over the vertices of some graph.
struct TreeDecomposition {
  std::vector<int> parent;  // -1 at the root
  std::vector<std::vector<int>> bags;

  std::size_t size() const { return bags.size(); }

  int add_node(int par, std::vector<int> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    parent.push_back(par);
    bags.push_back(std::move(bag));
    return static_cast<int>(bags.size()) - 1;
  }

  int root() const {
    for (std::size_t i = 0; i < parent.size(); ++i) {
      if (parent[i] < 0) return static_cast<int>(i);
    }
    return -1;
  }

  int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }

  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(size());
    for (std::size_t i = 0; i < size(); ++i) {
      if (parent[i] >= 0) ch[parent[i]].push_back(static_cast<int>(i));
    }
    return ch;
  }

  bool ancestor(int a, int b) const {  // a is a proper ancestor of b
    for (int c = parent[b]; c >= 0; c = parent[c]) {
      if (c == a) return true;
    }
    return false;
  }

  // Nodes in depth-first preorder from the root (children in index order).
  std::vector<int> preorder() const {
    std::vector<int> out;
    auto ch = children();
    int r = root();
    if (r < 0) return out;
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out.push_back(v);
      for (auto it = ch[v].rbegin(); it != ch[v].rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  // Removes node v, attaching its children to `heir`; the heir must be adjacent to v.
  void contract(int v, int heir) {
    if (parent[heir] == v) parent[heir] = parent[v];
    for (auto& p : parent) {
      if (p == v) p = heir;
    }
    erase(v);
  }

  void erase(int v) {
    parent.erase(parent.begin() + v);
    bags.erase(bags.begin() + v);
    for (auto& p : parent) {
      if (p > v) --p;
    }
  }

  static TreeDecomposition single(std::vector<int> bag) {
    TreeDecomposition td;
    td.add_node(-1, std::move(bag));
    return td;
  }
};

inline bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct DecompositionCheck {
  bool ok = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return ok; }
};

// Minimal covering node t_v for every vertex (-1 when uncovered).
inline std::vector<int> minimal_nodes(const TreeDecomposition& td, std::size_t n) {
  std::vector<int> t(n, -1);
  for (int v : td.preorder()) {
    for (int x : td.bags[v]) {
      if (x >= 0 && static_cast<std::size_t>(x) < n && t[x] < 0) t[x] = v;
    }
  }
  return t;
}

// Tree shape, (TD1)-(TD3) and d-stratification.
inline DecompositionCheck check_decomposition(const StratifiedGraph& sg,
                                              const TreeDecomposition& td) {
  DecompositionCheck r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.violations.push_back(std::move(s));
  };
  const Graph& g = sg.graph;
  std::size_t n = g.size();
  std::size_t m = td.size();
  if (m == 0 || td.parent.size() != m) {
    fail("tree: no nodes");
    return r;
  }
  int roots = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (td.parent[i] < 0) {
      ++roots;
    } else if (static_cast<std::size_t>(td.parent[i]) >= m) {
      fail("tree: node " + std::to_string(i) + " has an invalid parent");
      return r;
    }
    std::size_t steps = 0;
    for (int c = td.parent[i]; c >= 0; c = td.parent[c]) {
      if (++steps > m) {
        fail("tree: cycle through node " + std::to_string(i));
        return r;
      }
    }
    for (int x : td.bags[i]) {
      if (x < 0 || static_cast<std::size_t>(x) >= n) {
        fail("tree: node " + std::to_string(i) + " holds an unknown vertex");
        return r;
      }
    }
  }
  if (roots != 1) {
    fail("tree: expected one root, found " + std::to_string(roots));
    return r;
  }
  std::vector<std::vector<int>> holders(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (int x : td.bags[i]) holders[x].push_back(static_cast<int>(i));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (holders[v].empty()) fail("TD1: vertex " + g.name(static_cast<int>(v)) + " is not covered");
  }
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (const auto& b : td.bags) {
      if (std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v)) {
        covered = true;
        break;
      }
    }
    if (!covered) fail("TD2: edge {" + g.name(u) + "," + g.name(v) + "} is not covered");
  }
  // A node set of a tree is connected iff exactly one of its nodes has its parent outside.
  for (std::size_t v = 0; v < n; ++v) {
    if (holders[v].empty()) continue;
    int tops = 0;
    for (int t : holders[v]) {
      int p = td.parent[t];
      if (p < 0 || !std::binary_search(td.bags[p].begin(), td.bags[p].end(), static_cast<int>(v))) {
        ++tops;
      }
    }
    if (tops != 1) fail("TD3: nodes holding " + g.name(static_cast<int>(v)) + " are not connected");
  }
  if (!r.ok) return r;
  auto t = minimal_nodes(td, n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && td.ancestor(t[u], t[v]) && sg.depth[u] > sg.depth[v]) {
        fail("stratification: t_" + g.name(static_cast<int>(u)) + " is above t_" +
             g.name(static_cast<int>(v)) + " but d(" + g.name(static_cast<int>(u)) + ") = " +
             std::to_string(sg.depth[u]) + " > " + std::to_string(sg.depth[v]));
      }
    }
  }
  return r;
}

// Merges child bags contained in their parent's bag, and drops a root contained in
// its only child. Neither move changes any minimal covering node's relative order,
// so stratification is preserved.
inline TreeDecomposition simplify(TreeDecomposition td) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < td.size() && !changed; ++i) {
      int p = td.parent[i];
      if (p >= 0 && subset(td.bags[i], td.bags[p])) {
        td.contract(static_cast<int>(i), p);
        changed = true;
      }
    }
    if (changed) continue;
    int r = td.root();
    auto ch = td.children();
    if (r >= 0 && ch[r].size() == 1 && subset(td.bags[r], td.bags[ch[r][0]])) {
      td.contract(r, ch[r][0]);
      changed = true;
    }
  }
  return td;
}

// Plain (unstratified) decompositions may also merge a parent into a larger child.
inline TreeDecomposition make_small(TreeDecomposition td) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < td.size() && !changed; ++i) {
      int p = td.parent[i];
      if (p < 0) continue;
      if (subset(td.bags[i], td.bags[p])) {
        td.contract(static_cast<int>(i), p);
        changed = true;
      } else if (subset(td.bags[p], td.bags[i])) {
        td.bags[p] = td.bags[i];
        td.contract(static_cast<int>(i), p);
        changed = true;
      }
    }
  }
  return td;
}

// ---- elimination orderings ----

// (v_1, ..., v_n); v_n is eliminated first.
using EliminationOrdering = std::vector<int>;

inline bool respects_depth(const StratifiedGraph& sg, const EliminationOrdering& ord) {
  for (std::size_t i = 1; i < ord.size(); ++i) {
    if (sg.depth[ord[i - 1]] > sg.depth[ord[i]]) return false;
  }
  return true;
}

namespace detail {

inline void check_ordering(const StratifiedGraph& sg, const EliminationOrdering& ord) {
  if (ord.size() != sg.size()) throw DomainError("ordering does not list every vertex once");
  std::vector<char> seen(sg.size(), 0);
  for (int v : ord) {
    if (v < 0 || static_cast<std::size_t>(v) >= sg.size() || seen[v]) {
      throw DomainError("ordering does not list every vertex once");
    }
    seen[v] = 1;
  }
  if (!respects_depth(sg, ord)) throw DomainError("ordering violates d");
}

// Neighbourhoods N_{G_i}(v_i) recorded while eliminating v_n, ..., v_1.
inline std::vector<std::vector<int>> elimination_neighbourhoods(const Graph& g,
                                                                const EliminationOrdering& ord) {
  Graph h = g;
  std::size_t n = ord.size();
  std::vector<char> gone(n, 0);
  std::vector<std::vector<int>> nb(n);
  for (std::size_t i = n; i-- > 0;) {
    int v = ord[i];
    for (int u : h.neighbours(v)) {
      if (!gone[u]) nb[i].push_back(u);
    }
    for (int a : nb[i]) {
      for (int b : nb[i]) h.add_edge(a, b);
    }
    gone[v] = 1;
  }
  return nb;
}

}  // namespace detail

inline int ordering_width(const StratifiedGraph& sg, const EliminationOrdering& ord) {
  detail::check_ordering(sg, ord);
  int w = -1;
  for (const auto& nb : detail::elimination_neighbourhoods(sg.graph, ord)) {
    w = std::max(w, static_cast<int>(nb.size()));
  }
  return w;
}

inline TreeDecomposition ordering_to_decomposition(const StratifiedGraph& sg,
                                                   const EliminationOrdering& ord) {
  detail::check_ordering(sg, ord);
  if (ord.empty()) return TreeDecomposition::single({});
  auto nb = detail::elimination_neighbourhoods(sg.graph, ord);
  TreeDecomposition td;
  td.add_node(-1, {ord[0]});
  for (std::size_t i = 1; i < ord.size(); ++i) {
    std::vector<int> n = nb[i];
    std::sort(n.begin(), n.end());
    int host = 0;
    for (std::size_t t = 0; t < td.size(); ++t) {
      if (subset(n, td.bags[t])) {
        host = static_cast<int>(t);
        break;
      }
    }
    n.push_back(ord[i]);
    td.add_node(host, n);
  }
  return td;
}

inline EliminationOrdering decomposition_to_ordering(const StratifiedGraph& sg,
                                                     const TreeDecomposition& input) {
  auto check = check_decomposition(sg, input);
  if (!check) throw DomainError("invalid decomposition: " + check.violations.front());
  std::size_t n = sg.size();
  TreeDecomposition td = input;
  Graph h = sg.graph;
  std::vector<char> gone(n, 0);
  EliminationOrdering ord(n, -1);
  for (std::size_t step = n; step-- > 0;) {
    // Drop childless nodes whose bag lies inside the parent's bag.
    bool pruned = true;
    while (pruned) {
      pruned = false;
      auto ch = td.children();
      for (std::size_t i = 0; i < td.size(); ++i) {
        if (ch[i].empty() && td.parent[i] >= 0 && subset(td.bags[i], td.bags[td.parent[i]])) {
          td.erase(static_cast<int>(i));
          pruned = true;
          break;
        }
      }
    }
    auto ch = td.children();
    std::vector<int> holders(n, 0);
    std::vector<int> holder(n, -1);
    for (std::size_t t = 0; t < td.size(); ++t) {
      for (int x : td.bags[t]) {
        ++holders[x];
        holder[x] = static_cast<int>(t);
      }
    }
    int pick = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (gone[v] || holders[v] != 1 || !ch[holder[v]].empty()) continue;
      if (pick < 0 || sg.depth[v] > sg.depth[pick]) pick = static_cast<int>(v);
    }
    int maxd = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!gone[v]) maxd = std::max(maxd, sg.depth[v]);
    }
    if (pick < 0 || sg.depth[pick] != maxd) {
      throw Error("decomposition_to_ordering: no eliminable vertex (decomposition not stratified?)");
    }
    ord[step] = pick;
    std::vector<int> nb;
    for (int u : h.neighbours(pick)) {
      if (!gone[u]) nb.push_back(u);
    }
    for (int a : nb) {
      for (int b : nb) h.add_edge(a, b);
    }
    gone[pick] = 1;
    auto& bag = td.bags[holder[pick]];
    bag.erase(std::find(bag.begin(), bag.end(), pick));
  }
  return ord;
}

// Minimum ordering width over every d-respecting permutation.
inline int brute_force_tw(const StratifiedGraph& sg) {
  check_guard(sg.size() <= 10, "brute_force_tw: more than 10 vertices");
  std::size_t n = sg.size();
  if (n == 0) return -1;
  std::vector<int> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return sg.depth[a] < sg.depth[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && sg.depth[ord[j]] == sg.depth[ord[i]]) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  int best = static_cast<int>(n);
  // Odometer over the permutations of each depth class.
  for (;;) {
    int w = -1;
    for (const auto& nb : detail::elimination_neighbourhoods(sg.graph, ord)) {
      w = std::max(w, static_cast<int>(nb.size()));
    }
    best = std::min(best, w);
    std::size_t k = 0;
    for (; k < groups.size(); ++k) {
      auto [b, e] = groups[k];
      if (std::next_permutation(ord.begin() + static_cast<std::ptrdiff_t>(b),
                                ord.begin() + static_cast<std::ptrdiff_t>(e))) {
        break;
      }
    }
    if (k == groups.size()) break;
  }
  return best;
}

}  // namespace fotw
