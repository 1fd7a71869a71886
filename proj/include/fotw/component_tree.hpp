#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/graph.hpp"

namespace fotw {

struct NormalizedGraph {
  StratifiedGraph sg;
  std::vector<int> original;  // new vertex -> old vertex (identity: ids are already 0..n-1)
};

// Rank-compresses d so that its values are exactly 0..m.
inline NormalizedGraph normalize(const StratifiedGraph& sg) {
  std::set<int> values(sg.depth.begin(), sg.depth.end());
  std::map<int, int> rank;
  int r = 0;
  for (int v : values) rank[v] = r++;
  NormalizedGraph out{sg, {}};
  for (auto& d : out.sg.depth) d = rank[d];
  for (std::size_t v = 0; v < sg.size(); ++v) out.original.push_back(static_cast<int>(v));
  return out;
}

inline bool is_normalized(const StratifiedGraph& sg) {
  std::set<int> values(sg.depth.begin(), sg.depth.end());
  int expect = 0;
  for (int v : values) {
    if (v != expect++) return false;
  }
  return true;
}

struct ComponentTreeNode {
  int parent = -1;
  int level = 0;
  std::vector<int> C;  // unmodified variant only
  std::vector<int> D;
  std::vector<int> D1;
  std::vector<int> D2;
  int dropped = 0;  // omitted levels between this node and its parent (modified variant)
  std::map<std::pair<int, int>, int> edges;  // G^(level-1)[D] with multiplicities (modified)
};

struct ComponentTree {
  bool modified = false;
  std::vector<ComponentTreeNode> nodes;  // node 0 is the root
  Graph g0;                              // G^(0) (modified variant)

  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(nodes.size());
    for (std::size_t i = 1; i < nodes.size(); ++i) ch[nodes[i].parent].push_back(static_cast<int>(i));
    return ch;
  }
};

namespace detail {

inline std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline ComponentTree plain_component_tree(const StratifiedGraph& sg) {
  ComponentTree tree;
  const Graph& g = sg.graph;
  std::size_t n = g.size();
  ComponentTreeNode root;
  for (std::size_t v = 0; v < n; ++v) root.C.push_back(static_cast<int>(v));
  tree.nodes.push_back(root);
  for (std::size_t t = 0; t < tree.nodes.size(); ++t) {
    auto& node = tree.nodes[t];
    int i = node.level;
    for (int v : node.C) {
      if (sg.depth[v] <= i) node.D.push_back(v);
      if (sg.depth[v] == i) node.D1.push_back(v);
      if (sg.depth[v] < i) node.D2.push_back(v);
    }
    std::vector<char> rest(n, 0);
    for (int v : node.C) rest[v] = sg.depth[v] > i;
    auto comps = g.components(rest);
    int level = i;
    for (const auto& comp : comps) {
      std::vector<int> nb;
      for (int v : comp) {
        for (int u : g.neighbours(v)) {
          if (!std::binary_search(comp.begin(), comp.end(), u)) nb.push_back(u);
        }
      }
      ComponentTreeNode child;
      child.parent = static_cast<int>(t);
      child.level = level + 1;
      child.C = sorted_union(comp, nb);
      tree.nodes.push_back(std::move(child));
    }
  }
  return tree;
}

// Bottom-up construction maintaining G^(i) as a multigraph.
inline ComponentTree modified_component_tree(const StratifiedGraph& sg) {
  const Graph& g = sg.graph;
  std::size_t n = g.size();
  int dmax = std::max(0, sg.max_depth());
  std::vector<std::vector<int>> cnt(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges()) cnt[u][v] = cnt[v][u] = 1;

  std::vector<ComponentTreeNode> made;              // created bottom-up
  std::vector<std::vector<std::pair<int, int>>> lists(dmax + 2);  // (node, representative)
  std::vector<int> label(n, -1);

  for (int i = dmax; i >= 1; --i) {
    std::vector<char> in(n, 0);
    for (std::size_t v = 0; v < n; ++v) in[v] = sg.depth[v] == i;
    // Components of G^(i)[X_i].
    std::vector<char> seen(n, 0);
    std::vector<int> created;
    for (std::size_t s = 0; s < n; ++s) {
      if (!in[s] || seen[s]) continue;
      std::vector<int> comp;
      std::vector<int> stack{static_cast<int>(s)};
      seen[s] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (std::size_t u = 0; u < n; ++u) {
          if (in[u] && !seen[u] && cnt[v][u] > 0) {
            seen[u] = 1;
            stack.push_back(static_cast<int>(u));
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      ComponentTreeNode node;
      node.level = i;
      node.D1 = comp;
      std::set<int> d2;
      for (int v : comp) {
        for (std::size_t u = 0; u < n; ++u) {
          if (cnt[v][u] > 0 && sg.depth[u] < i) d2.insert(static_cast<int>(u));
        }
      }
      node.D2.assign(d2.begin(), d2.end());
      node.D = sorted_union(node.D1, node.D2);
      for (std::size_t a = 0; a < node.D.size(); ++a) {
        for (std::size_t b = a + 1; b < node.D.size(); ++b) {
          int x = node.D[a];
          int y = node.D[b];
          if (cnt[x][y] > 0 && (sg.depth[x] == i || sg.depth[y] == i)) node.edges[{x, y}] = cnt[x][y];
        }
      }
      int id = static_cast<int>(made.size());
      for (int v : comp) label[v] = id;
      made.push_back(std::move(node));
      created.push_back(id);
    }
    // G^(i-1): every D2 becomes a clique.
    for (int id : created) {
      auto& node = made[id];
      for (std::size_t a = 0; a < node.D2.size(); ++a) {
        for (std::size_t b = a + 1; b < node.D2.size(); ++b) {
          int x = node.D2[a];
          int y = node.D2[b];
          ++cnt[x][y];
          ++cnt[y][x];
          ++node.edges[{x, y}];
        }
      }
    }
    for (auto [sub, rep] : lists[i + 1]) made[sub].parent = label[rep];
    for (int id : created) {
      auto& node = made[id];
      int j = -1;
      int rep = -1;
      for (int v : node.D2) {
        if (sg.depth[v] > j) {
          j = sg.depth[v];
          rep = v;
        }
      }
      node.dropped = i - 1 - std::max(j, 0);
      lists[std::max(j, 0) + 1].push_back({id, rep});
    }
  }

  ComponentTree tree;
  tree.modified = true;
  ComponentTreeNode root;
  for (std::size_t v = 0; v < n; ++v) {
    if (sg.depth[v] == 0) root.D.push_back(static_cast<int>(v));
  }
  root.D1 = root.D;
  for (std::size_t a = 0; a < root.D.size(); ++a) {
    for (std::size_t b = a + 1; b < root.D.size(); ++b) {
      int x = root.D[a];
      int y = root.D[b];
      if (cnt[x][y] > 0) root.edges[{x, y}] = cnt[x][y];
    }
  }
  tree.nodes.push_back(root);
  // Renumber top-down: root first, then breadth-first.
  std::vector<int> newId(made.size(), -1);
  std::vector<std::vector<int>> ch(made.size());
  std::vector<int> top;
  for (auto [sub, rep] : lists[1]) top.push_back(sub);
  for (std::size_t k = 0; k < made.size(); ++k) {
    if (made[k].parent >= 0) ch[made[k].parent].push_back(static_cast<int>(k));
  }
  auto byD = [&](int a, int b) { return made[a].D < made[b].D; };
  std::sort(top.begin(), top.end(), byD);
  std::vector<std::pair<int, int>> queue;  // (made id, parent in tree)
  for (int s : top) queue.push_back({s, 0});
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto [k, par] = queue[q];
    ComponentTreeNode node = made[k];
    node.parent = par;
    newId[k] = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(std::move(node));
    auto kids = ch[k];
    std::sort(kids.begin(), kids.end(), byD);
    for (int c : kids) queue.push_back({c, newId[k]});
  }
  Graph g0(g.names());
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (cnt[u][v] > 0) g0.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
  }
  tree.g0 = std::move(g0);
  return tree;
}

}  // namespace detail

// Unmodified: literal definition with C_t. Modified: bottom-up algorithm dropping
// nodes with D_t and X_i disjoint; requires normalized depths.
inline ComponentTree component_tree(const StratifiedGraph& sg, bool modified) {
  if (!modified) return detail::plain_component_tree(sg);
  if (!is_normalized(sg)) throw DomainError("component tree: depths are not normalized");
  return detail::modified_component_tree(sg);
}

}  // namespace fotw
