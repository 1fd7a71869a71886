#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/formula.hpp"

namespace fotw {

using BoolMatrix = std::vector<std::vector<char>>;

// Variables, binders and atoms of a straight NNF formula. Variables are indexed
// in lexicographic order of their names.
struct FormulaIndex {
  struct AtomInfo {
    NodePath path;
    std::vector<int> vars;
  };

  Formula formula;
  std::vector<std::string> vars;
  std::map<std::string, int> id;
  std::vector<char> bound;
  std::vector<Quant> quant;
  std::vector<NodePath> binder;  // path of the quantifier node (bound variables only)
  std::vector<AtomInfo> atoms;

  explicit FormulaIndex(const Formula& f) : formula(f) {
    auto vs = variables(f);
    vars.assign(vs.begin(), vs.end());
    for (std::size_t i = 0; i < vars.size(); ++i) id[vars[i]] = static_cast<int>(i);
    bound.assign(vars.size(), 0);
    quant.assign(vars.size(), Quant::Exists);
    binder.assign(vars.size(), {});
    for_each_node(f, [&](const Formula& g, const NodePath& p) {
      if (g.is_quantifier()) {
        int v = id.at(g.var());
        if (bound[v]) throw DomainError("formula is not straight: " + g.var() + " bound twice");
        bound[v] = 1;
        quant[v] = g.quant();
        binder[v] = p;
      } else if (g.is_literal()) {
        AtomInfo a{p, {}};
        for (const auto& t : g.terms()) {
          if (!t.constant) a.vars.push_back(id.at(t.name));
        }
        std::sort(a.vars.begin(), a.vars.end());
        a.vars.erase(std::unique(a.vars.begin(), a.vars.end()), a.vars.end());
        atoms.push_back(std::move(a));
      }
    });
    for (const auto& v : free_variables(f)) {
      if (bound[id.at(v)]) throw DomainError("formula is not straight: " + v + " free and bound");
    }
  }

  std::size_t size() const { return vars.size(); }
  bool has(const std::string& v) const { return id.count(v) > 0; }

  int index(const std::string& v) const {
    auto it = id.find(v);
    if (it == id.end()) throw DomainError("unknown variable " + v);
    return it->second;
  }

  // x <=_phi y: x = y, or y is quantified within the scope of x.
  bool leq(int x, int y) const {
    if (x == y) return true;
    if (!bound[x] || !bound[y]) return false;
    return binder[x].size() < binder[y].size() && is_prefix(binder[x], binder[y]);
  }

  // phi_[X]: the least node containing every atom that uses a variable of X.
  std::optional<NodePath> region(const std::vector<char>& in_set) const {
    std::optional<NodePath> lca;
    for (const auto& a : atoms) {
      bool uses = std::any_of(a.vars.begin(), a.vars.end(), [&](int v) { return in_set[v]; });
      if (!uses) continue;
      lca = lca ? common_prefix(*lca, a.path) : a.path;
    }
    return lca;
  }

  // Variables occurring in atoms below the node at `path`.
  std::vector<char> occurring_below(const NodePath& path) const {
    std::vector<char> out(vars.size(), 0);
    for (const auto& a : atoms) {
      if (!is_prefix(path, a.path)) continue;
      for (int v : a.vars) out[v] = 1;
    }
    return out;
  }
};

inline NodePath subformula_of_varset(const Formula& f, const std::set<std::string>& xs) {
  FormulaIndex ix(f);
  std::vector<char> in(ix.size(), 0);
  for (const auto& x : xs) in[ix.index(x)] = 1;
  auto r = ix.region(in);
  if (!r) throw DomainError("no atom uses a variable of the given set");
  return *r;
}

struct OrderAnalysis {
  std::shared_ptr<const FormulaIndex> index;
  BoolMatrix leq;
  BoolMatrix preceq;
  BoolMatrix entangled;       // with respect to preceq
  std::vector<NodePath> region;  // phi_x = phi_[x preceq-upset] for bound x
  std::vector<int> ead;
  std::vector<int> ad;
  int rounds = 0;

  const std::vector<std::string>& vars() const { return index->vars; }
  int id(const std::string& v) const { return index->index(v); }

  bool precedes(const std::string& x, const std::string& y) const {
    return preceq[id(x)][id(y)] != 0;
  }

  std::vector<std::pair<std::string, std::string>> pairs(const BoolMatrix& m) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[i][j]) out.emplace_back(vars()[i], vars()[j]);
      }
    }
    return out;
  }

  std::map<std::string, int> table(const std::vector<int>& d) const {
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < d.size(); ++i) out[vars()[i]] = d[i];
    return out;
  }
  std::map<std::string, int> ead_map() const { return table(ead); }
  std::map<std::string, int> ad_map() const { return table(ad); }
  NodePath scope_of(const std::string& x) const {
    int v = id(x);
    if (!index->bound[v]) throw DomainError(x + " is not bound");
    NodePath p = index->binder[v];
    p.push_back(0);
    return p;
  }
};

namespace detail {

inline void transitive_close(BoolMatrix& r) {
  std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = 1;
      }
    }
  }
}

struct Entanglement {
  BoolMatrix rel;
  std::vector<NodePath> region;
};

inline Entanglement entanglement(const FormulaIndex& ix, const BoolMatrix& order) {
  std::size_t n = ix.size();
  Entanglement e{BoolMatrix(n, std::vector<char>(n, 0)), std::vector<NodePath>(n)};
  std::vector<std::vector<char>> occ(n);
  for (std::size_t z = 0; z < n; ++z) {
    if (!ix.bound[z]) continue;
    auto r = ix.region(order[z]);
    if (!r) throw DomainError("bound variable " + ix.vars[z] + " occurs in no atom");
    e.region[z] = *r;
    occ[z] = ix.occurring_below(*r);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && ix.bound[a] && ix.bound[b] && occ[b][a] && occ[a][b]) e.rel[a][b] = 1;
    }
  }
  return e;
}

// Longest-path DP: base 1 for exists, 2 for forall, +1 per quantifier change.
inline std::vector<int> depth_dp(const FormulaIndex& ix, const BoolMatrix& order) {
  std::size_t n = ix.size();
  std::vector<int> byDepth;
  for (std::size_t v = 0; v < n; ++v) {
    if (ix.bound[v]) byDepth.push_back(static_cast<int>(v));
  }
  std::stable_sort(byDepth.begin(), byDepth.end(), [&](int a, int b) {
    return ix.binder[a].size() < ix.binder[b].size();
  });
  std::vector<int> d(n, 0);
  for (int x : byDepth) {
    int best = ix.quant[x] == Quant::Exists ? 1 : 2;
    for (int y : byDepth) {
      if (y == x || !order[y][x]) continue;
      best = std::max(best, d[y] + (ix.quant[y] != ix.quant[x] ? 1 : 0));
    }
    d[x] = best;
  }
  return d;
}

}  // namespace detail

// Least reflexive, transitive relation closed under Alternation; iterated to a fixed point.
inline OrderAnalysis compute_preceq(const Formula& f) {
  auto ix = std::make_shared<FormulaIndex>(f);
  std::size_t n = ix->size();
  OrderAnalysis a;
  a.index = ix;
  a.leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.leq[i][j] = ix->leq(static_cast<int>(i), static_cast<int>(j));
  }
  BoolMatrix r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (;;) {
    ++a.rounds;
    auto ent = detail::entanglement(*ix, r);
    std::vector<std::pair<int, int>> add;
    for (std::size_t x = 0; x < n; ++x) {
      if (!ix->bound[x]) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y || !ix->bound[y] || r[x][y] || !a.leq[x][y] || ix->quant[x] == ix->quant[y]) {
          continue;
        }
        // Chain x = z0, ..., zn = y of pairwise entangled variables inside x^ U y^.
        std::vector<char> allowed(n, 0);
        for (std::size_t z = 0; z < n; ++z) allowed[z] = r[x][z] || r[y][z];
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{x};
        seen[x] = 1;
        bool reach = false;
        while (!stack.empty() && !reach) {
          std::size_t u = stack.back();
          stack.pop_back();
          for (std::size_t w = 0; w < n; ++w) {
            if (seen[w] || !ent.rel[u][w] || !(allowed[w] || w == y)) continue;
            if (w == y) {
              reach = true;
              break;
            }
            seen[w] = 1;
            stack.push_back(w);
          }
        }
        if (reach) add.emplace_back(static_cast<int>(x), static_cast<int>(y));
      }
    }
    if (add.empty()) {
      a.entangled = std::move(ent.rel);
      a.region = std::move(ent.region);
      break;
    }
    for (auto [x, y] : add) r[x][y] = 1;
    detail::transitive_close(r);
  }
  a.preceq = std::move(r);
  a.ead = detail::depth_dp(*ix, a.preceq);
  a.ad = detail::depth_dp(*ix, a.leq);
  return a;
}

inline std::map<std::string, int> compute_ead(const Formula& f, const OrderAnalysis& a) {
  (void)f;
  return a.ead_map();
}

inline std::map<std::string, int> compute_ead(const Formula& f) {
  return compute_preceq(f).ead_map();
}

inline std::map<std::string, int> compute_ad(const Formula& f) {
  FormulaIndex ix(f);
  std::size_t n = ix.size();
  BoolMatrix leq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = ix.leq(static_cast<int>(i), static_cast<int>(j));
  }
  auto d = detail::depth_dp(ix, leq);
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < n; ++i) out[ix.vars[i]] = d[i];
  return out;
}

inline bool is_prenex(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is_quantifier()) cur = &cur->body();
  return quantifier_free(*cur);
}

// Quantifier changes before v in the prefix, plus one; free variables get 0.
inline std::map<std::string, int> compute_ad_prime(const Formula& f) {
  if (!is_prenex(f)) throw DomainError("formula is not in prenex normal form");
  std::map<std::string, int> out;
  for (const auto& v : variables(f)) out[v] = 0;
  const Formula* cur = &f;
  int level = 1;
  std::optional<Quant> last;
  while (cur->is_quantifier()) {
    if (last && *last != cur->quant()) ++level;
    last = cur->quant();
    out[cur->var()] = level;
    cur = &cur->body();
  }
  return out;
}

}  // namespace fotw
