#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/formula.hpp"
#include "fotw/order.hpp"

namespace fotw {

enum class Replacement {
  PushIntoCombination,  // kind 1 backward: Qx theta(chi1, ...) -> theta(Qx chi1, ...)
  PullOutOfCombination, // kind 1 forward: theta(Qx chi1, ...) -> Qx theta(chi1, ...)
  SwapSameQuantifier,   // kind 2
  SwapXenerpScope,      // kind 3
};

struct XenerpCheck {
  bool ok = true;
  std::string witness;  // first misplaced variable (lexicographic) when !ok
  explicit operator bool() const { return ok; }
};

// True when phi_x sits directly below an unbroken run of quantifiers that starts at
// (or above) the binder of x.
inline bool quantifier_placed(const OrderAnalysis& a, int x) {
  const auto& ix = *a.index;
  const NodePath& b = ix.binder[x];
  const NodePath& r = a.region[x];
  if (!(b.size() < r.size() && is_prefix(b, r))) return false;
  for (std::size_t len = b.size(); len < r.size(); ++len) {
    NodePath p(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(len));
    if (!at(ix.formula, p).is_quantifier()) return false;
  }
  return true;
}

inline XenerpCheck is_xenerp(const Formula& f, const OrderAnalysis& a) {
  (void)f;
  for (std::size_t x = 0; x < a.vars().size(); ++x) {
    if (a.index->bound[x] && !quantifier_placed(a, static_cast<int>(x))) {
      return {false, a.vars()[x]};
    }
  }
  return {};
}

inline XenerpCheck is_xenerp(const Formula& f) { return is_xenerp(f, compute_preceq(f)); }

namespace detail {

inline std::vector<std::size_t> children_using(const Formula& junction, const std::string& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < junction.children().size(); ++i) {
    if (occurs_in(x, junction.children()[i])) out.push_back(i);
  }
  return out;
}

inline Formula swap_quantifiers(const Formula& outer) {
  const Formula& inner = outer.body();
  return Formula::quantifier(inner.quant(), inner.var(),
                             Formula::quantifier(outer.quant(), outer.var(), inner.body()));
}

}  // namespace detail

// Applies one equivalence-preserving replacement at `site`. Throws DomainError when
// the side condition of the replacement does not hold there.
inline Formula apply_replacement(const Formula& f, Replacement which, const NodePath& site) {
  const Formula& node = at(f, site);
  switch (which) {
    case Replacement::PushIntoCombination: {
      if (!node.is_quantifier() || !node.body().is_junction()) {
        throw DomainError("push: site is not a quantifier over a Boolean combination");
      }
      const Formula& theta = node.body();
      auto using_x = detail::children_using(theta, node.var());
      if (using_x.size() != 1) {
        throw DomainError("push: " + node.var() + " occurs in more than one argument");
      }
      auto kids = theta.children();
      kids[using_x[0]] = Formula::quantifier(node.quant(), node.var(), kids[using_x[0]]);
      return replace_at(f, site, theta.with_children(std::move(kids)));
    }
    case Replacement::PullOutOfCombination: {
      if (!node.is_junction()) throw DomainError("pull: site is not a Boolean combination");
      auto it = std::find_if(node.children().begin(), node.children().end(),
                             [](const Formula& c) { return c.is_quantifier(); });
      if (it == node.children().end()) throw DomainError("pull: no quantified argument");
      std::size_t i = static_cast<std::size_t>(it - node.children().begin());
      const Formula& q = *it;
      for (std::size_t j = 0; j < node.children().size(); ++j) {
        if (j != i && occurs_in(q.var(), node.children()[j])) {
          throw DomainError("pull: " + q.var() + " occurs in another argument");
        }
      }
      auto kids = node.children();
      kids[i] = q.body();
      return replace_at(f, site,
                        Formula::quantifier(q.quant(), q.var(), node.with_children(std::move(kids))));
    }
    case Replacement::SwapSameQuantifier: {
      if (!node.is_quantifier() || !node.body().is_quantifier()) {
        throw DomainError("swap: site is not a pair of quantifiers");
      }
      if (node.quant() != node.body().quant()) {
        throw DomainError("swap: quantifiers differ in type");
      }
      return replace_at(f, site, detail::swap_quantifiers(node));
    }
    case Replacement::SwapXenerpScope: {
      if (!node.is_quantifier() || !node.body().is_quantifier()) {
        throw DomainError("swap: site is not a pair of quantifiers");
      }
      auto a = compute_preceq(f);
      int x = a.id(node.var());
      int y = a.id(node.body().var());
      const NodePath& rx = a.region[x];
      const NodePath& ry = a.region[y];
      if (!(ry.size() < rx.size() && is_prefix(ry, rx))) {
        throw DomainError("swap: phi_" + node.var() + " is not a proper subformula of phi_" +
                          node.body().var());
      }
      NodePath inner = site;
      inner.push_back(0);
      for (std::size_t v = 0; v < a.vars().size(); ++v) {
        if (a.index->bound[v] && is_prefix(inner, a.index->binder[v]) &&
            !quantifier_placed(a, static_cast<int>(v))) {
          throw DomainError("swap: the inner quantified formula is not xenerp (" + a.vars()[v] +
                            " misplaced)");
        }
      }
      return replace_at(f, site, detail::swap_quantifiers(node));
    }
  }
  return f;
}

namespace detail {

// Innermost (deepest), then leftmost applicable kind-1 backward site.
inline std::optional<NodePath> next_push_site(const Formula& f) {
  std::optional<NodePath> best;
  for_each_node(f, [&](const Formula& g, const NodePath& p) {
    if (!g.is_quantifier() || !g.body().is_junction()) return;
    if (children_using(g.body(), g.var()).size() != 1) return;
    if (!best || p.size() > best->size() || (p.size() == best->size() && p < *best)) best = p;
  });
  return best;
}

inline Formula push_exhaustively(Formula f) {
  while (auto site = next_push_site(f)) {
    f = apply_replacement(f, Replacement::PushIntoCombination, *site);
  }
  return f;
}

}  // namespace detail

// Push quantifiers inward until every Q_x x immediately precedes phi_x.
inline Formula to_xenerp(const Formula& f) {
  Formula g = f;
  for (;;) {
    g = detail::push_exhaustively(g);
    auto a = compute_preceq(g);
    const auto& ix = *a.index;
    std::vector<int> misplaced;
    for (std::size_t x = 0; x < ix.size(); ++x) {
      if (ix.bound[x] && !quantifier_placed(a, static_cast<int>(x))) {
        misplaced.push_back(static_cast<int>(x));
      }
    }
    if (misplaced.empty()) return g;
    int pick = -1;
    for (int x : misplaced) {
      bool maximal = std::none_of(misplaced.begin(), misplaced.end(),
                                  [&](int y) { return y != x && ix.leq(x, y); });
      if (maximal) {
        pick = x;  // indices follow lexicographic order, so the first is the smallest name
        break;
      }
    }
    const NodePath& site = ix.binder[pick];
    if (!at(g, site).body().is_quantifier()) {
      throw Error("xenerp: misplaced " + ix.vars[pick] + " is not followed by a quantifier");
    }
    g = apply_replacement(g, Replacement::SwapXenerpScope, site);
  }
}

namespace detail {

inline Formula strip_quantifiers(const Formula& f) {
  if (f.is_quantifier()) return strip_quantifiers(f.body());
  if (f.is_literal()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(strip_quantifiers(c));
  return f.with_children(std::move(kids));
}

}  // namespace detail

// Prenex form by kind-1 forward moves. The prefix is ordered by (ad, nesting depth,
// position), which respects <=_phi and keeps alternation low.
inline Formula to_prenex(const Formula& f) {
  FormulaIndex ix(f);
  auto ad = compute_ad(f);
  struct Q {
    int ad;
    std::size_t depth;
    std::size_t order;
    Quant quant;
    std::string var;
  };
  std::vector<Q> qs;
  std::size_t order = 0;
  for_each_node(f, [&](const Formula& g, const NodePath& p) {
    if (g.is_quantifier()) qs.push_back({ad.at(g.var()), p.size(), order++, g.quant(), g.var()});
  });
  std::stable_sort(qs.begin(), qs.end(), [](const Q& a, const Q& b) {
    if (a.ad != b.ad) return a.ad < b.ad;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.order < b.order;
  });
  Formula out = detail::strip_quantifiers(f);
  for (auto it = qs.rbegin(); it != qs.rend(); ++it) out = Formula::quantifier(it->quant, it->var, out);
  return out;
}

}  // namespace fotw
