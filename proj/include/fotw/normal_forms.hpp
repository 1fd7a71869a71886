#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fotw/formula.hpp"

namespace fotw {

namespace detail {

class Straightener {
 public:
  explicit Straightener(const Formula& f) : used_(variables(f)), taken_(free_variables(f)) {}

  Formula run(const Formula& f, const std::map<std::string, std::string>& env) {
    switch (f.kind()) {
      case Kind::Atom:
      case Kind::NegAtom: {
        std::vector<Term> ts = f.terms();
        for (auto& t : ts) {
          if (t.constant) continue;
          auto it = env.find(t.name);
          if (it != env.end()) t.name = it->second;
        }
        return f.kind() == Kind::Atom ? Formula::atom(f.relation(), std::move(ts))
                                      : Formula::neg_atom(f.relation(), std::move(ts));
      }
      case Kind::Quantifier: {
        if (!free_variables(f.body()).count(f.var())) return run(f.body(), env);
        std::string name = f.var();
        if (taken_.count(name)) {
          for (int k = 2;; ++k) {
            std::string cand = f.var() + "_" + std::to_string(k);
            if (!used_.count(cand) && !taken_.count(cand)) {
              name = cand;
              break;
            }
          }
        }
        taken_.insert(name);
        used_.insert(name);
        auto inner = env;
        inner[f.var()] = name;
        return Formula::quantifier(f.quant(), name, run(f.body(), inner));
      }
      default: {
        std::vector<Formula> kids;
        for (const auto& c : f.children()) kids.push_back(run(c, env));
        return f.with_children(std::move(kids));
      }
    }
  }

 private:
  std::set<std::string> used_;
  std::set<std::string> taken_;
};

inline Formula nnf(const Formula& f, bool neg) {
  switch (f.kind()) {
    case Kind::Atom:
      return neg ? Formula::neg_atom(f.relation(), f.terms()) : f;
    case Kind::NegAtom:
      return neg ? Formula::atom(f.relation(), f.terms()) : f;
    case Kind::Not:
      return nnf(f.body(), !neg);
    case Kind::Quantifier:
      return Formula::quantifier(neg ? dual(f.quant()) : f.quant(), f.var(), nnf(f.body(), neg));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(nnf(c, neg));
      bool conj = (f.kind() == Kind::And) != neg;
      return conj ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Kind::Combination: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(nnf(c, neg));
      NormalForm form = f.form();
      if (neg) form = form == NormalForm::Dnf ? NormalForm::Cnf : NormalForm::Dnf;
      return Formula::combination(form, std::move(kids), f.clauses());
    }
  }
  return f;
}

}  // namespace detail

// Renames requantified variables (first binder keeps the name, later ones get
// _2, _3, ...) and drops quantifiers whose variable occurs in no atom.
inline Formula straighten(const Formula& f) { return detail::Straightener(f).run(f, {}); }

inline Formula to_nnf(const Formula& f) { return detail::nnf(f, false); }

inline bool is_nnf(const Formula& f) {
  bool ok = true;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    if (g.kind() == Kind::Not) ok = false;
  });
  return ok;
}

inline bool is_straight(const Formula& f) {
  std::set<std::string> free = free_variables(f);
  std::set<std::string> bound;
  bool ok = true;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    if (!g.is_quantifier()) return;
    if (!bound.insert(g.var()).second || free.count(g.var()) ||
        !free_variables(g.body()).count(g.var())) {
      ok = false;
    }
  });
  return ok;
}

// straighten then to_nnf; the usual entry point for user formulas.
inline Formula normalize_formula(const Formula& f) { return to_nnf(straighten(f)); }

}  // namespace fotw
