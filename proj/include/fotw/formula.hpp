#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fotw/error.hpp"

namespace fotw {

enum class Quant { Exists, Forall };

inline Quant dual(Quant q) {
  return q == Quant::Exists ? Quant::Forall : Quant::Exists;
}

enum class Kind {
  Atom,
  NegAtom,
  And,
  Or,
  Quantifier,
  Not,          // parser-internal; removed by to_nnf
  Combination,  // monotone Boolean function over children; translation only
};

// How the clause list of a combination node is read: OR of ANDs or AND of ORs.
enum class NormalForm { Dnf, Cnf };

struct Term {
  bool constant = false;
  std::string name;

  static Term var(std::string n) { return Term{false, std::move(n)}; }
  static Term cons(std::string n) { return Term{true, std::move(n)}; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Vocabulary {
  std::map<std::string, int> relations;
  std::set<std::string> constants;

  // Adds a relation; throws DomainError when it is already known with another arity.
  void add_relation(const std::string& name, int arity) {
    auto [it, inserted] = relations.emplace(name, arity);
    if (!inserted && it->second != arity) {
      throw DomainError("relation " + name + " used with arities " +
                        std::to_string(it->second) + " and " + std::to_string(arity));
    }
  }

  bool contains(const Vocabulary& other) const {
    for (const auto& [name, arity] : other.relations) {
      auto it = relations.find(name);
      if (it == relations.end() || it->second != arity) return false;
    }
    for (const auto& c : other.constants) {
      if (!constants.count(c)) return false;
    }
    return true;
  }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

class Formula;

namespace detail {
struct Node;
}

using Clause = std::vector<std::size_t>;

class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string relation, std::vector<Term> terms);
  static Formula neg_atom(std::string relation, std::vector<Term> terms);
  // Both require at least two children.
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula quantifier(Quant q, std::string var, Formula body);
  static Formula exists(std::string var, Formula body) {
    return quantifier(Quant::Exists, std::move(var), std::move(body));
  }
  static Formula forall(std::string var, Formula body) {
    return quantifier(Quant::Forall, std::move(var), std::move(body));
  }
  static Formula negation(Formula f);
  // Clauses index into children; every child must be used by some clause.
  static Formula combination(NormalForm form, std::vector<Formula> children,
                             std::vector<Clause> clauses);

  // Same kind and payload, new children. Quantifiers and Not take one child.
  Formula with_children(std::vector<Formula> children) const;

  explicit operator bool() const { return node_ != nullptr; }

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_literal() const { return kind() == Kind::Atom || kind() == Kind::NegAtom; }
  bool is_quantifier() const { return kind() == Kind::Quantifier; }
  bool is_junction() const {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Combination;
  }

  const std::string& relation() const;
  const std::vector<Term>& terms() const;
  Quant quant() const;
  const std::string& var() const;
  const Formula& body() const;
  const std::vector<Formula>& children() const;
  NormalForm form() const;
  const std::vector<Clause>& clauses() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  Kind kind = Kind::Atom;
  std::string name;  // relation for literals, variable for quantifiers
  Quant quant = Quant::Exists;
  std::vector<Term> terms;
  std::vector<Formula> children;
  NormalForm form = NormalForm::Dnf;
  std::vector<Clause> clauses;
};
}  // namespace detail

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::relation() const { return node_->name; }
inline const std::vector<Term>& Formula::terms() const { return node_->terms; }
inline Quant Formula::quant() const { return node_->quant; }
inline const std::string& Formula::var() const { return node_->name; }
inline const Formula& Formula::body() const { return node_->children.front(); }
inline const std::vector<Formula>& Formula::children() const { return node_->children; }
inline NormalForm Formula::form() const { return node_->form; }
inline const std::vector<Clause>& Formula::clauses() const { return node_->clauses; }

inline Formula Formula::atom(std::string relation, std::vector<Term> terms) {
  auto n = std::make_shared<detail::Node>();
  n->kind = Kind::Atom;
  n->name = std::move(relation);
  n->terms = std::move(terms);
  return Formula(std::move(n));
}

inline Formula Formula::neg_atom(std::string relation, std::vector<Term> terms) {
  auto n = std::make_shared<detail::Node>();
  n->kind = Kind::NegAtom;
  n->name = std::move(relation);
  n->terms = std::move(terms);
  return Formula(std::move(n));
}

inline Formula Formula::conj(std::vector<Formula> children) {
  if (children.size() < 2) throw DomainError("conjunction needs at least two children");
  auto n = std::make_shared<detail::Node>();
  n->kind = Kind::And;
  n->children = std::move(children);
  return Formula(std::move(n));
}

inline Formula Formula::disj(std::vector<Formula> children) {
  if (children.size() < 2) throw DomainError("disjunction needs at least two children");
  auto n = std::make_shared<detail::Node>();
  n->kind = Kind::Or;
  n->children = std::move(children);
  return Formula(std::move(n));
}

inline Formula Formula::quantifier(Quant q, std::string var, Formula body) {
  auto n = std::make_shared<detail::Node>();
  n->kind = Kind::Quantifier;
  n->quant = q;
  n->name = std::move(var);
  n->children.push_back(std::move(body));
  return Formula(std::move(n));
}

inline Formula Formula::negation(Formula f) {
  auto n = std::make_shared<detail::Node>();
  n->kind = Kind::Not;
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

inline Formula Formula::combination(NormalForm form, std::vector<Formula> children,
                                    std::vector<Clause> clauses) {
  if (children.empty() || clauses.empty()) throw DomainError("empty combination");
  std::vector<bool> used(children.size(), false);
  for (const auto& c : clauses) {
    if (c.empty()) throw DomainError("combination with an empty clause");
    for (auto i : c) {
      if (i >= children.size()) throw DomainError("combination clause out of range");
      used[i] = true;
    }
  }
  for (bool u : used) {
    if (!u) throw DomainError("combination child not referenced by any clause");
  }
  auto n = std::make_shared<detail::Node>();
  n->kind = Kind::Combination;
  n->form = form;
  n->children = std::move(children);
  n->clauses = std::move(clauses);
  return Formula(std::move(n));
}

inline Formula Formula::with_children(std::vector<Formula> children) const {
  auto n = std::make_shared<detail::Node>(*node_);
  n->children = std::move(children);
  return Formula(std::move(n));
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.terms != y.terms ||
      x.children.size() != y.children.size()) {
    return false;
  }
  if (x.kind == Kind::Quantifier && x.quant != y.quant) return false;
  if (x.kind == Kind::Combination && (x.form != y.form || x.clauses != y.clauses)) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

// ---- traversal helpers ----

// A node handle: child indices from the root (a quantifier's body is child 0).
using NodePath = std::vector<std::size_t>;

inline const Formula& at(const Formula& f, const NodePath& path) {
  const Formula* cur = &f;
  for (auto i : path) cur = &cur->children().at(i);
  return *cur;
}

inline Formula replace_at(const Formula& f, const NodePath& path, const Formula& sub,
                          std::size_t depth = 0) {
  if (depth == path.size()) return sub;
  auto kids = f.children();
  kids.at(path[depth]) = replace_at(kids[path[depth]], path, sub, depth + 1);
  return f.with_children(std::move(kids));
}

inline bool is_prefix(const NodePath& p, const NodePath& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

inline NodePath common_prefix(const NodePath& p, const NodePath& q) {
  NodePath r;
  for (std::size_t i = 0; i < p.size() && i < q.size() && p[i] == q[i]; ++i) r.push_back(p[i]);
  return r;
}

template <class Fn>
void for_each_node(const Formula& f, Fn&& fn, NodePath& path) {
  fn(f, path);
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    path.push_back(i);
    for_each_node(f.children()[i], fn, path);
    path.pop_back();
  }
}

template <class Fn>
void for_each_node(const Formula& f, Fn&& fn) {
  NodePath path;
  for_each_node(f, fn, path);
}

inline std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::NegAtom:
      for (const auto& t : f.terms()) {
        if (!t.constant) out.insert(t.name);
      }
      break;
    case Kind::Quantifier:
      out = free_variables(f.body());
      out.erase(f.var());
      break;
    default:
      for (const auto& c : f.children()) {
        auto s = free_variables(c);
        out.insert(s.begin(), s.end());
      }
  }
  return out;
}

// Variables occurring in atoms or quantifiers.
inline std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    if (g.is_literal()) {
      for (const auto& t : g.terms()) {
        if (!t.constant) out.insert(t.name);
      }
    } else if (g.is_quantifier()) {
      out.insert(g.var());
    }
  });
  return out;
}

inline std::set<std::string> atom_variables(const Formula& atom) {
  std::set<std::string> out;
  for (const auto& t : atom.terms()) {
    if (!t.constant) out.insert(t.name);
  }
  return out;
}

inline bool occurs_in(const std::string& x, const Formula& f) {
  bool found = false;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    if (found || !g.is_literal()) return;
    for (const auto& t : g.terms()) {
      if (!t.constant && t.name == x) found = true;
    }
  });
  return found;
}

inline bool quantifier_free(const Formula& f) {
  bool qf = true;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    if (g.is_quantifier()) qf = false;
  });
  return qf;
}

inline std::size_t size(const Formula& f) {
  std::size_t n = 0;
  for_each_node(f, [&](const Formula&, const NodePath&) { ++n; });
  return n;
}

inline Vocabulary vocabulary_of(const Formula& f) {
  Vocabulary v;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    if (!g.is_literal()) return;
    v.add_relation(g.relation(), static_cast<int>(g.terms().size()));
    for (const auto& t : g.terms()) {
      if (t.constant) v.constants.insert(t.name);
    }
  });
  return v;
}

// Replaces every combination node by plain And/Or nodes, duplicating children.
inline Formula eliminate_combinations(const Formula& f) {
  if (f.is_literal()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(eliminate_combinations(c));
  if (f.kind() != Kind::Combination) return f.with_children(std::move(kids));
  bool dnf = f.form() == NormalForm::Dnf;
  std::vector<Formula> outer;
  for (const auto& clause : f.clauses()) {
    std::vector<Formula> inner;
    for (auto i : clause) inner.push_back(kids[i]);
    if (inner.size() == 1) {
      outer.push_back(inner.front());
    } else {
      outer.push_back(dnf ? Formula::conj(std::move(inner)) : Formula::disj(std::move(inner)));
    }
  }
  if (outer.size() == 1) return outer.front();
  return dnf ? Formula::disj(std::move(outer)) : Formula::conj(std::move(outer));
}

}  // namespace fotw
