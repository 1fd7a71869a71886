#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fotw/decomposition.hpp"
#include "fotw/error.hpp"
#include "fotw/formula.hpp"
#include "fotw/fotw.hpp"
#include "fotw/graph.hpp"
#include "fotw/normal_forms.hpp"
#include "fotw/order.hpp"
#include "fotw/xenerp.hpp"

namespace fotw {

// A tree decomposition whose bags hold variable names, so it survives rewrites
// of the formula it decomposes.
struct NamedTree {
  std::vector<int> parent;
  std::vector<std::vector<std::string>> bags;  // sorted

  std::size_t size() const { return bags.size(); }

  bool is_leaf(int v) const {
    return std::find(parent.begin(), parent.end(), v) == parent.end();
  }

  void erase(int v) {
    for (auto& p : parent) {
      if (p == v) p = parent[v];
    }
    parent.erase(parent.begin() + v);
    bags.erase(bags.begin() + v);
    for (auto& p : parent) {
      if (p > v) --p;
    }
  }

  int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }

  static NamedTree from(const FormulaDecomposition& d) {
    NamedTree t;
    t.parent = d.td.parent;
    for (std::size_t i = 0; i < d.td.size(); ++i) t.bags.push_back(d.bag_names(static_cast<int>(i)));
    return t;
  }
};

// (G_f, depth) with the named bags mapped onto it. Names missing from G_f are dropped.
inline FormulaDecomposition attach(const Formula& f, const NamedTree& tree,
                                   const std::map<std::string, int>& depth) {
  FormulaDecomposition out;
  out.sg = stratify(f, depth);
  out.td.parent = tree.parent;
  for (const auto& bag : tree.bags) {
    std::vector<int> ids;
    for (const auto& x : bag) {
      const auto& names = out.sg.graph.names();
      if (std::find(names.begin(), names.end(), x) != names.end()) {
        ids.push_back(out.sg.graph.index_of(x));
      }
    }
    std::sort(ids.begin(), ids.end());
    out.td.bags.push_back(std::move(ids));
  }
  out.width = out.td.width();
  return out;
}

inline FormulaDecomposition attach(const Formula& f, const NamedTree& tree) {
  return attach(f, tree, compute_ead(f));
}

struct AuxDefinition {
  std::string symbol;
  std::vector<std::string> args;
  Formula definition;  // free variables are exactly args
};

struct TranslationStep {
  int kind = 0;          // which case of the loop ran: 1, 2 or 3
  std::string variable;  // eliminated variable (case 3)
  std::string note;
  Formula formula;       // phi' after the step
  NamedTree tree;        // (T', B') after the step
};

struct Translation {
  int k = 0;
  Formula result;  // in FO^k_m, combinations eliminated, S expanded
  std::vector<AuxDefinition> aux;
  std::vector<TranslationStep> steps;  // filled when requested
  std::map<std::string, int> depth;    // input ead; every step tree is stratified for it
};

namespace detail {

using ClauseSet = std::set<std::vector<int>>;

constexpr std::size_t kMaxClauses = 200000;

struct LiteralTable {
  std::vector<Formula> items;
  int index(const Formula& f) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i] == f) return static_cast<int>(i);
    }
    items.push_back(f);
    return static_cast<int>(items.size()) - 1;
  }
};

inline ClauseSet clause_union(ClauseSet a, const ClauseSet& b) {
  a.insert(b.begin(), b.end());
  if (a.size() > kMaxClauses) throw TooLarge("translation: normal form exceeds the clause limit");
  return a;
}

inline ClauseSet clause_product(const ClauseSet& a, const ClauseSet& b) {
  ClauseSet out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      std::vector<int> c;
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
      out.insert(std::move(c));
      if (out.size() > kMaxClauses) throw TooLarge("translation: normal form exceeds the clause limit");
    }
  }
  return out;
}

// Clause set of `node` in the target normal form, over literals that use x and
// maximal x-free subformulas.
inline ClauseSet normal_form(const Formula& node, const std::string& x, NormalForm target,
                             LiteralTable& lits) {
  if (node.is_literal() || !occurs_in(x, node)) return {{lits.index(node)}};
  bool dnf = target == NormalForm::Dnf;
  auto conj = [&](const ClauseSet& a, const ClauseSet& b) {
    return dnf ? clause_product(a, b) : clause_union(a, b);
  };
  auto disj = [&](const ClauseSet& a, const ClauseSet& b) {
    return dnf ? clause_union(a, b) : clause_product(a, b);
  };
  auto fold = [&](const std::vector<ClauseSet>& parts, bool is_and) {
    ClauseSet acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = is_and ? conj(acc, parts[i]) : disj(acc, parts[i]);
    return acc;
  };
  switch (node.kind()) {
    case Kind::And:
    case Kind::Or: {
      std::vector<ClauseSet> parts;
      for (const auto& c : node.children()) parts.push_back(normal_form(c, x, target, lits));
      return fold(parts, node.kind() == Kind::And);
    }
    case Kind::Combination: {
      std::vector<ClauseSet> kids;
      for (const auto& c : node.children()) kids.push_back(normal_form(c, x, target, lits));
      bool outer_or = node.form() == NormalForm::Dnf;
      std::vector<ClauseSet> parts;
      for (const auto& clause : node.clauses()) {
        std::vector<ClauseSet> inner;
        for (auto i : clause) inner.push_back(kids[i]);
        parts.push_back(fold(inner, outer_or));
      }
      return fold(parts, !outer_or);
    }
    default:
      throw Error("translation: " + x + " occurs below a quantifier inside its own scope");
  }
}

// Drops clauses that strictly contain another clause, unless that would lose a
// literal altogether.
inline std::vector<std::vector<int>> absorb(const ClauseSet& cs) {
  std::vector<std::vector<int>> all(cs.begin(), cs.end());
  std::vector<std::vector<int>> kept;
  for (const auto& c : all) {
    bool absorbed = std::any_of(all.begin(), all.end(), [&](const std::vector<int>& d) {
      return d.size() < c.size() && std::includes(c.begin(), c.end(), d.begin(), d.end());
    });
    if (!absorbed) kept.push_back(c);
  }
  std::set<int> before;
  std::set<int> after;
  for (const auto& c : all) before.insert(c.begin(), c.end());
  for (const auto& c : kept) after.insert(c.begin(), c.end());
  return before == after ? kept : all;
}

inline Formula drop_quantifiers(const Formula& f, const std::set<std::string>& vs) {
  if (f.is_literal()) return f;
  if (f.is_quantifier() && vs.count(f.var())) return drop_quantifiers(f.body(), vs);
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(drop_quantifiers(c, vs));
  return f.with_children(std::move(kids));
}

inline Formula expand(const Formula& f, const std::map<std::string, Formula>& defs) {
  if (f.is_atom()) {
    auto it = defs.find(f.relation());
    return it == defs.end() ? f : expand(it->second, defs);
  }
  if (f.is_literal()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(expand(c, defs));
  return f.with_children(std::move(kids));
}

class Translator {
 public:
  Translator(const Formula& f, NamedTree tree, int k, bool record)
      : phi_(to_xenerp(f)), depth_(compute_ead(f)), tree_(std::move(tree)), k_(k), record_(record) {}

  Translation run() {
    for (;;) {
      if (quantifier_free(phi_)) {
        std::map<std::string, Formula> defs;
        for (const auto& a : out_.aux) defs[a.symbol] = a.definition;
        out_.result = eliminate_combinations(expand(phi_, defs));
        out_.k = k_;
        out_.depth = depth_;
        log(1, "", "quantifier free; substitution expanded");
        return out_;
      }
      if (drop_redundant_leaf()) continue;
      eliminate(pick_variable());
    }
  }

 private:
  void log(int kind, const std::string& var, std::string note) {
    if (!record_) return;
    out_.steps.push_back({kind, var, std::move(note), phi_, tree_});
  }

  bool drop_redundant_leaf() {
    for (std::size_t v = 0; v < tree_.size(); ++v) {
      int p = tree_.parent[v];
      if (p < 0 || !tree_.is_leaf(static_cast<int>(v))) continue;
      const auto& a = tree_.bags[v];
      const auto& b = tree_.bags[p];
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        tree_.erase(static_cast<int>(v));
        log(2, "", "dropped a leaf contained in its parent");
        return true;
      }
    }
    return false;
  }

  // A bound variable of maximum depth held by a single bag, which is a leaf.
  // Depths stay those of the input: eliminating a variable can break a chain
  // and lower the ead of later ones below what the tree was stratified for.
  std::pair<std::string, int> pick_variable() {
    FormulaIndex ix(phi_);
    int best = -1;
    for (const auto& [v, d] : depth_) {
      if (ix.has(v) && ix.bound[ix.index(v)]) best = std::max(best, d);
    }
    for (const auto& [v, d] : depth_) {
      if (d != best || !ix.has(v) || !ix.bound[ix.index(v)]) continue;
      int holder = -1;
      int count = 0;
      for (std::size_t t = 0; t < tree_.size(); ++t) {
        if (std::binary_search(tree_.bags[t].begin(), tree_.bags[t].end(), v)) {
          holder = static_cast<int>(t);
          ++count;
        }
      }
      if (count == 1 && tree_.is_leaf(holder)) return {v, holder};
    }
    throw Error("translation: no variable of maximum ead sits in a single leaf bag");
  }

  void eliminate(const std::pair<std::string, int>& choice) {
    const auto& [x, leaf] = choice;
    auto a = compute_preceq(phi_);
    const auto& ix = *a.index;
    int xi = a.id(x);
    Quant q = ix.quant[xi];
    NodePath site = ix.binder[xi];
    const Formula& psi = at(phi_, site).body();

    std::set<std::string> v1;
    std::vector<std::string> v1_order;
    for_each_node(psi, [&](const Formula& g, const NodePath&) {
      if (!g.is_quantifier() || !a.entangled[xi][a.id(g.var())]) return;
      if (g.quant() != q) throw Error("translation: entangled variable " + g.var() + " has the other quantifier");
      v1.insert(g.var());
      v1_order.push_back(g.var());
    });
    Formula body = drop_quantifiers(psi, v1);

    NormalForm target = q == Quant::Exists ? NormalForm::Dnf : NormalForm::Cnf;
    LiteralTable lits;
    auto clauses = absorb(normal_form(body, x, target, lits));

    std::vector<Formula> children;
    std::map<int, std::size_t> literal_child;
    std::map<std::vector<int>, std::size_t> aux_child;
    std::vector<Clause> out_clauses;
    for (const auto& clause : clauses) {
      std::vector<int> plus;
      Clause members;
      for (int j : clause) {
        if (occurs_in(x, lits.items[j])) {
          plus.push_back(j);
          continue;
        }
        auto it = literal_child.find(j);
        if (it == literal_child.end()) {
          it = literal_child.emplace(j, children.size()).first;
          children.push_back(lits.items[j]);
        }
        members.push_back(it->second);
      }
      if (!plus.empty()) {
        auto it = aux_child.find(plus);
        if (it == aux_child.end()) {
          it = aux_child.emplace(plus, children.size()).first;
          children.push_back(make_aux(x, q, plus, lits));
        }
        members.push_back(it->second);
      }
      std::sort(members.begin(), members.end());
      out_clauses.push_back(std::move(members));
    }

    Formula replacement = out_clauses.size() == 1 && out_clauses[0].size() == 1
                              ? children[out_clauses[0][0]]
                              : Formula::combination(target, children, out_clauses);
    for (auto it = v1_order.rbegin(); it != v1_order.rend(); ++it) {
      replacement = Formula::quantifier(q, *it, replacement);
    }
    phi_ = to_xenerp(replace_at(phi_, site, replacement));

    auto& bag = tree_.bags[leaf];
    bag.erase(std::find(bag.begin(), bag.end(), x));
    log(3, x,
        "eliminated " + x + " (" + std::to_string(v1.size()) + " entangled, " +
            std::to_string(out_clauses.size()) + " clauses)");
  }

  Formula make_aux(const std::string& x, Quant q, const std::vector<int>& plus,
                   const LiteralTable& lits) {
    std::vector<Formula> parts;
    for (int j : plus) parts.push_back(lits.items[j]);
    Formula inner = parts.size() == 1
                        ? parts.front()
                        : (q == Quant::Exists ? Formula::conj(parts) : Formula::disj(parts));
    Formula def = Formula::quantifier(q, x, inner);
    auto fv = free_variables(def);
    std::vector<std::string> args(fv.begin(), fv.end());
    if (static_cast<int>(args.size()) > k_ - 1) {
      throw Error("translation: auxiliary atom for " + x + " exceeds arity k-1");
    }
    std::string symbol = "__aux_" + x + "_" + std::to_string(++counter_);
    out_.aux.push_back({symbol, args, def});
    std::vector<Term> terms;
    for (const auto& v : args) terms.push_back(Term::var(v));
    return Formula::atom(symbol, std::move(terms));
  }

  Formula phi_;
  std::map<std::string, int> depth_;
  NamedTree tree_;
  int k_;
  bool record_;
  int counter_ = 0;
  Translation out_;
};

}  // namespace detail

// Equivalent FO^k_m formula, eliminating one variable at a time along `d`.
// f must be straight and in NNF; d must be a valid ead-stratified decomposition
// of f of width at most k-1.
inline Translation translate(const Formula& f, const FormulaDecomposition& d, int k,
                             bool record_steps = false) {
  if (!is_nnf(f) || !is_straight(f)) throw DomainError("translate: formula must be straight and in NNF");
  auto check = check_decomposition(stratify(f, compute_ead(f)), d.td);
  if (!check.ok) throw DomainError("translate: invalid decomposition: " + check.violations.front());
  if (d.td.width() > k - 1) {
    throw DomainError("translate: decomposition width " + std::to_string(d.td.width()) +
                      " exceeds k-1 = " + std::to_string(k - 1));
  }
  return detail::Translator(f, NamedTree::from(d), k, record_steps).run();
}

inline Translation translate(const Formula& f, bool record_steps = false) {
  auto d = fotw_decomposition(f);
  return translate(f, d, std::max(d.width + 1, 1), record_steps);
}

inline Formula to_fokm(const Formula& f, const FormulaDecomposition& d, int k) {
  return translate(f, d, k).result;
}

inline Formula to_fokm(const Formula& f) { return translate(f).result; }

// Largest number of free variables of any subformula.
inline int fokm_width(const Formula& f) {
  int w = 0;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    w = std::max(w, static_cast<int>(free_variables(g).size()));
  });
  return w;
}

namespace detail {

inline Formula rename_bound(const Formula& f, const std::map<std::string, std::string>& env,
                            const std::vector<std::string>& pool) {
  if (f.is_literal()) {
    auto ts = f.terms();
    for (auto& t : ts) {
      if (t.constant) continue;
      auto it = env.find(t.name);
      if (it != env.end()) t.name = it->second;
    }
    return f.is_atom() ? Formula::atom(f.relation(), std::move(ts))
                       : Formula::neg_atom(f.relation(), std::move(ts));
  }
  if (f.is_quantifier()) {
    std::set<std::string> busy;
    for (const auto& v : free_variables(f.body())) {
      if (v != f.var()) busy.insert(env.count(v) ? env.at(v) : v);
    }
    std::optional<std::string> pick;
    if (std::find(pool.begin(), pool.end(), f.var()) != pool.end() && !busy.count(f.var())) {
      pick = f.var();
    }
    for (const auto& name : pool) {
      if (pick) break;
      if (!busy.count(name)) pick = name;
    }
    if (!pick) throw DomainError("rename: more than k free variables below " + f.var());
    auto inner = env;
    inner[f.var()] = *pick;
    return Formula::quantifier(f.quant(), *pick, rename_bound(f.body(), inner, pool));
  }
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(rename_bound(c, env, pool));
  return f.with_children(std::move(kids));
}

}  // namespace detail

// Reuses k variable names for bound variables. Free variables keep their names.
inline Formula rename_to_k_vars(const Formula& f, int k) {
  if (fokm_width(f) > k) {
    throw DomainError("rename: formula is not in FO^" + std::to_string(k) + "_m (width " +
                      std::to_string(fokm_width(f)) + ")");
  }
  auto fv = free_variables(f);
  std::vector<std::string> pool(fv.begin(), fv.end());
  auto all = variables(f);
  std::vector<std::string> bound_order;
  for_each_node(f, [&](const Formula& g, const NodePath&) {
    if (g.is_quantifier() && std::find(bound_order.begin(), bound_order.end(), g.var()) == bound_order.end()) {
      bound_order.push_back(g.var());
    }
  });
  for (const auto& v : bound_order) {
    if (static_cast<int>(pool.size()) >= k) break;
    if (!fv.count(v)) pool.push_back(v);
  }
  for (int i = 1; static_cast<int>(pool.size()) < k; ++i) {
    std::string cand = "v" + std::to_string(i);
    if (!all.count(cand)) pool.push_back(cand);
  }
  return detail::rename_bound(f, {}, pool);
}

inline int variable_count(const Formula& f) { return static_cast<int>(variables(f).size()); }

// Syntax-tree decomposition: one node per subformula, bag = its free variables.
inline FormulaDecomposition decomposition_from_fokm(const Formula& f) {
  FormulaDecomposition out;
  out.sg = stratify(f, compute_ead(f));
  std::map<NodePath, int> node_of;
  for_each_node(f, [&](const Formula& g, const NodePath& p) {
    std::vector<int> bag;
    for (const auto& v : free_variables(g)) bag.push_back(out.sg.graph.index_of(v));
    int par = -1;
    if (!p.empty()) par = node_of.at(NodePath(p.begin(), p.end() - 1));
    node_of[p] = out.td.add_node(par, std::move(bag));
  });
  out.width = out.td.width();
  return out;
}

}  // namespace fotw
