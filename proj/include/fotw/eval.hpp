#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/formula.hpp"
#include "fotw/normal_forms.hpp"
#include "fotw/structure.hpp"
#include "fotw/translate.hpp"

namespace fotw {

// phi(A): tuples over the schema (variables in lexicographic order). A sentence
// has an empty schema and is TRUE iff it holds the empty tuple.
struct Relation {
  std::vector<std::string> schema;
  std::vector<std::vector<int>> tuples;  // sorted, no duplicates

  bool truth() const { return !tuples.empty(); }
  std::size_t size() const { return tuples.size(); }

  void normalize() {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  }

  friend bool operator==(const Relation&, const Relation&) = default;

  std::string to_text(const Structure& s) const {
    std::ostringstream os;
    if (schema.empty()) {
      os << (truth() ? "TRUE" : "FALSE") << '\n';
      return os.str();
    }
    for (std::size_t i = 0; i < schema.size(); ++i) os << (i ? "\t" : "") << schema[i];
    os << '\n';
    for (const auto& t : tuples) {
      for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "\t" : "") << s.universe[t[i]];
      os << '\n';
    }
    return os.str();
  }
};

namespace detail {

// Tarski semantics over a fixed structure, compiled to variable slots. Slots
// 0..frees-1 hold the given free variables; the structure must outlive it.
class NaiveEvaluator {
 public:
  NaiveEvaluator(const Formula& f, const Structure& s, const std::vector<std::string>& frees)
      : n_(static_cast<int>(s.domain_size())) {
    std::map<std::string, int> env;
    for (const auto& v : frees) env[v] = slots_++;
    root_ = compile(f, s, env);
  }

  int slots() const { return slots_; }

  bool holds(std::vector<int>& assign) const { return eval(nodes_[root_], assign); }

 private:
  struct Node {
    Kind kind;
    Quant quant = Quant::Exists;
    NormalForm form = NormalForm::Dnf;
    const std::vector<char>* table = nullptr;
    std::vector<int> args;                 // slot, or -1 for a constant
    std::vector<const int*> consts;        // constant value per argument
    std::vector<int> kids;
    std::vector<Clause> clauses;
    int slot = -1;
  };

  int compile(const Formula& f, const Structure& s, std::map<std::string, int>& env) {
    Node node;
    node.kind = f.kind();
    switch (f.kind()) {
      case Kind::Atom:
      case Kind::NegAtom: {
        node.table = &s.tables.at(f.relation());
        for (const auto& t : f.terms()) {
          if (t.constant) {
            node.args.push_back(-1);
            node.consts.push_back(&s.constants.at(t.name));
          } else {
            auto it = env.find(t.name);
            if (it == env.end()) it = env.emplace(t.name, slots_++).first;  // unlisted free variable
            node.args.push_back(it->second);
            node.consts.push_back(nullptr);
          }
        }
        break;
      }
      case Kind::Quantifier: {
        node.quant = f.quant();
        node.slot = slots_++;
        auto saved = env.find(f.var()) == env.end() ? -1 : env[f.var()];
        env[f.var()] = node.slot;
        node.kids.push_back(compile(f.body(), s, env));
        if (saved < 0) {
          env.erase(f.var());
        } else {
          env[f.var()] = saved;
        }
        break;
      }
      case Kind::Not:
        node.kids.push_back(compile(f.body(), s, env));
        break;
      default:
        for (const auto& c : f.children()) node.kids.push_back(compile(c, s, env));
        node.form = f.form();
        node.clauses = f.clauses();
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool eval(const Node& node, std::vector<int>& a) const {
    switch (node.kind) {
      case Kind::Atom:
      case Kind::NegAtom: {
        std::size_t o = 0;
        for (std::size_t i = 0; i < node.args.size(); ++i) {
          int e = node.args[i] >= 0 ? a[node.args[i]] : *node.consts[i];
          o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(e);
        }
        bool v = (*node.table)[o] != 0;
        return node.kind == Kind::Atom ? v : !v;
      }
      case Kind::And:
        for (int k : node.kids) {
          if (!eval(nodes_[k], a)) return false;
        }
        return true;
      case Kind::Or:
        for (int k : node.kids) {
          if (eval(nodes_[k], a)) return true;
        }
        return false;
      case Kind::Not:
        return !eval(nodes_[node.kids[0]], a);
      case Kind::Quantifier: {
        bool want = node.quant == Quant::Exists;
        int saved = a[node.slot];
        bool result = !want;
        for (int e = 0; e < n_; ++e) {
          a[node.slot] = e;
          if (eval(nodes_[node.kids[0]], a) == want) {
            result = want;
            break;
          }
        }
        a[node.slot] = saved;
        return result;
      }
      case Kind::Combination: {
        bool dnf = node.form == NormalForm::Dnf;
        for (const auto& clause : node.clauses) {
          bool all = true;
          for (auto i : clause) {
            if (eval(nodes_[node.kids[i]], a) != dnf) {
              all = false;
              break;
            }
          }
          if (all) return dnf;
        }
        return !dnf;
      }
    }
    return false;
  }

  int n_;
  int slots_ = 0;
  int root_ = -1;
  std::vector<Node> nodes_;
};

// Calls fn on every assignment of `count` slots over an n-element universe.
template <class Fn>
void for_each_assignment(std::vector<int>& a, int count, int n, Fn&& fn) {
  std::fill(a.begin(), a.begin() + count, 0);
  for (;;) {
    fn();
    int i = 0;
    while (i < count && ++a[i] == n) a[i++] = 0;
    if (i == count) return;
  }
}

inline std::vector<std::string> schema_of(const Formula& f) {
  auto fv = free_variables(f);
  return {fv.begin(), fv.end()};
}

}  // namespace detail

// Direct recursive semantics. Returns the empty relation when f uses a symbol
// the structure does not interpret.
inline Relation eval_naive(const Formula& f, const Structure& s) {
  Relation out{detail::schema_of(f), {}};
  if (!s.vocabulary.contains(vocabulary_of(f))) return out;
  detail::NaiveEvaluator ev(f, s, out.schema);
  std::vector<int> a(ev.slots(), 0);
  int m = static_cast<int>(out.schema.size());
  detail::for_each_assignment(a, m, static_cast<int>(s.domain_size()), [&] {
    if (ev.holds(a)) out.tuples.emplace_back(a.begin(), a.begin() + m);
  });
  out.normalize();
  return out;
}

namespace detail {

// Bottom-up relational evaluation; every intermediate table has at most n^k rows.
class FokmEvaluator {
 public:
  FokmEvaluator(const Structure& s, int k) : s_(s), n_(static_cast<int>(s.domain_size())), k_(k) {
    limit_ = std::pow(static_cast<double>(n_), k_);
  }

  Relation eval(const Formula& f) {
    Relation r = eval_node(f);
    if (static_cast<double>(r.size()) > limit_) {
      throw Error("eval_fokm: intermediate relation exceeds n^k rows");
    }
    return r;
  }

 private:
  Relation eval_node(const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom:
      case Kind::NegAtom:
        return literal(f);
      case Kind::And: {
        Relation acc = eval(f.children()[0]);
        for (std::size_t i = 1; i < f.children().size(); ++i) acc = join(acc, eval(f.children()[i]));
        return acc;
      }
      case Kind::Or: {
        std::vector<Relation> parts;
        std::set<std::string> all;
        for (const auto& c : f.children()) {
          parts.push_back(eval(c));
          all.insert(parts.back().schema.begin(), parts.back().schema.end());
        }
        std::vector<std::string> schema(all.begin(), all.end());
        Relation out{schema, {}};
        for (const auto& p : parts) {
          auto e = extend(p, schema);
          out.tuples.insert(out.tuples.end(), e.tuples.begin(), e.tuples.end());
        }
        out.normalize();
        return out;
      }
      case Kind::Quantifier: {
        Relation body = eval(f.body());
        auto it = std::find(body.schema.begin(), body.schema.end(), f.var());
        if (it == body.schema.end()) return body;
        std::size_t col = static_cast<std::size_t>(it - body.schema.begin());
        Relation out;
        out.schema = body.schema;
        out.schema.erase(out.schema.begin() + static_cast<std::ptrdiff_t>(col));
        std::map<std::vector<int>, int> count;
        for (const auto& t : body.tuples) {
          auto p = t;
          p.erase(p.begin() + static_cast<std::ptrdiff_t>(col));
          ++count[p];
        }
        for (const auto& [p, c] : count) {
          if (f.quant() == Quant::Exists || c == n_) out.tuples.push_back(p);
        }
        return out;
      }
      case Kind::Combination:
        return eval_node(eliminate_combinations(f));
      case Kind::Not:
        throw DomainError("eval_fokm: formula is not in NNF");
    }
    return {};
  }

  Relation literal(const Formula& f) {
    auto schema = schema_of(f);
    std::map<std::string, int> col;
    for (std::size_t i = 0; i < schema.size(); ++i) col[schema[i]] = static_cast<int>(i);
    const auto& table = s_.tables.at(f.relation());
    Relation out{schema, {}};
    std::vector<int> a(schema.size(), 0);
    auto cell = [&] {
      std::size_t o = 0;
      for (const auto& t : f.terms()) {
        int e = t.constant ? s_.constants.at(t.name) : a[col.at(t.name)];
        o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(e);
      }
      return table[o] != 0;
    };
    bool want = f.is_atom();
    for_each_assignment(a, static_cast<int>(a.size()), n_, [&] {
      if (cell() == want) out.tuples.push_back(a);
    });
    return out;
  }

  Relation join(const Relation& x, const Relation& y) {
    const Relation& small = x.size() <= y.size() ? x : y;
    const Relation& large = x.size() <= y.size() ? y : x;
    std::set<std::string> all(x.schema.begin(), x.schema.end());
    all.insert(y.schema.begin(), y.schema.end());
    Relation out{{all.begin(), all.end()}, {}};
    std::vector<std::pair<int, int>> common;  // (column in small, column in large)
    for (std::size_t i = 0; i < small.schema.size(); ++i) {
      auto it = std::find(large.schema.begin(), large.schema.end(), small.schema[i]);
      if (it != large.schema.end()) common.emplace_back(static_cast<int>(i), static_cast<int>(it - large.schema.begin()));
    }
    std::map<std::vector<int>, std::vector<const std::vector<int>*>> index;
    for (const auto& t : small.tuples) {
      std::vector<int> key;
      for (auto [i, j] : common) key.push_back(t[i]);
      index[key].push_back(&t);
    }
    std::vector<std::pair<int, int>> from;  // output column -> (0 small / 1 large, column)
    for (const auto& v : out.schema) {
      auto it = std::find(small.schema.begin(), small.schema.end(), v);
      if (it != small.schema.end()) {
        from.emplace_back(0, static_cast<int>(it - small.schema.begin()));
      } else {
        auto jt = std::find(large.schema.begin(), large.schema.end(), v);
        from.emplace_back(1, static_cast<int>(jt - large.schema.begin()));
      }
    }
    for (const auto& u : large.tuples) {
      std::vector<int> key;
      for (auto [i, j] : common) key.push_back(u[j]);
      auto it = index.find(key);
      if (it == index.end()) continue;
      for (const auto* t : it->second) {
        std::vector<int> row;
        for (auto [side, c] : from) row.push_back(side == 0 ? (*t)[c] : u[c]);
        out.tuples.push_back(std::move(row));
      }
    }
    out.normalize();
    return out;
  }

 public:
  // Cylindrification of r to a superset schema.
  Relation extend(const Relation& r, const std::vector<std::string>& schema) const {
    Relation out{schema, {}};
    std::vector<int> src(schema.size(), -1);
    std::vector<int> missing;
    for (std::size_t i = 0; i < schema.size(); ++i) {
      auto it = std::find(r.schema.begin(), r.schema.end(), schema[i]);
      if (it == r.schema.end()) {
        missing.push_back(static_cast<int>(i));
      } else {
        src[i] = static_cast<int>(it - r.schema.begin());
      }
    }
    std::vector<int> fill(missing.size(), 0);
    for (const auto& t : r.tuples) {
      for_each_assignment(fill, static_cast<int>(fill.size()), n_, [&] {
        std::vector<int> row(schema.size());
        for (std::size_t i = 0; i < schema.size(); ++i) {
          if (src[i] >= 0) row[i] = t[src[i]];
        }
        for (std::size_t m = 0; m < missing.size(); ++m) row[missing[m]] = fill[m];
        out.tuples.push_back(std::move(row));
      });
    }
    out.normalize();
    return out;
  }

 private:
  const Structure& s_;
  int n_;
  int k_;
  double limit_ = 0;
};

}  // namespace detail

// Bottom-up evaluation of an FO^k_m formula (k defaults to its own width).
inline Relation eval_fokm(const Formula& f, const Structure& s, int k = -1) {
  int w = fokm_width(f);
  if (k < 0) k = w;
  if (w > k) {
    throw DomainError("eval_fokm: formula has a subformula with " + std::to_string(w) +
                      " free variables, more than k = " + std::to_string(k));
  }
  auto schema = detail::schema_of(f);
  if (!s.vocabulary.contains(vocabulary_of(f))) return {schema, {}};
  detail::FokmEvaluator ev(s, k);
  return ev.extend(ev.eval(f), schema);
}

// straighten, NNF, fotw, FO^k_m translation, renaming to k variables, evaluation.
inline Relation evaluate(const Formula& f, const Structure& s) {
  auto schema = detail::schema_of(f);
  if (!s.vocabulary.contains(vocabulary_of(f))) return {schema, {}};
  Formula g = normalize_formula(f);
  auto tr = translate(g);
  Formula h = rename_to_k_vars(tr.result, tr.k);
  detail::FokmEvaluator ev(s, tr.k);
  return ev.extend(ev.eval(h), schema);
}

}  // namespace fotw
