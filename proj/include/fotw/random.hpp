#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fotw/formula.hpp"
#include "fotw/graph.hpp"
#include "fotw/normal_forms.hpp"

namespace fotw {

struct FormulaShape {
  int max_bound = 5;  // quantified variables
  int free_vars = 0;
  int max_depth = 5;
  bool disjunctions = true;
  std::vector<std::pair<std::string, int>> relations{{"P", 1}, {"Q", 1}, {"E", 2}};
  std::vector<std::string> constants;
};

namespace detail {

template <class Rng>
class FormulaGenerator {
 public:
  FormulaGenerator(Rng& rng, const FormulaShape& shape) : rng_(rng), shape_(shape) {}

  Formula run() {
    std::vector<std::string> scope;
    for (int i = 1; i <= shape_.free_vars; ++i) scope.push_back("u" + std::to_string(i));
    if (scope.empty()) return quantifier(shape_.max_depth, scope);
    return gen(shape_.max_depth, scope);
  }

 private:
  double uniform() { return std::uniform_real_distribution<double>(0, 1)(rng_); }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Formula gen(int depth, std::vector<std::string>& scope) {
    double r = uniform();
    if (depth <= 0 || r < 0.25) return literal(scope);
    if (r < 0.6 && bound_ < shape_.max_bound) return quantifier(depth, scope);
    int n = 2 + (uniform() < 0.3 ? 1 : 0);
    std::vector<Formula> kids;
    for (int i = 0; i < n; ++i) kids.push_back(gen(depth - 1, scope));
    bool conj = !shape_.disjunctions || uniform() < 0.5;
    return conj ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
  }

  Formula quantifier(int depth, std::vector<std::string>& scope) {
    std::string v = "x" + std::to_string(++bound_);
    Quant q = uniform() < 0.5 ? Quant::Exists : Quant::Forall;
    scope.push_back(v);
    Formula body = gen(depth - 1, scope);
    scope.pop_back();
    return Formula::quantifier(q, v, std::move(body));
  }

  Formula literal(const std::vector<std::string>& scope) {
    const auto& [rel, ar] = shape_.relations[pick(static_cast<int>(shape_.relations.size()))];
    std::vector<Term> ts;
    for (int i = 0; i < ar; ++i) {
      if (!shape_.constants.empty() && uniform() < 0.1) {
        ts.push_back(Term::cons(shape_.constants[pick(static_cast<int>(shape_.constants.size()))]));
      } else if (uniform() < 0.5) {
        ts.push_back(Term::var(scope.back()));
      } else {
        ts.push_back(Term::var(scope[pick(static_cast<int>(scope.size()))]));
      }
    }
    bool neg = uniform() < 0.35;
    return neg ? Formula::neg_atom(rel, std::move(ts)) : Formula::atom(rel, std::move(ts));
  }

  Rng& rng_;
  const FormulaShape& shape_;
  int bound_ = 0;
};

}  // namespace detail

// A random straight NNF formula; variables x1, x2, ... are bound and u1, u2, ... free.
template <class Rng>
Formula random_formula(Rng& rng, const FormulaShape& shape = {}) {
  return normalize_formula(detail::FormulaGenerator<Rng>(rng, shape).run());
}

// Existentially quantified conjunction of E/2 and P/1 atoms over v1..vn, with
// v1..v_free left free. Every variable occurs in some atom.
template <class Rng>
Formula random_cq(Rng& rng, int vars, int atoms, int free = 0) {
  std::uniform_int_distribution<int> pick(1, vars);
  std::vector<Formula> body;
  auto name = [](int i) { return "v" + std::to_string(i); };
  for (int i = 1; i <= vars; ++i) {
    if (i > 1 && std::bernoulli_distribution(0.8)(rng)) {
      int j = std::uniform_int_distribution<int>(1, i - 1)(rng);
      body.push_back(Formula::atom("E", {Term::var(name(j)), Term::var(name(i))}));
    } else {
      body.push_back(Formula::atom("P", {Term::var(name(i))}));
    }
  }
  for (int a = vars; a < atoms; ++a) {
    body.push_back(Formula::atom("E", {Term::var(name(pick(rng))), Term::var(name(pick(rng)))}));
  }
  Formula f = body.size() == 1 ? body.front() : Formula::conj(std::move(body));
  for (int i = vars; i > free; --i) f = Formula::exists(name(i), f);
  return f;
}

// Vertices v0..v(n-1) with depths uniform in 0..max_depth and edges with probability p.
template <class Rng>
StratifiedGraph random_stratified_graph(Rng& rng, int n, double p, int max_depth) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  StratifiedGraph sg{Graph(names), {}};
  std::uniform_int_distribution<int> depth(0, max_depth);
  std::bernoulli_distribution edge(p);
  for (int i = 0; i < n; ++i) sg.depth.push_back(depth(rng));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (edge(rng)) sg.graph.add_edge(u, v);
    }
  }
  return sg;
}

}  // namespace fotw
