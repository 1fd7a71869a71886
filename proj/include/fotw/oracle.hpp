#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fotw/eval.hpp"
#include "fotw/formula.hpp"
#include "fotw/structure.hpp"

namespace fotw {

struct EquivalenceReport {
  bool equivalent = true;
  bool exhaustive = true;
  std::size_t structures = 0;
  std::string counterexample;  // structure text plus the differing assignment
  explicit operator bool() const { return equivalent; }
};

struct EquivalenceOptions {
  int max_domain = 3;
  double exhaustive_bits = 20;  // enumerate every structure up to this many relation bits
  int samples = 1000;           // random structures per domain size otherwise
  std::uint64_t seed = 1;
};

inline Vocabulary merged_vocabulary(const Formula& a, const Formula& b) {
  Vocabulary v = vocabulary_of(a);
  Vocabulary w = vocabulary_of(b);
  for (const auto& [r, ar] : w.relations) v.add_relation(r, ar);
  v.constants.insert(w.constants.begin(), w.constants.end());
  return v;
}

// Compares a and b on every assignment of their free variables over all (or
// sampled) structures with 1..max_domain elements.
inline EquivalenceReport check_equivalence(const Formula& a, const Formula& b,
                                           const EquivalenceOptions& opt = {}) {
  EquivalenceReport rep;
  Vocabulary voc = merged_vocabulary(a, b);
  std::set<std::string> fv = free_variables(a);
  auto fb = free_variables(b);
  fv.insert(fb.begin(), fb.end());
  std::vector<std::string> frees(fv.begin(), fv.end());
  int m = static_cast<int>(frees.size());
  std::mt19937_64 rng(opt.seed);

  auto compare = [&](const Structure& s) {
    if (!rep.equivalent) return;
    ++rep.structures;
    detail::NaiveEvaluator ea(a, s, frees);
    detail::NaiveEvaluator eb(b, s, frees);
    std::vector<int> va(ea.slots(), 0);
    std::vector<int> vb(eb.slots(), 0);
    int n = static_cast<int>(s.domain_size());
    detail::for_each_assignment(va, m, n, [&] {
      if (!rep.equivalent) return;
      std::copy(va.begin(), va.begin() + m, vb.begin());
      if (ea.holds(va) != eb.holds(vb)) {
        rep.equivalent = false;
        rep.counterexample = s.to_text();
        for (int i = 0; i < m; ++i) rep.counterexample += frees[i] + " = " + s.universe[va[i]] + "\n";
      }
    });
  };

  for (int n = 1; n <= opt.max_domain && rep.equivalent; ++n) {
    if (relation_bits(voc, n) <= opt.exhaustive_bits) {
      for_each_structure(voc, n, compare);
    } else {
      rep.exhaustive = false;
      for (int i = 0; i < opt.samples && rep.equivalent; ++i) compare(random_structure(voc, n, rng));
    }
  }
  return rep;
}

}  // namespace fotw
