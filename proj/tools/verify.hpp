#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fotw/all.hpp"

namespace fotw::cli {

struct InstanceOutcome {
  bool ok = true;
  std::string detail;  // empty unless !ok
};

struct Suite {
  std::string name;
  std::function<InstanceOutcome(std::mt19937_64&)> run;
};

struct SuiteReport {
  std::string name;
  int instances = 0;
  std::vector<std::pair<int, std::string>> failures;  // (instance, detail), ascending
};

inline std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t suite, int instance) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(instance)};
  return std::mt19937_64(seq);
}

inline InstanceOutcome fail(std::string what) { return {false, std::move(what)}; }

inline std::vector<Suite> verify_suites() {
  std::vector<Suite> out;

  out.push_back({"tw-oracle", [](std::mt19937_64& rng) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    auto sg = random_stratified_graph(rng, n, 0.4, 3);
    auto res = stratified_treewidth(sg);
    int bf = brute_force_tw(sg);
    if (res.width != bf) {
      return fail("stratified " + std::to_string(res.width) + " vs brute force " + std::to_string(bf));
    }
    auto chk = check_decomposition(sg, res.td);
    if (!chk.ok) return fail("invalid decomposition: " + chk.violations.front());
    auto ord = decomposition_to_ordering(sg, res.td);
    if (ordering_width(sg, ord) != bf) return fail("decomposition -> ordering lost optimality");
    auto back = ordering_to_decomposition(sg, ord);
    if (!check_decomposition(sg, back).ok || back.width() != bf) {
      return fail("ordering -> decomposition lost optimality");
    }
    return InstanceOutcome{};
  }});

  out.push_back({"depth-bounds", [](std::mt19937_64& rng) {
    FormulaShape shape;
    shape.free_vars = std::uniform_int_distribution<int>(0, 2)(rng);
    Formula f = random_formula(rng, shape);
    int w = fotw_width(f);
    int ad = stratified_treewidth(stratify(f, compute_ad(f))).width;
    if (w > ad) return fail(render(f) + ": fotw " + std::to_string(w) + " > tw(ad) " + std::to_string(ad));
    Formula p = to_prenex(f);
    int fp = fotw_width(p);
    int ew = stratified_treewidth(stratify(p, compute_ad_prime(p))).width;
    if (fp > ew) return fail(render(p) + ": fotw " + std::to_string(fp) + " > ew(ad') " + std::to_string(ew));
    return InstanceOutcome{};
  }});

  out.push_back({"xenerp", [](std::mt19937_64& rng) {
    FormulaShape shape;
    shape.free_vars = std::uniform_int_distribution<int>(0, 1)(rng);
    Formula f = random_formula(rng, shape);
    Formula g = to_xenerp(f);
    if (!is_xenerp(g)) return fail(render(f) + ": output not xenerp");
    if (!(formula_graph(f) == formula_graph(g))) return fail(render(f) + ": graph changed");
    if (compute_ead(f) != compute_ead(g)) return fail(render(f) + ": ead changed");
    auto eq = check_equivalence(f, g);
    if (!eq) return fail(render(f) + ": not equivalent\n" + eq.counterexample);
    return InstanceOutcome{};
  }});

  out.push_back({"translate", [](std::mt19937_64& rng) {
    FormulaShape shape;
    shape.max_bound = 4;
    shape.max_depth = 4;
    shape.free_vars = std::uniform_int_distribution<int>(0, 2)(rng);
    Formula f = random_formula(rng, shape);
    auto tr = translate(f);
    int w = fotw_width(f);
    if (fokm_width(tr.result) > w + 1) return fail(render(f) + ": fokm width above fotw+1");
    Formula h = rename_to_k_vars(tr.result, tr.k);
    if (variable_count(h) > std::max(w + 1, 1)) return fail(render(f) + ": too many variable names");
    auto eq = check_equivalence(f, h);
    if (!eq) return fail(render(f) + ": translation not equivalent\n" + eq.counterexample);
    return InstanceOutcome{};
  }});

  out.push_back({"eval", [](std::mt19937_64& rng) {
    FormulaShape shape;
    shape.max_bound = 4;
    shape.free_vars = std::uniform_int_distribution<int>(0, 2)(rng);
    Formula f = random_formula(rng, shape);
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    Structure s = random_structure(vocabulary_of(f), n, rng);
    if (!(evaluate(f, s) == eval_naive(f, s))) return fail(render(f) + ": mismatch on\n" + s.to_text());
    return InstanceOutcome{};
  }});

  out.push_back({"game", [](std::mt19937_64& rng) {
    int n = std::uniform_int_distribution<int>(1, 6)(rng);
    auto sg = random_stratified_graph(rng, n, 0.45, 3);
    auto rep = verify_games_theorem(sg);
    if (!rep.ok) {
      return fail("cw " + std::to_string(rep.cw) + ", moncw " + std::to_string(rep.moncw) + ", tw " +
                  std::to_string(rep.tw));
    }
    return InstanceOutcome{};
  }});

  return out;
}

// Instances run on a worker pool; each one draws from its own seeded generator,
// so the report does not depend on the thread count.
inline std::vector<SuiteReport> run_verify(std::uint64_t seed, int count, const std::string& only,
                                           unsigned threads) {
  auto suites = verify_suites();
  std::vector<SuiteReport> reports;
  for (std::size_t si = 0; si < suites.size(); ++si) {
    const auto& suite = suites[si];
    if (!only.empty() && suite.name != only) continue;
    std::vector<InstanceOutcome> results(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int i; (i = next++) < count;) {
        auto rng = instance_rng(seed, si, i);
        try {
          results[i] = suite.run(rng);
        } catch (const std::exception& e) {
          results[i] = fail(std::string("exception: ") + e.what());
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    SuiteReport rep{suite.name, count, {}};
    for (int i = 0; i < count; ++i) {
      if (!results[i].ok) rep.failures.emplace_back(i, results[i].detail);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : verify_suites()) out.push_back(s.name);
  return out;
}

}  // namespace fotw::cli
