#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>
#include <string>

#include "support.hpp"

using namespace fotw;
using Depths = std::map<std::string, int>;

TEST(Preceq, ChainExample) {
  auto f = testkit::fixture_formula("preceq_example");
  auto a = compute_preceq(f);
  EXPECT_EQ(a.ead_map(), (Depths{{"x", 1}, {"y", 2}, {"z", 3}, {"u", 4}}));
  for (auto [x, y] : {std::pair{"x", "y"}, {"x", "z"}, {"x", "u"}, {"y", "z"}, {"y", "u"}, {"z", "u"}}) {
    EXPECT_TRUE(a.precedes(x, y)) << x << " " << y;
    EXPECT_FALSE(a.precedes(y, x)) << y << " " << x;
  }
}

TEST(Preceq, EntanglementExample) {
  auto f = testkit::fixture_formula("entanglement");
  auto a = compute_preceq(f);
  EXPECT_EQ(a.ead_map(), (Depths{{"x", 2}, {"x'", 2}, {"y", 3}}));
  EXPECT_TRUE(a.entangled[a.id("x")][a.id("x'")]);
  EXPECT_TRUE(a.entangled[a.id("x")][a.id("y")]);
  EXPECT_TRUE(a.precedes("x", "y"));
  EXPECT_TRUE(a.precedes("x'", "y"));
}

TEST(Preceq, NonEntanglementPair) {
  auto phi = testkit::fixture_formula("non_entanglement_phi");
  auto a = compute_preceq(phi);
  EXPECT_EQ(a.ead_map(), (Depths{{"x", 2}, {"y", 1}, {"z", 2}}));
  EXPECT_EQ(compute_ad(phi), (Depths{{"x", 2}, {"y", 3}, {"z", 4}}));
  std::set<std::pair<std::string, std::string>> strict;
  for (auto [x, y] : a.pairs(a.preceq)) {
    if (x != y) strict.emplace(x, y);
  }
  EXPECT_EQ(strict, (std::set<std::pair<std::string, std::string>>{{"y", "z"}}));
  auto psi = testkit::fixture_formula("non_entanglement_psi");
  EXPECT_EQ(compute_ead(psi), a.ead_map());
}

TEST(Preceq, ReorderingFamily) {
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(compute_ead(testkit::reorder_phi(n)).at("z"), 1) << n;
    EXPECT_EQ(compute_ad(testkit::reorder_phi(n)).at("z"), 3) << n;
    // With one conjunct the two shapes coincide.
    EXPECT_EQ(compute_ead(testkit::reorder_psi(n)).at("z"), n == 1 ? 1 : 3) << n;
  }
}

TEST(Preceq, AdPrimeOfPrenexFamily) {
  auto f = testkit::reorder_phi(3);
  EXPECT_EQ(compute_ad_prime(f), compute_ad(f));
  EXPECT_THROW(compute_ad_prime(testkit::fixture_formula("non_entanglement_psi")), DomainError);
}

TEST(Preceq, FreeVariablesHaveDepthZero) {
  auto f = normalize_formula(parse_formula("exists y. (E(x,y) & P(u))"));
  auto ead = compute_ead(f);
  EXPECT_EQ(ead.at("x"), 0);
  EXPECT_EQ(ead.at("u"), 0);
  EXPECT_EQ(ead.at("y"), 1);
}

TEST(Preceq, RejectsCrookedFormula) {
  EXPECT_THROW(compute_preceq(parse_formula("(exists x. P(x)) & (exists x. Q(x))")), DomainError);
}

TEST(Preceq, PropertiesOnRandomFormulas) {
  for (int i = 0; i < 300; ++i) {
    auto rng = testkit::seeded(10, i);
    FormulaShape shape;
    shape.free_vars = i % 3;
    Formula f = random_formula(rng, shape);
    auto a = compute_preceq(f);
    auto ad = compute_ad(f);
    const auto& ix = *a.index;
    std::size_t n = a.vars().size();
    for (std::size_t x = 0; x < n; ++x) {
      const auto& name = a.vars()[x];
      EXPECT_TRUE(a.preceq[x][x]) << render(f);
      // parity encodes the quantifier; free variables sit at 0
      if (!ix.bound[x]) {
        EXPECT_EQ(a.ead[x], 0) << render(f);
      } else {
        int parity = ix.quant[x] == Quant::Exists ? 1 : 0;
        EXPECT_EQ(a.ead[x] % 2, parity) << render(f) << " " << name;
        EXPECT_EQ(ad.at(name) % 2, parity) << render(f) << " " << name;
      }
      EXPECT_LE(a.ead[x], ad.at(name)) << render(f) << " " << name;
      for (std::size_t y = 0; y < n; ++y) {
        if (a.preceq[x][y]) {
          EXPECT_TRUE(ix.leq(static_cast<int>(x), static_cast<int>(y))) << render(f);
          if (ix.bound[x] && ix.bound[y]) {
            EXPECT_LE(a.ead[x], a.ead[y]) << render(f);
          }
        }
        EXPECT_EQ(a.entangled[x][y], a.entangled[y][x]) << render(f);
        for (std::size_t z = 0; z < n; ++z) {
          if (a.preceq[x][y] && a.preceq[y][z]) {
            EXPECT_TRUE(a.preceq[x][z]) << render(f);
          }
        }
      }
    }
  }
}

// ead is the longest quantifier-alternation count along preceq chains; a direct
// recursion over the relation reproduces the dynamic program.
TEST(Preceq, EadMatchesChainRecursion) {
  for (int i = 0; i < 200; ++i) {
    auto rng = testkit::seeded(11, i);
    Formula f = random_formula(rng);
    auto a = compute_preceq(f);
    const auto& ix = *a.index;
    std::size_t n = a.vars().size();
    std::function<int(std::size_t)> depth = [&](std::size_t y) {
      int base = ix.quant[y] == Quant::Exists ? 1 : 2;
      for (std::size_t x = 0; x < n; ++x) {
        if (x == y || !ix.bound[x] || !a.preceq[x][y]) continue;
        int dx = depth(x);
        base = std::max(base, dx + (ix.quant[x] == ix.quant[y] ? 0 : 1));
      }
      return base;
    };
    for (std::size_t y = 0; y < n; ++y) {
      if (ix.bound[y]) {
        EXPECT_EQ(a.ead[y], depth(y)) << render(f) << " " << a.vars()[y];
      }
    }
  }
}
