#include <gtest/gtest.h>

#include "support.hpp"

using namespace fotw;

TEST(Xenerp, FixtureVerdicts) {
  EXPECT_FALSE(is_xenerp(testkit::fixture_formula("non_entanglement_phi")));
  EXPECT_TRUE(is_xenerp(testkit::fixture_formula("non_entanglement_psi")));
}

TEST(Xenerp, RewritesNonEntanglementExample) {
  auto phi = testkit::fixture_formula("non_entanglement_phi");
  auto out = to_xenerp(phi);
  EXPECT_TRUE(is_xenerp(out));
  EXPECT_EQ(compute_ead(out), compute_ead(phi));
  EXPECT_TRUE(formula_graph(out) == formula_graph(phi));
  EXPECT_TRUE(check_equivalence(out, phi).equivalent);
  EXPECT_TRUE(check_equivalence(out, testkit::fixture_formula("non_entanglement_psi")).equivalent);
}

TEST(Xenerp, XenerpInputUnchanged) {
  auto psi = testkit::fixture_formula("non_entanglement_psi");
  EXPECT_EQ(to_xenerp(psi), psi);
  auto f = parse_formula("exists x. (P(x) & Q(x))");
  EXPECT_EQ(to_xenerp(f), f);
}

TEST(Xenerp, WitnessNamesMisplacedVariable) {
  auto chk = is_xenerp(parse_formula("exists x. (P(x) & Q(@c))"));
  EXPECT_FALSE(chk);
  EXPECT_EQ(chk.witness, "x");
}

TEST(Replacement, PushIntoCombination) {
  auto f = parse_formula("exists x. (P(x) & Q(@c))");
  auto g = apply_replacement(f, Replacement::PushIntoCombination, {});
  EXPECT_EQ(g, parse_formula("(exists x. P(x)) & Q(@c)"));
  EXPECT_THROW(apply_replacement(parse_formula("exists x. (P(x) & Q(x))"),
                                 Replacement::PushIntoCombination, {}),
               DomainError);
}

TEST(Replacement, PullOutOfCombination) {
  auto f = parse_formula("(exists x. P(x)) & Q(@c)");
  auto g = apply_replacement(f, Replacement::PullOutOfCombination, {});
  EXPECT_EQ(g, parse_formula("exists x. (P(x) & Q(@c))"));
  EXPECT_THROW(apply_replacement(parse_formula("P(@c) & Q(@c)"), Replacement::PullOutOfCombination, {}),
               DomainError);
}

TEST(Replacement, SwapSameQuantifier) {
  auto f = parse_formula("exists x. exists y. E(x,y)");
  EXPECT_EQ(apply_replacement(f, Replacement::SwapSameQuantifier, {}),
            parse_formula("exists y. exists x. E(x,y)"));
  EXPECT_THROW(apply_replacement(parse_formula("exists x. forall y. E(x,y)"),
                                 Replacement::SwapSameQuantifier, {}),
               DomainError);
}

TEST(Replacement, SwapNeedsNestedScopes) {
  // phi_x is all of the body, not a proper part of phi_y.
  EXPECT_THROW(apply_replacement(parse_formula("forall x. exists y. E(x,y)"),
                                 Replacement::SwapXenerpScope, {}),
               DomainError);
}

TEST(Replacement, RandomApplicationsPreserveMeaning) {
  int applied = 0;
  for (int i = 0; i < 300; ++i) {
    auto rng = testkit::seeded(20, i);
    Formula f = random_formula(rng);
    std::vector<std::pair<Replacement, NodePath>> sites;
    for_each_node(f, [&](const Formula&, const NodePath& p) {
      for (auto r : {Replacement::PushIntoCombination, Replacement::PullOutOfCombination,
                     Replacement::SwapSameQuantifier, Replacement::SwapXenerpScope}) {
        sites.emplace_back(r, p);
      }
    });
    for (const auto& [r, p] : sites) {
      Formula g;
      try {
        g = apply_replacement(f, r, p);
      } catch (const DomainError&) {
        continue;
      }
      ++applied;
      EXPECT_TRUE(formula_graph(g) == formula_graph(f)) << render(f);
      EXPECT_EQ(compute_ead(g), compute_ead(f)) << render(f) << " -> " << render(g);
      auto eq = check_equivalence(f, g, {.max_domain = 2});
      EXPECT_TRUE(eq.equivalent) << render(f) << " -> " << render(g);
    }
  }
  EXPECT_GT(applied, 100);
}

TEST(Xenerp, RandomFormulas) {
  for (int i = 0; i < 150; ++i) {
    auto rng = testkit::seeded(21, i);
    FormulaShape shape;
    shape.free_vars = i % 2;
    Formula f = random_formula(rng, shape);
    Formula g = to_xenerp(f);
    EXPECT_TRUE(is_xenerp(g)) << render(f);
    EXPECT_TRUE(formula_graph(g) == formula_graph(f)) << render(f);
    EXPECT_EQ(compute_ead(g), compute_ead(f)) << render(f);
    EXPECT_EQ(to_xenerp(g), g) << render(f);
    auto eq = check_equivalence(f, g, {.max_domain = 2});
    EXPECT_TRUE(eq.equivalent) << render(f) << "\n" << eq.counterexample;
  }
}

TEST(Prenex, IsPrenexAndEquivalent) {
  for (int i = 0; i < 150; ++i) {
    auto rng = testkit::seeded(22, i);
    Formula f = random_formula(rng);
    Formula p = to_prenex(f);
    EXPECT_TRUE(is_prenex(p)) << render(f);
    EXPECT_TRUE(is_straight(p) && is_nnf(p)) << render(f);
    EXPECT_TRUE(check_equivalence(f, p, {.max_domain = 2}).equivalent) << render(f);
  }
}
