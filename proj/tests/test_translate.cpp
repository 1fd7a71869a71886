#include <gtest/gtest.h>

#include <string>

#include "support.hpp"

using namespace fotw;

namespace {

void expect_sound_translation(const Formula& f, const std::string& label) {
  int w = fotw_width(f);
  auto tr = translate(f, true);
  EXPECT_EQ(tr.k, std::max(w + 1, 1)) << label;
  EXPECT_LE(fokm_width(tr.result), w + 1) << label;
  EXPECT_TRUE(is_nnf(tr.result)) << label;
  EXPECT_EQ(tr.depth, compute_ead(f)) << label;
  for (const auto& step : tr.steps) {
    auto d = attach(step.formula, step.tree, tr.depth);
    auto chk = check_decomposition(d.sg, d.td);
    EXPECT_TRUE(chk.ok) << label << " after case " << step.kind << " " << step.variable << ": "
                        << (chk.ok ? "" : chk.violations.front());
    EXPECT_LE(step.tree.width(), tr.k - 1) << label;
  }
  Formula h = rename_to_k_vars(tr.result, tr.k);
  EXPECT_LE(variable_count(h), std::max(w + 1, 1)) << label;
  EXPECT_EQ(free_variables(h), free_variables(f)) << label;
  auto eq = check_equivalence(f, h);
  EXPECT_TRUE(eq.equivalent) << label << " -> " << render(h) << "\n" << eq.counterexample;
}

}  // namespace

TEST(Translate, StarUsesOneMoreVariableThanWidth) {
  for (int n = 1; n <= 4; ++n) {
    Formula f = testkit::star_formula(n);
    auto tr = translate(f);
    EXPECT_EQ(tr.k, n + 1);
    Formula h = rename_to_k_vars(tr.result, tr.k);
    EXPECT_LE(variable_count(h), n + 1);
    EXPECT_TRUE(check_equivalence(f, h).equivalent) << render(h);
  }
}

TEST(Translate, ReorderFamilyNeedsTwoVariables) {
  for (int n = 1; n <= 4; ++n) {
    Formula f = testkit::reorder_phi(n);
    auto tr = translate(f);
    EXPECT_EQ(tr.k, 2);
    Formula h = rename_to_k_vars(tr.result, 2);
    EXPECT_LE(variable_count(h), 2);
    EXPECT_TRUE(check_equivalence(f, h, {.max_domain = 2}).equivalent) << render(h);
  }
}

TEST(Translate, FixtureFormulas) {
  for (const char* name : {"preceq_example", "entanglement", "non_entanglement_phi",
                           "non_entanglement_psi", "reorder_psi_2", "star3", "has_successor",
                           "every_successor"}) {
    expect_sound_translation(testkit::fixture_formula(name), name);
  }
}

TEST(Translate, QuantifierFreeInputIsKept) {
  Formula f = parse_formula("P(x) & (Q(y) | E(x,y))");
  auto tr = translate(f);
  EXPECT_EQ(tr.result, f);
  EXPECT_EQ(tr.k, 2);
}

TEST(Translate, Preconditions) {
  Formula star = testkit::star_formula(2);
  auto d = fotw_decomposition(star);
  EXPECT_THROW(translate(star, d, 2), DomainError);
  EXPECT_NO_THROW(translate(star, d, 3));
  EXPECT_THROW(translate(parse_formula("~(exists x. P(x))"), d, 3), DomainError);
  auto wrong = d;
  wrong.td = TreeDecomposition::single({0});
  EXPECT_THROW(translate(star, wrong, 3), DomainError);
}

TEST(Translate, WiderKAccepted) {
  Formula f = testkit::star_formula(2);
  auto tr = translate(f, fotw_decomposition(f), 5);
  EXPECT_EQ(tr.k, 5);
  EXPECT_TRUE(check_equivalence(f, rename_to_k_vars(tr.result, 5)).equivalent);
}

TEST(Translate, RandomFormulas) {
  for (int i = 0; i < 120; ++i) {
    auto rng = testkit::seeded(50, i);
    FormulaShape shape;
    shape.max_bound = 4;
    shape.max_depth = 4;
    shape.free_vars = i % 3;
    Formula f = random_formula(rng, shape);
    expect_sound_translation(f, render(f));
  }
}

TEST(Rename, ReusesNames) {
  Formula f = parse_formula("(exists a. P(a)) & (exists b. (P(b) & (exists c. E(b,c))))");
  Formula h = rename_to_k_vars(f, 2);
  EXPECT_LE(variable_count(h), 2);
  EXPECT_TRUE(check_equivalence(f, h).equivalent);
  EXPECT_THROW(rename_to_k_vars(parse_formula("exists a. exists b. exists c. (E(a,b) & E(b,c) & E(a,c))"), 2),
               DomainError);
}

TEST(Rename, FreeVariablesKeepTheirNames) {
  Formula f = parse_formula("exists y. (E(x,y) & (exists z. E(y,z)))");
  Formula h = rename_to_k_vars(f, 2);
  EXPECT_EQ(free_variables(h), std::set<std::string>{"x"});
  EXPECT_LE(variable_count(h), 2);
  EXPECT_TRUE(check_equivalence(f, h).equivalent);
}

TEST(FokmWidth, CountsFreeVariablesOfSubformulas) {
  EXPECT_EQ(fokm_width(parse_formula("exists x. exists y. E(x,y)")), 2);
  EXPECT_EQ(fokm_width(parse_formula("P(@c)")), 0);
  auto d = decomposition_from_fokm(normalize_formula(parse_formula("exists x. (P(x) & (exists y. E(x,y)))")));
  EXPECT_TRUE(check_decomposition(d.sg, d.td));
  EXPECT_EQ(d.width, 1);
}

// Eliminating x2 breaks the chain x1 < x2 < x3; the leaf {x3} must still be
// picked before the root {x1}.
TEST(Translate, BrokenChainKeepsInputDepths) {
  Formula f = normalize_formula(parse_formula("forall x1. exists x2 x3. ((Q(x2) | E(x1,x2) | Q(x3)) & Q(x3))"));
  expect_sound_translation(f, render(f));
}
