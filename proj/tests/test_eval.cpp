#include <gtest/gtest.h>

#include <string>

#include "support.hpp"

using namespace fotw;

namespace {

Structure fixture_structure(const std::string& name) {
  return parse_structure(read_file(testkit::fixture_path(name)));
}

}  // namespace

TEST(Eval, SentencesOnFixtures) {
  Formula every = parse_formula(read_file(testkit::fixture_path("every_successor.fo")));
  EXPECT_TRUE(evaluate(every, fixture_structure("cycle3.rs")).truth());
  EXPECT_FALSE(evaluate(every, fixture_structure("path3.rs")).truth());
  EXPECT_TRUE(eval_naive(every, fixture_structure("cycle3.rs")).truth());
}

TEST(Eval, OpenFormulaTable) {
  Formula f = parse_formula(read_file(testkit::fixture_path("has_successor.fo")));
  auto s = fixture_structure("path3.rs");
  Relation r = evaluate(f, s);
  EXPECT_EQ(r.schema, std::vector<std::string>{"x"});
  EXPECT_EQ(r.tuples, (std::vector<std::vector<int>>{{0}, {1}}));
  EXPECT_EQ(r.to_text(s), "x\na\nb\n");
  EXPECT_EQ(r, eval_naive(f, s));
}

TEST(Eval, ConstantsAndSentenceText) {
  auto s = parse_structure("domain a b\nrelation P 1\nb\nend\nconstant c b\n");
  Relation r = evaluate(parse_formula("P(@c)"), s);
  EXPECT_EQ(r.to_text(s), "TRUE\n");
  EXPECT_EQ(evaluate(parse_formula("~P(@c)"), s).to_text(s), "FALSE\n");
}

TEST(Eval, VocabularyMismatchGivesEmptyRelation) {
  auto s = fixture_structure("cycle3.rs");
  Relation r = evaluate(parse_formula("exists x. Q(x)"), s);
  EXPECT_FALSE(r.truth());
  EXPECT_EQ(eval_naive(parse_formula("exists x. E(x,x,x)"), s).size(), 0u);
}

TEST(Eval, FokmRespectsWidth) {
  auto s = fixture_structure("cycle3.rs");
  Formula tri = parse_formula("exists x. exists y. exists z. (E(x,y) & E(y,z) & E(z,x))");
  EXPECT_THROW(eval_fokm(tri, s, 2), DomainError);
  EXPECT_TRUE(eval_fokm(tri, s).truth());
}

TEST(Eval, FreeVariablesOutsideAtomsRangeOverUniverse) {
  auto s = fixture_structure("path3.rs");
  // y is free but only constrained through the disjunction
  Formula f = parse_formula("E(x,x) | P(y)");
  auto s2 = parse_structure("domain a b\nrelation E 2\na a\nend\nrelation P 1\nend\n");
  Relation r = evaluate(f, s2);
  EXPECT_EQ(r.schema, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(r.tuples, (std::vector<std::vector<int>>{{0, 0}, {0, 1}}));
  EXPECT_EQ(r, eval_naive(f, s2));
  (void)s;
}

TEST(Eval, PipelineAgreesWithNaiveOnRandomPairs) {
  for (int i = 0; i < 250; ++i) {
    auto rng = testkit::seeded(60, i);
    FormulaShape shape;
    shape.max_bound = 4;
    shape.free_vars = i % 3;
    shape.constants = i % 4 == 0 ? std::vector<std::string>{"c"} : std::vector<std::string>{};
    Formula f = random_formula(rng, shape);
    int n = 1 + i % 4;
    Structure s = random_structure(vocabulary_of(f), n, rng);
    EXPECT_EQ(evaluate(f, s), eval_naive(f, s)) << render(f) << "\n" << s.to_text();
  }
}

TEST(Eval, FokmAgreesWithNaiveOnTranslations) {
  for (int i = 0; i < 100; ++i) {
    auto rng = testkit::seeded(61, i);
    FormulaShape shape;
    shape.max_bound = 4;
    shape.free_vars = i % 2;
    Formula f = random_formula(rng, shape);
    auto tr = translate(f);
    Structure s = random_structure(vocabulary_of(f), 3, rng);
    Relation fast = eval_fokm(tr.result, s, tr.k);
    Relation slow = eval_naive(tr.result, s);
    EXPECT_EQ(fast.tuples, slow.tuples) << render(tr.result);
  }
}
