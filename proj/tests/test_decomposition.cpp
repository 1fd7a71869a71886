#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <string>

#include "support.hpp"

using namespace fotw;

namespace {

StratifiedGraph flat(const std::string& text) { return parse_graph(text); }

StratifiedGraph clique(int n) {
  std::string t;
  for (int i = 0; i < n; ++i) t += "v a" + std::to_string(i) + " 0\n";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) t += "e a" + std::to_string(i) + " a" + std::to_string(j) + "\n";
  }
  return parse_graph(t);
}

bool has_violation(const DecompositionCheck& c, const std::string& prefix) {
  for (const auto& v : c.violations) {
    if (v.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Check, AcceptsSingleBag) {
  auto sg = clique(3);
  EXPECT_TRUE(check_decomposition(sg, TreeDecomposition::single({0, 1, 2})));
}

TEST(Check, ReportsEachCondition) {
  auto sg = flat("v a 0\nv b 0\nv c 0\ne a b\ne b c\n");
  TreeDecomposition missing;
  missing.add_node(-1, {0, 1});
  EXPECT_TRUE(has_violation(check_decomposition(sg, missing), "TD1"));

  TreeDecomposition edge;
  edge.add_node(-1, {0, 1});
  edge.add_node(0, {2});
  EXPECT_TRUE(has_violation(check_decomposition(sg, edge), "TD2"));

  TreeDecomposition split;
  split.add_node(-1, {0, 1});
  split.add_node(0, {1, 2});
  split.add_node(1, {0});
  EXPECT_TRUE(has_violation(check_decomposition(sg, split), "TD3"));

  TreeDecomposition two_roots;
  two_roots.add_node(-1, {0, 1});
  two_roots.add_node(-1, {1, 2});
  EXPECT_TRUE(has_violation(check_decomposition(sg, two_roots), "tree"));
}

TEST(Check, Stratification) {
  auto sg = flat("v a 1\nv b 0\ne a b\n");
  TreeDecomposition good;
  good.add_node(-1, {1});
  good.add_node(0, {0, 1});
  EXPECT_TRUE(check_decomposition(sg, good));
  TreeDecomposition bad;
  bad.add_node(-1, {0});
  bad.add_node(0, {0, 1});
  EXPECT_TRUE(has_violation(check_decomposition(sg, bad), "stratification"));
}

TEST(Check, PathDecompositionOfReorderFamily) {
  // Bags {x_i, z} along a path, then {y}.
  for (int n = 1; n <= 5; ++n) {
    Formula f = testkit::reorder_phi(n);
    auto sg = stratify(f, compute_ead(f));
    const Graph& g = sg.graph;
    TreeDecomposition td;
    int prev = -1;
    for (int i = 1; i <= n; ++i) {
      prev = td.add_node(prev, {g.index_of("x" + std::to_string(i)), g.index_of("z")});
    }
    td.add_node(prev, {g.index_of("y")});
    EXPECT_TRUE(check_decomposition(sg, td)) << n;
    EXPECT_EQ(td.width(), 1);
    auto ord = decomposition_to_ordering(sg, td);
    EXPECT_EQ(g.name(ord.back()), "y");
    EXPECT_EQ(ordering_width(sg, ord), 1);
  }
}

TEST(Ordering, WidthAndValidation) {
  auto tri = clique(3);
  EXPECT_EQ(ordering_width(tri, {0, 1, 2}), 2);
  EXPECT_EQ(ordering_width(tri, {2, 0, 1}), 2);
  auto sg = flat("v a 1\nv b 0\ne a b\n");
  EXPECT_THROW(ordering_to_decomposition(sg, {0, 1}), DomainError);
  EXPECT_THROW(ordering_to_decomposition(sg, {1}), DomainError);
  EXPECT_TRUE(respects_depth(sg, {1, 0}));
}

TEST(Treewidth, SmallGraphs) {
  EXPECT_EQ(treewidth(clique(4).graph).width, 3);
  EXPECT_EQ(treewidth(flat("v a 0\nv b 0\nv c 0\nv d 0\ne a b\ne b c\ne c d\n").graph).width, 1);
  EXPECT_EQ(treewidth(flat("v a 0\nv b 0\nv c 0\nv d 0\ne a b\ne b c\ne c d\ne d a\n").graph).width, 2);
  EXPECT_EQ(treewidth(Graph(std::size_t{3})).width, 0);
  EXPECT_EQ(stratified_treewidth(StratifiedGraph{}).width, -1);
}

TEST(Treewidth, StratifiedFixtureGraphs) {
  EXPECT_EQ(stratified_treewidth(parse_graph(read_file(testkit::fixture_path("star3.g")))).width, 3);
  EXPECT_EQ(stratified_treewidth(parse_graph(read_file(testkit::fixture_path("triangle.g")))).width, 2);
  EXPECT_EQ(stratified_treewidth(parse_graph(read_file(testkit::fixture_path("path5.g")))).width, 1);
}

TEST(Fotw, StarFamily) {
  for (int n = 1; n <= 8; ++n) {
    Formula f = testkit::star_formula(n);
    EXPECT_EQ(fotw_width(f), n) << n;
    EXPECT_EQ(treewidth(formula_graph(f)).width, 1) << n;
  }
}

TEST(Fotw, ReorderFamily) {
  for (int n = 1; n <= 8; ++n) {
    Formula f = testkit::reorder_phi(n);
    EXPECT_EQ(fotw_width(f), 1) << n;
    EXPECT_EQ(testkit::ew_ad_prime(f), n) << n;
  }
}

TEST(Fotw, ConjunctiveQueriesMatchTreewidth) {
  for (int i = 0; i < 60; ++i) {
    auto rng = testkit::seeded(30, i);
    int vars = 2 + i % 7;
    Formula f = random_cq(rng, vars, vars + i % 4, i % 3 == 0 ? 1 : 0);
    EXPECT_EQ(fotw_width(f), treewidth(formula_graph(f)).width) << render(f);
  }
}

TEST(Fotw, RootBagHoldsFreeVariables) {
  for (int i = 0; i < 100; ++i) {
    auto rng = testkit::seeded(31, i);
    FormulaShape shape;
    shape.free_vars = 1 + i % 3;
    Formula f = random_formula(rng, shape);
    auto d = fotw_decomposition(f);
    EXPECT_TRUE(check_decomposition(d.sg, d.td)) << render(f);
    auto root = d.bag_names(d.td.root());
    for (const auto& x : free_variables(f)) {
      EXPECT_NE(std::find(root.begin(), root.end(), x), root.end()) << render(f);
    }
  }
}

TEST(Fotw, DepthBounds) {
  for (int i = 0; i < 150; ++i) {
    auto rng = testkit::seeded(32, i);
    FormulaShape shape;
    shape.free_vars = i % 3;
    Formula f = random_formula(rng, shape);
    int w = fotw_width(f);
    EXPECT_LE(w, stratified_treewidth(stratify(f, compute_ad(f))).width) << render(f);
    Formula p = to_prenex(f);
    EXPECT_LE(fotw_width(p), testkit::ew_ad_prime(p)) << render(p);
  }
}

TEST(Treewidth, MatchesBruteForceAndRoundTrips) {
  for (int i = 0; i < 150; ++i) {
    auto rng = testkit::seeded(33, i);
    int n = 1 + i % 8;
    auto sg = random_stratified_graph(rng, n, 0.25 + 0.1 * (i % 5), i % 4);
    auto w = testkit::width_oracle(sg);
    EXPECT_TRUE(w.ok()) << "instance " << i << ": brute " << w.brute << ", stratified "
                        << w.stratified << ", round trips " << w.ordering_width_after << "/"
                        << w.decomposition_width_after;
  }
}

TEST(Treewidth, OrderingRoundTripKeepsWidth) {
  for (int i = 0; i < 100; ++i) {
    auto rng = testkit::seeded(34, i);
    auto sg = random_stratified_graph(rng, 1 + i % 7, 0.4, 2);
    EliminationOrdering ord(sg.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::shuffle(ord.begin(), ord.end(), rng);
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return sg.depth[a] < sg.depth[b]; });
    auto td = ordering_to_decomposition(sg, ord);
    ASSERT_TRUE(check_decomposition(sg, td)) << i;
    EXPECT_EQ(td.width(), ordering_width(sg, ord));
    auto back = decomposition_to_ordering(sg, td);
    EXPECT_TRUE(respects_depth(sg, back));
    EXPECT_LE(ordering_width(sg, back), td.width());
  }
}

TEST(Treewidth, SimplifyKeepsValidity) {
  for (int i = 0; i < 60; ++i) {
    auto rng = testkit::seeded(35, i);
    auto sg = random_stratified_graph(rng, 2 + i % 6, 0.5, 2);
    auto res = stratified_treewidth(sg);
    auto s = simplify(res.td);
    EXPECT_TRUE(check_decomposition(sg, s));
    EXPECT_EQ(s.width(), res.width);
    auto flat_sg = StratifiedGraph{sg.graph, std::vector<int>(sg.size(), 0)};
    EXPECT_TRUE(check_decomposition(flat_sg, make_small(res.td)));
  }
}

TEST(GraphInput, Errors) {
  EXPECT_THROW(parse_graph("v a 0\nv a 1\n"), ParseError);
  EXPECT_THROW(parse_graph("v a 0\ne a b\n"), ParseError);
  EXPECT_THROW(parse_graph("v a 0\ne a a\n"), ParseError);
  EXPECT_THROW(parse_graph("v a x\n"), ParseError);
  EXPECT_THROW(parse_graph("v a -1\n"), ParseError);
  EXPECT_THROW(parse_graph("w a 0\n"), ParseError);
}

TEST(GraphInput, DecompositionText) {
  auto sg = clique(2);
  auto res = stratified_treewidth(sg);
  EXPECT_EQ(decomposition_text(sg.graph, res.td, res.width), "width 1\nnode 0 parent - bag {a0,a1}\n");
  EXPECT_NE(decomposition_dot(sg.graph, res.td).find("graph decomposition"), std::string::npos);
}
