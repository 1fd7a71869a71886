#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/formula.hpp"
#include "fotw/graph.hpp"
#include "fotw/order.hpp"
#include "fotw/treewidth.hpp"

namespace fotw {

// G_f with a depth table keyed by variable name (missing names get depth 0).
inline StratifiedGraph stratify(const Formula& f, const std::map<std::string, int>& depth) {
  StratifiedGraph sg{formula_graph(f), {}};
  for (const auto& name : sg.graph.names()) {
    auto it = depth.find(name);
    sg.depth.push_back(it == depth.end() ? 0 : it->second);
  }
  return sg;
}

struct FormulaDecomposition {
  StratifiedGraph sg;  // G_f with ead
  TreeDecomposition td;
  int width = -1;

  std::vector<std::string> bag_names(int node) const {
    std::vector<std::string> out;
    for (int v : td.bags[node]) out.push_back(sg.graph.name(v));
    return out;
  }
};

// fotw(f) = tw(G_f, ead_f), with a decomposition whose root bag holds free(f).
inline FormulaDecomposition fotw_decomposition(const Formula& f) {
  auto analysis = compute_preceq(f);
  FormulaDecomposition out;
  out.sg = stratify(f, analysis.ead_map());
  auto res = stratified_treewidth(out.sg);
  out.td = std::move(res.td);
  out.width = res.width;
  const auto& root = out.td.bags[out.td.root()];
  for (const auto& x : free_variables(f)) {
    int v = out.sg.graph.index_of(x);
    if (!std::binary_search(root.begin(), root.end(), v)) {
      throw Error("fotw: free variable " + x + " missing from the root bag");
    }
  }
  return out;
}

inline int fotw_width(const Formula& f) { return fotw_decomposition(f).width; }

}  // namespace fotw
