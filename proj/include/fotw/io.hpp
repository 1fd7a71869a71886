#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fotw/decomposition.hpp"
#include "fotw/error.hpp"
#include "fotw/graph.hpp"

namespace fotw {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Line records `v NAME DEPTH` and `e NAME NAME`; `#` starts a comment.
inline StratifiedGraph parse_graph(const std::string& text) {
  StratifiedGraph sg;
  std::map<std::string, int> id;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) { throw ParseError(msg, line, 1); };
    if (tok[0] == "v") {
      if (tok.size() != 3) fail("expected: v NAME DEPTH");
      if (id.count(tok[1])) fail("duplicate vertex " + tok[1]);
      int d = 0;
      try {
        std::size_t used = 0;
        d = std::stoi(tok[2], &used);
        if (used != tok[2].size()) fail("bad depth " + tok[2]);
      } catch (const std::logic_error&) {
        fail("bad depth " + tok[2]);
      }
      if (d < 0) fail("depth must be non-negative");
      id[tok[1]] = sg.graph.add_vertex(tok[1]);
      sg.depth.push_back(d);
    } else if (tok[0] == "e") {
      if (tok.size() != 3) fail("expected: e NAME NAME");
      for (int i = 1; i <= 2; ++i) {
        if (!id.count(tok[i])) fail("unknown vertex " + tok[i]);
      }
      if (tok[1] == tok[2]) fail("self-loop on " + tok[1]);
      sg.graph.add_edge(id[tok[1]], id[tok[2]]);
    } else {
      fail("unknown record " + tok[0]);
    }
  }
  return sg;
}

inline std::string bag_text(const Graph& g, const std::vector<int>& bag) {
  std::string out = "{";
  for (std::size_t i = 0; i < bag.size(); ++i) out += (i ? "," : "") + g.name(bag[i]);
  return out + "}";
}

// One line per node: id, parent (- for the root), bag.
inline std::string decomposition_text(const Graph& g, const TreeDecomposition& td, int width) {
  std::ostringstream os;
  os << "width " << width << '\n';
  for (int v : td.preorder()) {
    os << "node " << v << " parent ";
    if (td.parent[v] < 0) {
      os << '-';
    } else {
      os << td.parent[v];
    }
    os << " bag " << bag_text(g, td.bags[v]) << '\n';
  }
  return os.str();
}

inline std::string decomposition_dot(const Graph& g, const TreeDecomposition& td) {
  std::ostringstream os;
  os << "graph decomposition {\n  node [shape=box];\n";
  for (std::size_t v = 0; v < td.size(); ++v) {
    os << "  n" << v << " [label=\"" << bag_text(g, td.bags[v]) << "\"];\n";
  }
  for (std::size_t v = 0; v < td.size(); ++v) {
    if (td.parent[v] >= 0) os << "  n" << td.parent[v] << " -- n" << v << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fotw
