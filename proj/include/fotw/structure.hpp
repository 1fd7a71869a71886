#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/formula.hpp"

namespace fotw {

// Finite relational structure. Elements are numbered in declaration order and
// every relation is stored as a dense bit table indexed by the tuple in base |A|.
struct Structure {
  Vocabulary vocabulary;
  std::vector<std::string> universe;
  std::map<std::string, std::vector<char>> tables;
  std::map<std::string, int> constants;

  std::size_t domain_size() const { return universe.size(); }

  int element(const std::string& name) const {
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (universe[i] == name) return static_cast<int>(i);
    }
    throw DomainError("unknown element " + name);
  }

  std::size_t table_size(int arity) const {
    std::size_t s = 1;
    for (int i = 0; i < arity; ++i) s *= universe.size();
    return s;
  }

  void add_relation(const std::string& name, int arity) {
    if (arity < 0) throw DomainError("negative arity for " + name);
    vocabulary.add_relation(name, arity);
    double cells = std::pow(static_cast<double>(universe.size()), arity);
    check_guard(cells <= 67108864.0, "relation " + name + " table exceeds 2^26 cells");
    tables[name].assign(table_size(arity), 0);
  }

  void add_constant(const std::string& name, int elem) {
    if (elem < 0 || static_cast<std::size_t>(elem) >= universe.size()) {
      throw DomainError("constant " + name + " outside the universe");
    }
    vocabulary.constants.insert(name);
    constants[name] = elem;
  }

  int arity(const std::string& rel) const { return vocabulary.relations.at(rel); }

  std::size_t offset(const std::vector<int>& tuple) const {
    std::size_t o = 0;
    for (int e : tuple) o = o * universe.size() + static_cast<std::size_t>(e);
    return o;
  }

  void add_tuple(const std::string& rel, const std::vector<int>& tuple) {
    if (static_cast<int>(tuple.size()) != arity(rel)) throw DomainError("arity mismatch in " + rel);
    for (int e : tuple) {
      if (e < 0 || static_cast<std::size_t>(e) >= universe.size()) {
        throw DomainError("tuple of " + rel + " leaves the universe");
      }
    }
    tables.at(rel)[offset(tuple)] = 1;
  }

  bool holds(const std::string& rel, const std::vector<int>& tuple) const {
    return tables.at(rel)[offset(tuple)] != 0;
  }

  std::vector<std::vector<int>> tuples(const std::string& rel) const {
    std::vector<std::vector<int>> out;
    int ar = arity(rel);
    const auto& t = tables.at(rel);
    for (std::size_t o = 0; o < t.size(); ++o) {
      if (!t[o]) continue;
      std::vector<int> tup(ar);
      std::size_t r = o;
      for (int i = ar - 1; i >= 0; --i) {
        tup[i] = static_cast<int>(r % universe.size());
        r /= universe.size();
      }
      out.push_back(std::move(tup));
    }
    return out;
  }

  // ||A|| = |sigma| + |A| + sum of |R^A| * ar(R).
  std::size_t encoding_size() const {
    std::size_t s = vocabulary.relations.size() + vocabulary.constants.size() + universe.size();
    for (const auto& [name, t] : tables) {
      s += static_cast<std::size_t>(std::count(t.begin(), t.end(), 1)) *
           static_cast<std::size_t>(arity(name));
    }
    return s;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "domain";
    for (const auto& e : universe) os << ' ' << e;
    os << '\n';
    for (const auto& [name, ar] : vocabulary.relations) {
      os << "relation " << name << ' ' << ar << '\n';
      for (const auto& t : tuples(name)) {
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << universe[t[i]];
        os << '\n';
      }
      os << "end\n";
    }
    for (const auto& [c, e] : constants) os << "constant " << c << ' ' << universe[e] << '\n';
    return os.str();
  }
};

// Universe e0..e(n-1) with empty relations for every symbol of voc and all
// constants on e0.
inline Structure empty_structure(const Vocabulary& voc, int n) {
  if (n < 1) throw DomainError("a structure needs a nonempty universe");
  Structure s;
  for (int i = 0; i < n; ++i) s.universe.push_back("e" + std::to_string(i));
  for (const auto& [name, ar] : voc.relations) s.add_relation(name, ar);
  for (const auto& c : voc.constants) s.add_constant(c, 0);
  return s;
}

inline Structure parse_structure(const std::string& text) {
  Structure s;
  bool have_domain = false;
  std::string open;  // relation block being read
  int open_line = 0;
  std::set<std::string> seen_blocks;
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
    auto elem = [&](const std::string& name) {
      for (std::size_t i = 0; i < s.universe.size(); ++i) {
        if (s.universe[i] == name) return static_cast<int>(i);
      }
      fail("unknown element " + name);
      return -1;
    };
    if (!open.empty()) {
      if (tok.size() == 1 && tok[0] == "end") {
        open.clear();
        continue;
      }
      if (static_cast<int>(tok.size()) != s.arity(open)) {
        fail("tuple of " + open + " has " + std::to_string(tok.size()) + " entries, expected " +
             std::to_string(s.arity(open)));
      }
      std::vector<int> t;
      for (const auto& w : tok) t.push_back(elem(w));
      s.add_tuple(open, t);
      continue;
    }
    const std::string& cmd = tok[0];
    if (cmd == "domain") {
      if (have_domain) fail("duplicate domain line");
      if (tok.size() < 2) fail("empty domain");
      std::set<std::string> uniq(tok.begin() + 1, tok.end());
      if (uniq.size() != tok.size() - 1) fail("duplicate element in domain");
      s.universe.assign(tok.begin() + 1, tok.end());
      have_domain = true;
    } else if (cmd == "relation") {
      if (!have_domain) fail("relation before domain");
      if (tok.size() != 3) fail("expected: relation NAME ARITY");
      if (!seen_blocks.insert(tok[1]).second) fail("duplicate relation block " + tok[1]);
      int ar = 0;
      try {
        ar = std::stoi(tok[2]);
      } catch (const std::exception&) {
        fail("bad arity " + tok[2]);
      }
      if (ar < 1) fail("arity must be positive");
      s.add_relation(tok[1], ar);
      open = tok[1];
      open_line = line;
    } else if (cmd == "constant") {
      if (!have_domain) fail("constant before domain");
      if (tok.size() != 3) fail("expected: constant NAME ELEMENT");
      if (s.constants.count(tok[1])) fail("duplicate constant " + tok[1]);
      s.add_constant(tok[1], elem(tok[2]));
    } else {
      fail("unknown directive " + cmd);
    }
  }
  if (!open.empty()) throw ParseError("relation block " + open + " is not closed", open_line, 1);
  if (!have_domain) throw ParseError("missing domain line", line + 1, 1);
  return s;
}

// Number of relation bits of a structure of size n over voc.
inline double relation_bits(const Vocabulary& voc, int n) {
  double bits = 0;
  for (const auto& [name, ar] : voc.relations) bits += std::pow(static_cast<double>(n), ar);
  return bits;
}

inline double structure_count(const Vocabulary& voc, int n) {
  return std::pow(2.0, relation_bits(voc, n)) *
         std::pow(static_cast<double>(n), static_cast<double>(voc.constants.size()));
}

// Calls fn(s) for every structure over voc with universe e0..e(n-1). The same
// Structure object is updated in place between calls.
template <class Fn>
void for_each_structure(const Vocabulary& voc, int n, Fn&& fn) {
  check_guard(relation_bits(voc, n) <= 24, "structure enumeration exceeds 24 relation bits");
  Structure s = empty_structure(voc, n);
  std::vector<char*> bits;
  for (auto& [name, t] : s.tables) {
    for (auto& b : t) bits.push_back(&b);
  }
  std::vector<std::string> cons(voc.constants.begin(), voc.constants.end());
  std::uint64_t total = std::uint64_t{1} << bits.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < bits.size(); ++i) *bits[i] = static_cast<char>((mask >> i) & 1);
    std::vector<int> cv(cons.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < cons.size(); ++i) s.constants[cons[i]] = cv[i];
      fn(static_cast<const Structure&>(s));
      std::size_t i = 0;
      while (i < cv.size() && ++cv[i] == n) cv[i++] = 0;
      if (i == cv.size()) break;
    }
  }
}

inline std::vector<Structure> enumerate_structures(const Vocabulary& voc, int n) {
  std::vector<Structure> out;
  for_each_structure(voc, n, [&](const Structure& s) { out.push_back(s); });
  return out;
}

// Every relation bit set with probability density; constants uniform.
template <class Rng>
Structure random_structure(const Vocabulary& voc, int n, Rng& rng, double density = 0.5) {
  Structure s = empty_structure(voc, n);
  std::bernoulli_distribution coin(density);
  for (auto& [name, t] : s.tables) {
    for (auto& b : t) b = coin(rng) ? 1 : 0;
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (auto& [c, e] : s.constants) e = pick(rng);
  return s;
}

}  // namespace fotw
