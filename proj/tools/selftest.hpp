#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fotw/all.hpp"

namespace fotw::cli {

struct FixtureCheck {
  std::string fixture;
  std::string key;
  bool ok = false;
  std::string expected;
  std::string actual;
};

using PairSet = std::set<std::pair<std::string, std::string>>;

inline Formula load_formula(const std::string& path) {
  return normalize_formula(parse_formula(read_file(path)));
}

namespace detail {

inline PairSet strict_pairs(const OrderAnalysis& a, const BoolMatrix& m, bool symmetric) {
  PairSet out;
  for (auto [x, y] : a.pairs(m)) {
    if (x == y) continue;
    if (symmetric && y < x) std::swap(x, y);
    out.emplace(x, y);
  }
  return out;
}

inline PairSet pair_set(const nlohmann::json& j, bool symmetric) {
  PairSet out;
  for (const auto& p : j) {
    std::string x = p.at(0);
    std::string y = p.at(1);
    if (symmetric && y < x) std::swap(x, y);
    out.emplace(x, y);
  }
  return out;
}

inline nlohmann::json pairs_json(const PairSet& s) {
  auto out = nlohmann::json::array();
  for (const auto& [x, y] : s) out.push_back({x, y});
  return out;
}

}  // namespace detail

// Every `NAME.expect.json` next to `NAME.fo` in dir, checked key by key.
inline std::vector<FixtureCheck> run_selftest(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("fixture directory " + dir + " not found");
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::string file = e.path().filename().string();
    const std::string suffix = ".expect.json";
    if (file.size() > suffix.size() && file.ends_with(suffix)) {
      names.push_back(file.substr(0, file.size() - suffix.size()));
    }
  }
  std::sort(names.begin(), names.end());

  std::vector<FixtureCheck> out;
  for (const auto& name : names) {
    auto expect = nlohmann::json::parse(read_file(dir + "/" + name + ".expect.json"));
    Formula f = load_formula(dir + "/" + name + ".fo");
    auto a = compute_preceq(f);
    for (const auto& [key, want] : expect.items()) {
      nlohmann::json got;
      bool ok = false;
      if (key == "ead" || key == "ad") {
        got = key == "ead" ? a.ead_map() : compute_ad(f);
        ok = got == want;
      } else if (key == "preceq" || key == "entangled") {
        bool sym = key == "entangled";
        auto have = detail::strict_pairs(a, sym ? a.entangled : a.preceq, sym);
        got = detail::pairs_json(have);
        ok = have == detail::pair_set(want, sym);
      } else if (key == "xenerp") {
        got = is_xenerp(f, a).ok;
        ok = got == want;
      } else if (key == "fotw") {
        got = fotw_width(f);
        ok = got == want;
      } else if (key == "tw") {
        got = treewidth(formula_graph(f)).width;
        ok = got == want;
      } else if (key == "ew_ad_prime") {
        got = stratified_treewidth(stratify(f, compute_ad_prime(f))).width;
        ok = got == want;
      } else if (key == "equivalent_to") {
        Formula g = load_formula(dir + "/" + want.get<std::string>() + ".fo");
        auto rep = check_equivalence(f, g);
        got = rep.equivalent ? want : nlohmann::json("not equivalent");
        ok = rep.equivalent;
      } else {
        got = "unknown key";
      }
      out.push_back({name, key, ok, want.dump(), got.dump()});
    }
  }
  return out;
}

}  // namespace fotw::cli
