#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/graph.hpp"
#include "fotw/treewidth.hpp"

namespace fotw {

using VertexSet = std::uint32_t;

struct GameState {
  VertexSet cops = 0;
  VertexSet robber = 0;  // a component of G - cops
  friend auto operator<=>(const GameState&, const GameState&) = default;
};

struct GameResult {
  bool cops_win = false;
  // For every winning position: where the cops fly next. Only positions reachable
  // under the returned strategy matter; all winning positions are listed.
  std::map<GameState, VertexSet> strategy;
};

namespace detail {

class CopsAndRobber {
 public:
  CopsAndRobber(const StratifiedGraph& sg, int k, bool monotone)
      : sg_(sg), n_(static_cast<int>(sg.size())), k_(k), monotone_(monotone) {
    check_guard(n_ <= 12 && k_ <= 6, "game: more than 12 vertices or more than 6 cops");
    if (n_ > 30) throw TooLarge("game: more than 30 vertices");
    adj_.assign(n_, 0);
    for (auto [u, v] : sg.graph.edges()) {
      adj_[u] |= VertexSet{1} << v;
      adj_[v] |= VertexSet{1} << u;
    }
    full_ = n_ == 0 ? 0 : static_cast<VertexSet>((std::uint64_t{1} << n_) - 1);
    for (VertexSet y = 0;; ++y) {
      if (std::popcount(y) <= k_) placements_.push_back(y);
      if (y == full_) break;
    }
  }

  GameResult solve() {
    std::vector<GameState> states;
    std::unordered_map<std::uint64_t, int> id;
    for (VertexSet x : placements_) {
      for (VertexSet r : components(full_ & ~x)) {
        if (max_depth(x) > min_depth(r)) continue;
        id[key(x, r)] = static_cast<int>(states.size());
        states.push_back({x, r});
      }
    }
    std::vector<char> win(states.size(), 0);
    std::vector<VertexSet> move(states.size(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < states.size(); ++s) {
        if (win[s]) continue;
        for (VertexSet y : placements_) {
          if (good_move(states[s], y, id, win)) {
            win[s] = 1;
            move[s] = y;
            changed = true;
            break;
          }
        }
      }
    }
    GameResult res;
    res.cops_win = true;
    for (VertexSet r : components(full_)) {
      if (!win[id.at(key(0, r))]) res.cops_win = false;
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (win[s]) res.strategy[states[s]] = move[s];
    }
    return res;
  }

 private:
  static std::uint64_t key(VertexSet x, VertexSet r) { return (std::uint64_t{x} << 32) | r; }

  int max_depth(VertexSet x) const {
    int m = std::numeric_limits<int>::min();
    for (; x; x &= x - 1) m = std::max(m, sg_.depth[std::countr_zero(x)]);
    return m;
  }

  int min_depth(VertexSet r) const {
    int m = std::numeric_limits<int>::max();
    for (; r; r &= r - 1) m = std::min(m, sg_.depth[std::countr_zero(r)]);
    return m;
  }

  VertexSet component_of(VertexSet within, int v) const {
    VertexSet seen = VertexSet{1} << v;
    VertexSet frontier = seen;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      VertexSet nb = adj_[u] & within & ~seen;
      seen |= nb;
      frontier |= nb;
    }
    return seen;
  }

  std::vector<VertexSet> components(VertexSet within) const {
    std::vector<VertexSet> out;
    for (VertexSet rest = within; rest;) {
      VertexSet c = component_of(within, std::countr_zero(rest));
      out.push_back(c);
      rest &= ~c;
    }
    return out;
  }

  // Every robber answer to Y from (X, R) is legal and already won by the cops;
  // no answer at all means the robber is caught.
  bool good_move(const GameState& s, VertexSet y, const std::unordered_map<std::uint64_t, int>& id,
                 const std::vector<char>& win) const {
    VertexSet reach = component_of(full_ & ~(s.cops & y), std::countr_zero(s.robber));
    VertexSet free = reach & ~y;
    int top = max_depth(y);
    for (VertexSet rest = free; rest;) {
      VertexSet r = component_of(full_ & ~y, std::countr_zero(rest));
      rest &= ~r;
      if (top > min_depth(r)) return false;
      if (monotone_ && (r & ~s.robber)) return false;
      auto it = id.find(key(y, r));
      if (it == id.end() || !win[it->second]) return false;
    }
    return true;
  }

  const StratifiedGraph& sg_;
  int n_;
  int k_;
  bool monotone_;
  VertexSet full_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<VertexSet> placements_;
};

}  // namespace detail

inline GameResult cops_win(const StratifiedGraph& sg, int k, bool monotone) {
  if (k < 0) throw DomainError("game: negative number of cops");
  return detail::CopsAndRobber(sg, k, monotone).solve();
}

// Least number of cops with a winning strategy.
inline int cop_width(const StratifiedGraph& sg, bool monotone) {
  for (int k = 0;; ++k) {
    if (k >= static_cast<int>(sg.size()) || cops_win(sg, k, monotone).cops_win) return k;
  }
}

struct GamesReport {
  int cw = 0;
  int moncw = 0;
  int tw = -1;
  bool ok = false;  // cw == moncw == tw + 1
};

inline GamesReport verify_games_theorem(const StratifiedGraph& sg) {
  GamesReport r;
  r.cw = cop_width(sg, false);
  r.moncw = cop_width(sg, true);
  r.tw = stratified_treewidth(sg).width;
  r.ok = r.cw == r.moncw && r.cw == r.tw + 1;
  return r;
}

inline std::string vertex_set_names(const Graph& g, VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (; s; s &= s - 1) {
    out += (first ? "" : ",") + g.name(std::countr_zero(s));
    first = false;
  }
  return out + "}";
}

}  // namespace fotw
