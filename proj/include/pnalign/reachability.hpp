#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pnalign/petri_net.hpp"
#include "pnalign/product.hpp"

namespace pnalign {

/// Arc of a reachability graph. Plain graphs use `first` only; graphs of
/// products name the component transitions on each side (nullopt is >>).
struct rg_arc {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::optional<transition_index> first;
  std::optional<transition_index> second;
};

class reachability_graph {
 public:
  /// Returns the vertex index, inserting if new.
  std::pair<std::uint32_t, bool> intern(const marking& m) {
    auto [it, fresh] = index_.emplace(m, static_cast<std::uint32_t>(vertices_.size()));
    if (fresh) {
      vertices_.push_back(m);
      out_.emplace_back();
    }
    return {it->second, fresh};
  }
  void add_arc(rg_arc a) {
    out_.at(a.source).push_back(arcs_.size());
    arcs_.push_back(a);
  }

  const std::vector<marking>& vertices() const { return vertices_; }
  const std::vector<rg_arc>& arcs() const { return arcs_; }
  const std::vector<std::size_t>& out_arcs(std::uint32_t v) const { return out_.at(v); }
  const marking& root() const { return vertices_.front(); }
  std::size_t size() const { return vertices_.size(); }

  std::optional<std::uint32_t> find(const marking& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Arcs as (source marking, first, second, target marking), sorted; used to
  /// compare graphs built in different ways.
  using arc_key = std::tuple<marking, std::optional<transition_index>, std::optional<transition_index>, marking>;
  std::vector<arc_key> arc_keys() const {
    std::vector<arc_key> keys;
    keys.reserve(arcs_.size());
    for (const auto& a : arcs_) keys.emplace_back(vertices_[a.source], a.first, a.second, vertices_[a.target]);
    std::sort(keys.begin(), keys.end());
    return keys;
  }
  std::set<marking> vertex_set() const { return {vertices_.begin(), vertices_.end()}; }

 private:
  std::vector<marking> vertices_;
  std::unordered_map<marking, std::uint32_t> index_;
  std::vector<rg_arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Breadth-first closure from the initial marking, transitions tried in id
/// order. `moves`, when given, maps net transitions to product pairs.
inline reachability_graph build_reachability_graph(const accepting_system& sys, std::size_t state_budget,
                                                   const std::vector<product_move>* moves = nullptr) {
  if (state_budget == 0) throw error(errc::invalid_argument, "state budget must be positive");
  const auto& net = sys.net;
  const auto order = net.transitions_by_id();
  reachability_graph g;
  g.intern(sys.initial_marking);
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    const marking m = g.vertices()[v];
    for (auto t : order) {
      if (!is_enabled(net, m, t)) continue;
      auto [w, fresh] = g.intern(detail::fire_unchecked(net, m, t));
      if (fresh) {
        if (g.size() > state_budget)
          throw budget_exceeded_error(g.size(), "reachability graph exceeds " + std::to_string(state_budget) +
                                                    " markings");
        queue.push_back(w);
      }
      if (moves)
        g.add_arc({v, w, moves->at(t.value).first, moves->at(t.value).second});
      else
        g.add_arc({v, w, t, std::nullopt});
    }
  }
  return g;
}

inline reachability_graph build_reachability_graph(const product_system& prod, std::size_t state_budget) {
  return build_reachability_graph(prod.sys, state_budget, &prod.moves);
}

/// Product of two plain reachability graphs. Vertices are M1 + M2 shifted by
/// `first_place_count`; arcs are label-matching pairs plus padded single-side
/// arcs. Vertex order is row-major over (V1, V2).
inline reachability_graph product_of_reach_graphs(const reachability_graph& r1, const petri_net& n1,
                                                  const reachability_graph& r2, const petri_net& n2) {
  const auto off = static_cast<std::uint32_t>(n1.place_count());
  reachability_graph g;
  const auto n2v = static_cast<std::uint32_t>(r2.size());
  for (const auto& m1 : r1.vertices())
    for (const auto& m2 : r2.vertices()) g.intern(m1 + m2.shifted(off));
  auto id = [&](std::uint32_t a, std::uint32_t b) { return a * n2v + b; };

  for (std::uint32_t v1 = 0; v1 < r1.size(); ++v1) {
    for (std::uint32_t v2 = 0; v2 < n2v; ++v2) {
      for (auto i : r1.out_arcs(v1)) {
        const auto& a = r1.arcs()[i];
        const auto& la = n1.labeling(*a.first);
        if (la.is_silent()) continue;
        for (auto j : r2.out_arcs(v2)) {
          const auto& b = r2.arcs()[j];
          if (n2.labeling(*b.first) == la) g.add_arc({id(v1, v2), id(a.target, b.target), a.first, b.first});
        }
      }
      for (auto i : r1.out_arcs(v1)) {
        const auto& a = r1.arcs()[i];
        g.add_arc({id(v1, v2), id(a.target, v2), a.first, std::nullopt});
      }
      for (auto j : r2.out_arcs(v2)) {
        const auto& b = r2.arcs()[j];
        g.add_arc({id(v1, v2), id(v1, b.target), std::nullopt, b.first});
      }
    }
  }
  return g;
}

}  // namespace pnalign
