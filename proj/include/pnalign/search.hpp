#pragma once

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pnalign/cost.hpp"
#include "pnalign/petri_net.hpp"

namespace pnalign {

struct reach_result {
  cost total;
  firing_sequence sequence;
  std::size_t states_expanded = 0;
};

/// Least-cost firing sequence from `init` to `target` (Dijkstra over the
/// reachable markings). Equal-cost ties go to the marking discovered first;
/// successors are generated in `order`.
inline reach_result min_cost_reach(const petri_net& net, const marking& init, const std::vector<cost>& costs,
                                   const marking& target, std::size_t state_budget,
                                   const std::vector<transition_index>& order) {
  if (costs.size() != net.transition_count()) throw error(errc::invalid_argument, "cost vector size mismatch");
  struct node {
    marking m;
    cost dist;
    std::uint32_t parent;
    transition_index via;
    bool settled = false;
  };
  std::vector<node> nodes;
  std::unordered_map<marking, std::uint32_t> index;
  using entry = std::tuple<cost, std::uint64_t, std::uint32_t>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> open;
  std::uint64_t seq = 0;

  nodes.push_back({init, cost(0), 0, {}, false});
  index.emplace(init, 0);
  open.emplace(cost(0), seq++, 0);
  std::size_t expanded = 0;

  while (!open.empty()) {
    auto [d, _, v] = open.top();
    open.pop();
    if (nodes[v].settled || d != nodes[v].dist) continue;
    nodes[v].settled = true;
    ++expanded;
    if (nodes[v].m == target) {
      reach_result r{d, {}, expanded};
      for (auto u = v; u != 0; u = nodes[u].parent) r.sequence.push_back(nodes[u].via);
      std::reverse(r.sequence.begin(), r.sequence.end());
      return r;
    }
    const marking m = nodes[v].m;
    for (auto t : order) {
      if (!is_enabled(net, m, t)) continue;
      marking next = detail::fire_unchecked(net, m, t);
      const cost nd = d + costs[t.value];
      auto [it, fresh] = index.emplace(next, static_cast<std::uint32_t>(nodes.size()));
      if (fresh) {
        if (nodes.size() + 1 > state_budget)
          throw budget_exceeded_error(nodes.size() + 1, "cost-minimal search exceeds " +
                                                            std::to_string(state_budget) + " markings");
        nodes.push_back({std::move(next), nd, v, t, false});
        open.emplace(nd, seq++, it->second);
      } else if (auto& n = nodes[it->second]; !n.settled && nd < n.dist) {
        n.dist = nd;
        n.parent = v;
        n.via = t;
        open.emplace(nd, seq++, it->second);
      }
    }
  }
  throw error(errc::unreachable, "target marking is not reachable");
}

inline reach_result min_cost_reach(const petri_net& net, const marking& init, const std::vector<cost>& costs,
                                   const marking& target, std::size_t state_budget) {
  return min_cost_reach(net, init, costs, target, state_budget, net.transitions_by_id());
}

/// Plain reachability by breadth-first search with early exit.
inline bool is_reachable(const petri_net& net, const marking& init, const marking& target, std::size_t state_budget) {
  std::unordered_map<marking, bool> seen{{init, true}};
  std::deque<marking> queue{init};
  while (!queue.empty()) {
    marking m = std::move(queue.front());
    queue.pop_front();
    if (m == target) return true;
    for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
      if (!is_enabled(net, m, {t})) continue;
      auto next = detail::fire_unchecked(net, m, {t});
      if (seen.emplace(next, true).second) {
        if (seen.size() > state_budget)
          throw budget_exceeded_error(seen.size(), "reachability check exceeds " + std::to_string(state_budget) +
                                                       " markings");
        queue.push_back(std::move(next));
      }
    }
  }
  return false;
}

}  // namespace pnalign
