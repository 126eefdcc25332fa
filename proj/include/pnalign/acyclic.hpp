#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "pnalign/solvers.hpp"

namespace pnalign {

/// Fires remaining transitions of `x` greedily (lowest index first). On
/// acyclic nets every marking-equation solution is exhausted this way.
inline firing_sequence realize_parikh_acyclic(const petri_net& net, const marking& m0, const parikh_vector& x) {
  std::vector<std::uint64_t> left(net.transition_count(), 0);
  std::uint64_t total = 0;
  for (const auto& [t, n] : x) {
    if (t.value >= net.transition_count()) throw error(errc::unknown_transition, "parikh vector names unknown transition");
    left[t.value] = n;
    total += n;
  }
  firing_sequence s;
  s.reserve(total);
  marking m = m0;
  while (s.size() < total) {
    bool fired = false;
    for (std::uint32_t t = 0; t < left.size(); ++t) {
      if (left[t] == 0 || !is_enabled(net, m, {t})) continue;
      m = detail::fire_unchecked(net, m, {t});
      --left[t];
      s.push_back({t});
      fired = true;
      break;
    }
    if (!fired)
      throw error(errc::stuck_contradiction, "no remaining transition enabled after " + std::to_string(s.size()) +
                                                 " firings; input is not an acyclic marking-equation solution");
  }
  return s;
}

namespace detail {

/// Exhaustive realization of `x` from `m0`; dead remaining-vectors are memoized.
inline std::optional<firing_sequence> realize_exact(const petri_net& net, const marking& m0,
                                                    const std::vector<std::uint64_t>& x) {
  std::set<std::vector<std::uint64_t>> dead;
  std::vector<std::uint64_t> left = x;
  firing_sequence s;
  std::uint64_t total = 0;
  for (auto n : x) total += n;
  auto go = [&](auto& self, const marking& m) -> bool {
    if (s.size() == total) return true;
    if (dead.count(left)) return false;
    for (std::uint32_t t = 0; t < left.size(); ++t) {
      if (left[t] == 0 || !is_enabled(net, m, {t})) continue;
      --left[t];
      s.push_back({t});
      if (self(self, fire_unchecked(net, m, {t}))) return true;
      s.pop_back();
      ++left[t];
    }
    dead.insert(left);
    return false;
  };
  if (go(go, m0)) return s;
  return std::nullopt;
}

/// Upper bound on how often each transition of an acyclic net can fire from
/// `m0`; nullopt where unbounded (a transition with empty pre-set upstream).
inline std::vector<std::optional<std::uint64_t>> flow_bounds(const petri_net& net, const marking& m0,
                                                             const std::vector<transition_index>& topo) {
  std::vector<std::optional<std::uint64_t>> fires(net.transition_count());
  auto tokens = [&](place_index p) -> std::optional<std::uint64_t> {
    std::uint64_t sum = m0[p];
    for (auto t : net.pre(p)) {
      if (!fires[t.value]) return std::nullopt;
      sum += *fires[t.value];
    }
    return sum;
  };
  for (auto t : topo) {
    std::optional<std::uint64_t> f;
    for (auto p : net.pre(t))
      if (auto k = tokens(p); k && (!f || *k < *f)) f = k;
    fires[t.value] = f;
  }
  return fires;
}

}  // namespace detail

struct acyclic_solution {
  parikh_vector x;           // over product transitions
  firing_sequence sequence;  // realization of x in the product
  cost total;
  std::size_t nodes = 0;
};

/// Branch and bound over product transition counts subject to the marking
/// equation, pruned by the incumbent cost and per-place reachable intervals.
/// Each accepted solution is realized; unrealizable ones are discarded.
inline acyclic_solution solve_acyclic_parikh(const word& trace, const accepting_system& sys, const cost_function& c,
                                             std::size_t node_budget, std::size_t state_budget,
                                             const alignment_product& ap) {
  const auto sys_topo = sys.net.topological_transitions();
  if (!sys_topo) throw error(errc::not_acyclic, "model net has a directed cycle");
  const auto& prod = ap.prod;
  const auto& pnet = prod.sys.net;
  const auto m = static_cast<std::uint32_t>(pnet.transition_count());
  const auto np = pnet.place_count();

  // incumbent: every trace event as a log move, then the cheapest complete run
  acyclic_solution best;
  {
    std::vector<transition_index> log_of(trace.size()), model_of(sys.net.transition_count());
    for (std::uint32_t j = 0; j < m; ++j) {
      const auto& mv = prod.moves[j];
      if (mv.is_sync()) continue;
      if (mv.first) log_of[mv.first->value] = {j};
      if (mv.second) model_of[mv.second->value] = {j};
    }
    std::vector<cost> model_costs(sys.net.transition_count());
    for (std::uint32_t t = 0; t < model_costs.size(); ++t) model_costs[t] = c.model({t});
    reach_result run;
    try {
      run = min_cost_reach(sys.net, sys.initial_marking, model_costs, sys.final_marking, state_budget);
    } catch (const error& e) {
      if (e.code() != errc::unreachable) throw;
      throw error(errc::infeasible, "marking equation has no realizable solution: final marking unreachable");
    }
    best.total = run.total;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      best.sequence.push_back(log_of[i]);
      best.total += ap.costs[log_of[i].value];
    }
    for (auto t : run.sequence) best.sequence.push_back(model_of[t.value]);
    best.x = parikh(best.sequence);
  }

  if (m == 0) return best;

  // variable order and bounds
  std::vector<transition_index> order;
  if (auto topo = pnet.topological_transitions()) {
    order = *topo;
  } else {
    std::vector<std::size_t> rank(sys.net.transition_count());
    for (std::size_t i = 0; i < sys_topo->size(); ++i) rank[(*sys_topo)[i].value] = i;
    for (std::uint32_t j = 0; j < m; ++j) order.push_back({j});
    auto key = [&](transition_index j) {
      const auto& mv = prod.moves[j.value];
      return std::pair{mv.second ? static_cast<long>(rank[mv.second->value]) : -1L,
                       mv.first ? static_cast<long>(mv.first->value) : -1L};
    };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
  }
  const auto flow = detail::flow_bounds(sys.net, sys.initial_marking, *sys_topo);

  const auto nvars = order.size();
  std::vector<std::uint64_t> ub(nvars);
  std::vector<std::vector<std::pair<std::size_t, int>>> effect(nvars);
  const auto inc = make_incidence_matrix(pnet);
  for (std::size_t k = 0; k < nvars; ++k) {
    const auto j = order[k];
    const auto& mv = prod.moves[j.value];
    std::optional<std::uint64_t> u;
    if (mv.first) u = 1;
    if (mv.second && flow[mv.second->value]) u = u ? std::min(*u, *flow[mv.second->value]) : *flow[mv.second->value];
    if (!ap.costs[j.value].is_zero()) {
      const auto by_cost = static_cast<std::uint64_t>(best.total.floor_div(ap.costs[j.value]));
      u = u ? std::min(*u, by_cost) : by_cost;
    }
    if (!u)
      throw budget_exceeded_error(0, "no finite bound on the firings of '" + pnet.transition_id(j) + "'");
    ub[k] = *u;
    for (std::uint32_t p = 0; p < np; ++p)
      if (int d = inc({p}, j); d != 0) effect[k].emplace_back(p, d);
  }
  // rest_add[k][p] / rest_sub[k][p]: most tokens variables k.. can add/remove
  std::vector<std::vector<std::int64_t>> rest_add(nvars + 1, std::vector<std::int64_t>(np, 0)), rest_sub = rest_add;
  for (std::size_t k = nvars; k-- > 0;) {
    rest_add[k] = rest_add[k + 1];
    rest_sub[k] = rest_sub[k + 1];
    for (auto [p, d] : effect[k]) (d > 0 ? rest_add : rest_sub)[k][p] += static_cast<std::int64_t>(ub[k]);
  }
  std::vector<std::int64_t> goal(np, 0), cur(np, 0);
  for (const auto& [p, n] : prod.sys.final_marking.entries()) goal[p.value] = n;
  for (const auto& [p, n] : prod.sys.initial_marking.entries()) cur[p.value] = n;
  std::vector<std::uint64_t> used(sys.net.transition_count(), 0);
  std::vector<std::uint64_t> x(m, 0);
  const bool product_acyclic = pnet.is_acyclic();
  std::size_t nodes = 0;

  auto go = [&](auto& self, std::size_t k, const cost& partial) -> void {
    if (++nodes > node_budget)
      throw budget_exceeded_error(nodes, "branch and bound exceeds " + std::to_string(node_budget) + " nodes");
    if (partial >= best.total) return;
    for (std::size_t p = 0; p < np; ++p)
      if (cur[p] - rest_sub[k][p] > goal[p] || cur[p] + rest_add[k][p] < goal[p]) return;
    if (k == nvars) {
      std::vector<std::uint64_t> dense(x);
      std::optional<firing_sequence> seq;
      try {
        parikh_vector xv;
        for (std::uint32_t j = 0; j < m; ++j)
          if (x[j]) xv[{j}] = x[j];
        seq = realize_parikh_acyclic(pnet, prod.sys.initial_marking, xv);
      } catch (const error& e) {
        if (e.code() != errc::stuck_contradiction || product_acyclic) throw;
        seq = detail::realize_exact(pnet, prod.sys.initial_marking, dense);
      }
      if (!seq) return;
      best.sequence = std::move(*seq);
      best.total = partial;
      best.x = parikh(best.sequence);
      return;
    }
    const auto j = order[k];
    const auto& mv = prod.moves[j.value];
    const auto& cj = ap.costs[j.value];
    std::uint64_t cap = ub[k];
    if (mv.second && flow[mv.second->value])
      cap = std::min(cap, *flow[mv.second->value] - used[mv.second->value]);
    // synchronous moves first try to fire, everything else starts from zero
    std::vector<std::uint64_t> values;
    for (std::uint64_t v = 0; v <= cap; ++v) values.push_back(v);
    if (mv.is_sync()) std::reverse(values.begin(), values.end());
    for (auto v : values) {
      const cost next = partial + cj * static_cast<std::int64_t>(v);
      if (next >= best.total && !cj.is_zero()) {
        if (mv.is_sync()) continue;
        break;
      }
      x[j.value] = v;
      for (auto [p, d] : effect[k]) cur[p] += d * static_cast<std::int64_t>(v);
      if (mv.second) used[mv.second->value] += v;
      self(self, k + 1, next);
      if (mv.second) used[mv.second->value] -= v;
      for (auto [p, d] : effect[k]) cur[p] -= d * static_cast<std::int64_t>(v);
      x[j.value] = 0;
    }
  };
  go(go, 0, cost(0));
  best.nodes = nodes;
  return best;
}

inline align_result optimal_alignment_acyclic(const word& trace, const accepting_system& sys, const cost_function& c,
                                              std::size_t node_budget = 10'000'000,
                                              std::size_t state_budget = 1'000'000) {
  const auto ap = make_alignment_product(trace, sys, c);
  const auto sol = solve_acyclic_parikh(trace, sys, c, node_budget, state_budget, ap);
  return {alignment_from_product(ap.prod, trace, sol.sequence), sol.total, "acyclic", sol.nodes, std::nullopt};
}

}  // namespace pnalign
