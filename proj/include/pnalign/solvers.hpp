#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

#include "pnalign/alignment.hpp"
#include "pnalign/product.hpp"
#include "pnalign/reachability.hpp"
#include "pnalign/search.hpp"

namespace pnalign {

/// T(trace) ⊗ sys with per-transition costs and search order attached.
struct alignment_product {
  product_system prod;
  std::vector<cost> costs;
  std::vector<transition_index> order;  // sync, then model, then log; each by id
};

inline alignment_product make_alignment_product(const word& trace, const accepting_system& sys,
                                                const cost_function& c) {
  alignment_product ap{synchronous_product(trace_system(trace), sys), {}, {}};
  const auto& moves = ap.prod.moves;
  ap.costs.reserve(moves.size());
  std::vector<transition_index> sync, model, log;
  for (std::uint32_t i = 0; i < moves.size(); ++i) {
    const auto& mv = moves[i];
    if (mv.is_sync()) {
      ap.costs.push_back(c.sync(trace[mv.first->value], *mv.second));
      sync.push_back({i});
    } else if (mv.first) {
      ap.costs.push_back(c.log(trace[mv.first->value]));
      log.push_back({i});
    } else {
      ap.costs.push_back(c.model(*mv.second));
      model.push_back({i});
    }
  }
  const auto& net = ap.prod.sys.net;
  auto by_id = [&](transition_index a, transition_index b) { return net.transition_id(a) < net.transition_id(b); };
  for (auto* group : {&sync, &model, &log}) {
    std::sort(group->begin(), group->end(), by_id);
    ap.order.insert(ap.order.end(), group->begin(), group->end());
  }
  return ap;
}

inline move to_move(const product_move& mv, const word& trace) {
  move m;
  if (mv.first) m.activity = trace[mv.first->value];
  m.transition = mv.second;
  return m;
}

inline alignment alignment_from_product(const product_system& prod, const word& trace, const firing_sequence& s) {
  alignment gamma;
  gamma.reserve(s.size());
  for (auto t : s) gamma.push_back(to_move(prod.move(t), trace));
  return gamma;
}

inline void require_easy_sound(const accepting_system& sys, std::size_t state_budget) {
  if (!is_reachable(sys.net, sys.initial_marking, sys.final_marking, state_budget))
    throw error(errc::not_easy_sound, "final marking is not reachable; the system has no complete firing sequence");
}

/// Generic solver: cost-minimal complete firing sequence of T(trace) ⊗ sys.
inline align_result optimal_alignment(const word& trace, const accepting_system& sys, const cost_function& c,
                                      std::size_t state_budget) {
  require_easy_sound(sys, state_budget);
  const auto ap = make_alignment_product(trace, sys, c);
  const auto r = min_cost_reach(ap.prod.sys.net, ap.prod.sys.initial_marking, ap.costs, ap.prod.sys.final_marking,
                                state_budget, ap.order);
  return {alignment_from_product(ap.prod, trace, r.sequence), r.total, "generic", r.states_expanded, std::nullopt};
}

/// S-systems with one token: shortest path over RG(T(trace)) ⊗ RG(sys).
inline align_result optimal_alignment_ssystem(const word& trace, const accepting_system& sys, const cost_function& c,
                                              std::size_t state_budget = 1'000'000) {
  const auto& net = sys.net;
  for (std::uint32_t t = 0; t < net.transition_count(); ++t)
    if (net.pre(transition_index{t}).size() > 1 || net.post(transition_index{t}).size() > 1)
      throw error(errc::not_s_system, "transition '" + net.transition_id({t}) + "' has more than one input or output");
  if (sys.initial_marking.total() != 1)
    throw error(errc::not_single_token, "initial marking holds " + std::to_string(sys.initial_marking.total()) +
                                            " tokens");
  const auto ts = trace_system(trace);
  const auto rg_model = build_reachability_graph(sys, state_budget);
  if (!rg_model.find(sys.final_marking))
    throw error(errc::not_easy_sound, "final marking is not reachable; the system has no complete firing sequence");
  const auto rg_trace = build_reachability_graph(ts, trace.size() + 1);
  const auto g = product_of_reach_graphs(rg_trace, ts.net, rg_model, net);
  const auto target = *g.find(ts.final_marking + sys.final_marking.shifted(static_cast<std::uint32_t>(trace.size() + 1)));

  auto arc_cost = [&](const rg_arc& a) {
    if (a.first && a.second) return c.sync(trace[a.first->value], *a.second);
    if (a.first) return c.log(trace[a.first->value]);
    return c.model(*a.second);
  };
  auto rank = [&](const rg_arc& a) {
    const int kind = a.first && a.second ? 0 : a.second ? 1 : 2;
    return std::tuple{kind, a.second ? net.transition_id(*a.second) : std::string{},
                      a.first ? a.first->value : 0u};
  };

  const auto n = g.size();
  std::vector<std::optional<cost>> dist(n);
  std::vector<std::optional<std::size_t>> via(n);
  std::vector<bool> settled(n, false);
  using entry = std::tuple<cost, std::uint64_t, std::uint32_t>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> open;
  std::uint64_t seq = 0;
  dist[0] = cost(0);
  open.emplace(cost(0), seq++, 0);
  std::size_t expanded = 0;
  while (!open.empty()) {
    auto [d, _, v] = open.top();
    open.pop();
    if (settled[v] || d != *dist[v]) continue;
    settled[v] = true;
    ++expanded;
    if (v == target) break;
    auto outs = g.out_arcs(v);
    std::sort(outs.begin(), outs.end(), [&](std::size_t x, std::size_t y) { return rank(g.arcs()[x]) < rank(g.arcs()[y]); });
    for (auto i : outs) {
      const auto& a = g.arcs()[i];
      const cost nd = d + arc_cost(a);
      if (!settled[a.target] && (!dist[a.target] || nd < *dist[a.target])) {
        dist[a.target] = nd;
        via[a.target] = i;
        open.emplace(nd, seq++, a.target);
      }
    }
  }
  if (!settled[target]) throw error(errc::unreachable, "no alignment exists");
  alignment gamma;
  for (auto v = target; via[v];) {
    const auto& a = g.arcs()[*via[v]];
    move m;
    if (a.first) m.activity = trace[a.first->value];
    m.transition = a.second;
    gamma.push_back(m);
    v = a.source;
  }
  std::reverse(gamma.begin(), gamma.end());
  return {gamma, *dist[target], "ssystem", expanded, std::nullopt};
}

/// True iff some cost-0 alignment under standard costs exists: search over
/// synchronous and silent model moves only.
inline bool membership(const word& trace, const accepting_system& sys, std::size_t state_budget = 1'000'000) {
  const auto& net = sys.net;
  using state = std::pair<std::size_t, marking>;
  std::set<state> seen{{0, sys.initial_marking}};
  std::deque<state> queue{{0, sys.initial_marking}};
  while (!queue.empty()) {
    auto [pos, m] = std::move(queue.front());
    queue.pop_front();
    if (pos == trace.size() && m == sys.final_marking) return true;
    for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
      const transition_index ti{t};
      const auto& l = net.labeling(ti);
      const bool sync = !l.is_silent() && pos < trace.size() && l.name() == trace[pos];
      if ((!l.is_silent() && !sync) || !is_enabled(net, m, ti)) continue;
      state next{sync ? pos + 1 : pos, detail::fire_unchecked(net, m, ti)};
      if (seen.insert(next).second) {
        if (seen.size() > state_budget)
          throw budget_exceeded_error(seen.size(), "membership search exceeds " + std::to_string(state_budget) +
                                                       " states");
        queue.push_back(std::move(next));
      }
    }
  }
  return false;
}

/// (L+1)·(b·T(T+1)(T+2)/6 + 1)
inline std::uint64_t lbfc_length_bound(std::uint64_t t_count, std::uint64_t b, std::uint64_t trace_len) {
  if (b == 0) throw error(errc::invalid_argument, "bound must be at least 1");
  return (trace_len + 1) * (b * t_count * (t_count + 1) * (t_count + 2) / 6 + 1);
}

/// Exhaustive least-cost search over move sequences of at most `length_cap`
/// moves and cost at most `cost_cap`, layered by move count.
inline cost brute_force_oracle(const word& trace, const accepting_system& sys, const cost_function& c,
                               const cost& cost_cap, std::uint64_t length_cap) {
  const auto& net = sys.net;
  using state = std::pair<std::size_t, marking>;
  std::map<state, cost> best{{{0, sys.initial_marking}, cost(0)}};
  std::vector<state> frontier{{0, sys.initial_marking}};
  for (std::uint64_t k = 0; k < length_cap && !frontier.empty(); ++k) {
    std::map<state, cost> improved;
    auto relax = [&](state s, cost nc) {
      if (nc > cost_cap) return;
      auto it = best.find(s);
      if (it != best.end() && it->second <= nc) return;
      auto jt = improved.find(s);
      if (jt == improved.end() || nc < jt->second) improved[s] = nc;
    };
    for (const auto& s : frontier) {
      const auto& [pos, m] = s;
      const cost base = best.at(s);
      if (pos < trace.size()) relax({pos + 1, m}, base + c.log(trace[pos]));
      for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
        const transition_index ti{t};
        if (!is_enabled(net, m, ti)) continue;
        const marking next = detail::fire_unchecked(net, m, ti);
        relax({pos, next}, base + c.model(ti));
        const auto& l = net.labeling(ti);
        if (!l.is_silent() && pos < trace.size() && l.name() == trace[pos])
          relax({pos + 1, next}, base + c.sync(trace[pos], ti));
      }
    }
    frontier.clear();
    for (auto& [s, nc] : improved) {
      best[s] = nc;
      frontier.push_back(s);
    }
  }
  auto it = best.find({trace.size(), sys.final_marking});
  if (it == best.end())
    throw error(errc::cap_exhausted, "no alignment within " + std::to_string(length_cap) + " moves and cost " +
                                         cost_cap.str());
  return it->second;
}

}  // namespace pnalign
