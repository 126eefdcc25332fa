#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "pnalign/reachability.hpp"

namespace pnalign {

struct structural_report {
  bool free_choice = false;
  bool s_net = false;
  bool t_net = false;
  bool conflict_free = false;
  bool acyclic = false;
  bool workflow_shape = false;
  std::optional<std::string> source, sink;
};

namespace detail {

/// Strong connectivity of the flow graph, optionally with an extra arc
/// from place `from` back to place `to` through a virtual transition.
inline bool strongly_connected(const petri_net& net, std::optional<std::pair<place_index, place_index>> extra) {
  const std::size_t np = net.place_count();
  const std::size_t n = np + net.transition_count() + (extra ? 1 : 0);
  if (n == 0) return true;
  auto successors = [&](std::size_t v, bool reverse) {
    std::vector<std::size_t> out;
    if (v < np) {
      const place_index p{static_cast<std::uint32_t>(v)};
      for (auto t : reverse ? net.pre(p) : net.post(p)) out.push_back(np + t.value);
      if (extra && (reverse ? extra->second : extra->first) == p) out.push_back(n - 1);
    } else if (extra && v == n - 1) {
      out.push_back(reverse ? extra->first.value : extra->second.value);
    } else {
      const transition_index t{static_cast<std::uint32_t>(v - np)};
      for (auto p : reverse ? net.pre(t) : net.post(t)) out.push_back(p.value);
    }
    return out;
  };
  for (bool reverse : {false, true}) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++count;
      for (auto w : successors(v, reverse))
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    if (count != n) return false;
  }
  return true;
}

}  // namespace detail

inline structural_report structural_class(const petri_net& net, const marking& init, const marking& final_m) {
  structural_report r;
  const auto np = static_cast<std::uint32_t>(net.place_count());
  const auto nt = static_cast<std::uint32_t>(net.transition_count());

  r.s_net = r.t_net = r.free_choice = r.conflict_free = true;
  for (std::uint32_t t = 0; t < nt; ++t)
    if (net.pre(transition_index{t}).size() > 1 || net.post(transition_index{t}).size() > 1) r.s_net = false;
  for (std::uint32_t p = 0; p < np; ++p) {
    const place_index pi{p};
    if (net.pre(pi).size() > 1 || net.post(pi).size() > 1) r.t_net = false;
    const auto& outs = net.post(pi);
    if (outs.size() > 1) {
      const auto& ins = net.pre(pi);
      for (auto t : outs)
        if (std::find(ins.begin(), ins.end(), t) == ins.end()) r.conflict_free = false;
    }
  }
  for (std::uint32_t a = 0; a < nt && r.free_choice; ++a)
    for (std::uint32_t b = a + 1; b < nt; ++b) {
      const auto& pa = net.pre(transition_index{a});
      const auto& pb = net.pre(transition_index{b});
      if (pa == pb) continue;
      std::vector<place_index> common;
      std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
      if (!common.empty()) {
        r.free_choice = false;
        break;
      }
    }
  r.acyclic = net.is_acyclic();

  // the source is designated by the initial marking and may have incoming arcs
  if (init.entries().size() == 1 && final_m.entries().size() == 1 && init.total() == 1 && final_m.total() == 1) {
    const auto i = init.entries()[0].first, o = final_m.entries()[0].first;
    if (i != o && net.post(o).empty() && detail::strongly_connected(net, std::pair{o, i})) {
      r.workflow_shape = true;
      r.source = net.place_id(i);
      r.sink = net.place_id(o);
    }
  }
  return r;
}

/// Three-valued verdict for flags decided under a budget.
enum class verdict { no, yes, inconclusive };

inline const char* to_string(verdict v) {
  switch (v) {
    case verdict::yes:
      return "true";
    case verdict::no:
      return "false";
    default:
      return "inconclusive";
  }
}

inline verdict to_verdict(bool b) { return b ? verdict::yes : verdict::no; }

/// Evidence for a flag. `path` leads from the initial marking to `at`;
/// `continuation`, when `target` is set, leads from `at` to `target`.
/// `transition` is enabled after the continuation (holds) or names the
/// offending transition (does not hold).
struct certificate {
  std::string flag;
  bool holds = true;
  firing_sequence path;
  marking at;
  firing_sequence continuation;
  std::optional<marking> target;
  std::optional<transition_index> transition;
};

struct behavioral_report {
  std::optional<std::uint32_t> bound_found;
  verdict safe = verdict::inconclusive;
  verdict quasi_live = verdict::inconclusive;
  verdict live = verdict::inconclusive;
  verdict cyclic = verdict::inconclusive;
  verdict easy_sound = verdict::inconclusive;
  verdict option_to_complete = verdict::inconclusive;
  verdict proper_completion = verdict::inconclusive;
  verdict sound = verdict::inconclusive;
  std::size_t states_explored = 0;
  bool budget_exhausted = false;
  std::vector<certificate> certificates;
};

namespace detail {

/// BFS tree over a reachability graph: parent arc per vertex.
struct bfs_tree {
  std::vector<std::optional<std::size_t>> parent_arc;

  explicit bfs_tree(const reachability_graph& g) : parent_arc(g.size()) {
    std::vector<bool> seen(g.size(), false);
    std::deque<std::uint32_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (auto i : g.out_arcs(v)) {
        const auto w = g.arcs()[i].target;
        if (!seen[w]) {
          seen[w] = true;
          parent_arc[w] = i;
          q.push_back(w);
        }
      }
    }
  }

  firing_sequence path_to(const reachability_graph& g, std::uint32_t v) const {
    firing_sequence s;
    while (parent_arc[v]) {
      const auto& a = g.arcs()[*parent_arc[v]];
      s.push_back(*a.first);
      v = a.source;
    }
    std::reverse(s.begin(), s.end());
    return s;
  }
};

/// Shortest path from `from` to any vertex satisfying `goal`.
template <class Goal>
std::optional<std::pair<std::uint32_t, firing_sequence>> path_within(const reachability_graph& g, std::uint32_t from,
                                                                     Goal goal) {
  std::vector<std::optional<std::size_t>> parent(g.size());
  std::vector<bool> seen(g.size(), false);
  std::deque<std::uint32_t> q{from};
  seen[from] = true;
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    if (goal(v)) {
      firing_sequence s;
      for (auto u = v; u != from;) {
        const auto& a = g.arcs()[*parent[u]];
        s.push_back(*a.first);
        u = a.source;
      }
      std::reverse(s.begin(), s.end());
      return std::pair{v, s};
    }
    for (auto i : g.out_arcs(v)) {
      const auto w = g.arcs()[i].target;
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = i;
        q.push_back(w);
      }
    }
  }
  return std::nullopt;
}

/// For every vertex, the first arc of a shortest path to `target` (nullopt
/// at the target and at vertices that cannot reach it).
struct toward_tree {
  std::vector<std::optional<std::size_t>> next_arc;
  std::vector<bool> reaches;

  toward_tree(const reachability_graph& g, std::uint32_t target) : next_arc(g.size()), reaches(g.size(), false) {
    std::vector<std::vector<std::size_t>> rev(g.size());
    for (std::size_t i = 0; i < g.arcs().size(); ++i) rev[g.arcs()[i].target].push_back(i);
    std::deque<std::uint32_t> q{target};
    reaches[target] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (auto i : rev[v]) {
        const auto u = g.arcs()[i].source;
        if (!reaches[u]) {
          reaches[u] = true;
          next_arc[u] = i;
          q.push_back(u);
        }
      }
    }
  }

  firing_sequence path_from(const reachability_graph& g, std::uint32_t v) const {
    firing_sequence s;
    while (next_arc[v]) {
      const auto& a = g.arcs()[*next_arc[v]];
      s.push_back(*a.first);
      v = a.target;
    }
    return s;
  }
};

/// Iterative Tarjan; returns component id per vertex.
inline std::vector<std::uint32_t> scc(const reachability_graph& g, std::uint32_t& count) {
  const auto n = static_cast<std::uint32_t>(g.size());
  constexpr auto none = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(n, none), low(n, 0), comp(n, none);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::uint32_t next = 0;
  count = 0;
  struct frame {
    std::uint32_t v;
    std::size_t edge;
  };
  for (std::uint32_t s = 0; s < n; ++s) {
    if (index[s] != none) continue;
    std::vector<frame> call{{s, 0}};
    index[s] = low[s] = next++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!call.empty()) {
      auto& f = call.back();
      const auto& outs = g.out_arcs(f.v);
      if (f.edge < outs.size()) {
        const auto w = g.arcs()[outs[f.edge++]].target;
        if (index[w] == none) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        const auto v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::uint32_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = count;
          } while (w != v);
          ++count;
        }
      }
    }
  }
  return comp;
}

}  // namespace detail

/// Smallest bound b <= b_max covering all reachable markings, or a witness
/// marking exceeding b_max. Inconclusive (budget_exhausted) when the state
/// budget runs out first.
inline behavioral_report bounded_and_safe(const accepting_system& sys, std::uint32_t b_max, std::size_t state_budget) {
  behavioral_report r;
  const auto& net = sys.net;
  const auto order = net.transitions_by_id();
  std::unordered_map<marking, std::uint32_t> seen;
  std::vector<marking> verts{sys.initial_marking};
  std::vector<std::pair<std::uint32_t, transition_index>> parent{{0, {}}};
  seen.emplace(sys.initial_marking, 0);
  std::uint32_t bound = 0;
  auto path_to = [&](std::uint32_t v) {
    firing_sequence s;
    while (v != 0) {
      s.push_back(parent[v].second);
      v = parent[v].first;
    }
    std::reverse(s.begin(), s.end());
    return s;
  };
  for (std::uint32_t v = 0; v < verts.size(); ++v) {
    const marking m = verts[v];
    bound = std::max(bound, m.max_count());
    if (m.max_count() > b_max) {
      r.bound_found.reset();
      r.safe = verdict::no;
      r.states_explored = verts.size();
      r.certificates.push_back({"bounded", false, path_to(v), m, {}, std::nullopt, std::nullopt});
      return r;
    }
    for (auto t : order) {
      if (!is_enabled(net, m, t)) continue;
      auto next = detail::fire_unchecked(net, m, t);
      if (seen.emplace(next, static_cast<std::uint32_t>(verts.size())).second) {
        if (verts.size() + 1 > state_budget) {
          r.budget_exhausted = true;
          r.states_explored = verts.size();
          return r;
        }
        verts.push_back(std::move(next));
        parent.push_back({v, t});
      }
    }
  }
  r.states_explored = verts.size();
  r.bound_found = std::max<std::uint32_t>(bound, 1);
  r.safe = to_verdict(*r.bound_found == 1);
  std::uint32_t argmax = 0;
  for (std::uint32_t v = 0; v < verts.size(); ++v)
    if (verts[v].max_count() > verts[argmax].max_count()) argmax = v;
  r.certificates.push_back({"bounded", true, path_to(argmax), verts[argmax], {}, std::nullopt, std::nullopt});
  return r;
}

/// Per-vertex witnesses (home marking, option to complete) are kept for the
/// first `per_vertex_certificates` vertices in BFS order.
inline behavioral_report behavioral_class(const accepting_system& sys, std::size_t state_budget,
                                          std::size_t per_vertex_certificates = 2000) {
  behavioral_report r;
  reachability_graph g;
  try {
    g = build_reachability_graph(sys, state_budget);
  } catch (const budget_exceeded_error& e) {
    r.budget_exhausted = true;
    r.states_explored = e.discovered();
    return r;
  }
  const auto& net = sys.net;
  const auto n = static_cast<std::uint32_t>(g.size());
  const auto nt = static_cast<std::uint32_t>(net.transition_count());
  r.states_explored = n;
  detail::bfs_tree tree(g);
  auto cert = [&](std::string flag, bool holds, std::uint32_t v) {
    certificate c;
    c.flag = std::move(flag);
    c.holds = holds;
    c.path = tree.path_to(g, v);
    c.at = g.vertices()[v];
    return c;
  };

  std::uint32_t bound = 1, argmax = 0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (g.vertices()[v].max_count() > bound) {
      bound = g.vertices()[v].max_count();
      argmax = v;
    }
  r.bound_found = bound;
  r.safe = to_verdict(bound == 1);
  r.certificates.push_back(cert("safe", bound == 1, argmax));

  // quasi-liveness: first vertex in BFS order enabling each transition
  bool ql = true;
  for (std::uint32_t t = 0; t < nt; ++t) {
    const transition_index ti{t};
    std::optional<std::uint32_t> where;
    for (std::uint32_t v = 0; v < n && !where; ++v)
      if (is_enabled(net, g.vertices()[v], ti)) where = v;
    if (where) {
      auto c = cert("quasi_live", true, *where);
      c.transition = ti;
      r.certificates.push_back(std::move(c));
    } else {
      ql = false;
      auto c = cert("quasi_live", false, 0);
      c.transition = ti;
      r.certificates.push_back(std::move(c));
    }
  }
  r.quasi_live = to_verdict(ql);

  // liveness over bottom components
  std::uint32_t ncomp = 0;
  const auto comp = detail::scc(g, ncomp);
  std::vector<bool> bottom(ncomp, true);
  for (const auto& a : g.arcs())
    if (comp[a.source] != comp[a.target]) bottom[comp[a.source]] = false;
  std::vector<std::uint32_t> rep(ncomp, n);
  for (std::uint32_t v = 0; v < n; ++v)
    if (rep[comp[v]] == n) rep[comp[v]] = v;
  bool live = true;
  for (std::uint32_t c = 0; c < ncomp && live; ++c) {
    if (!bottom[c]) continue;
    for (std::uint32_t t = 0; t < nt; ++t) {
      const transition_index ti{t};
      auto hit = detail::path_within(g, rep[c], [&](std::uint32_t v) { return is_enabled(net, g.vertices()[v], ti); });
      auto ce = cert("live", bool(hit), rep[c]);
      ce.transition = ti;
      if (hit) {
        ce.continuation = hit->second;
        ce.target = g.vertices()[hit->first];
      } else {
        live = false;
      }
      r.certificates.push_back(std::move(ce));
      if (!live) break;
    }
  }
  r.live = to_verdict(live);

  // cyclic: initial marking is a home marking
  {
    const detail::toward_tree home(g, 0);
    auto bad = std::find(home.reaches.begin(), home.reaches.end(), false);
    if (bad == home.reaches.end()) {
      r.cyclic = verdict::yes;
      for (std::uint32_t v = 0; v < n && v < per_vertex_certificates; ++v) {
        auto ce = cert("cyclic", true, v);
        ce.continuation = home.path_from(g, v);
        ce.target = g.root();
        r.certificates.push_back(std::move(ce));
      }
    } else {
      r.cyclic = verdict::no;
      r.certificates.push_back(cert("cyclic", false, static_cast<std::uint32_t>(bad - home.reaches.begin())));
    }
  }

  const auto fin = g.find(sys.final_marking);
  r.easy_sound = to_verdict(fin.has_value());
  if (fin) {
    auto ce = cert("easy_sound", true, *fin);
    ce.target = sys.final_marking;
    r.certificates.push_back(std::move(ce));
  } else {
    r.certificates.push_back(cert("easy_sound", false, 0));
  }

  bool otc = fin.has_value();
  if (fin) {
    const detail::toward_tree done(g, *fin);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!done.reaches[v]) {
        otc = false;
        r.certificates.push_back(cert("option_to_complete", false, v));
        break;
      }
      if (v >= per_vertex_certificates) continue;
      auto ce = cert("option_to_complete", true, v);
      ce.continuation = done.path_from(g, v);
      ce.target = sys.final_marking;
      r.certificates.push_back(std::move(ce));
    }
  } else {
    r.certificates.push_back(cert("option_to_complete", false, 0));
  }
  r.option_to_complete = to_verdict(otc);

  bool pc = true;
  for (std::uint32_t v = 0; v < n && pc; ++v) {
    const auto& m = g.vertices()[v];
    if (m.covers(sys.final_marking) && m != sys.final_marking) {
      pc = false;
      r.certificates.push_back(cert("proper_completion", false, v));
    }
  }
  r.proper_completion = to_verdict(pc);
  r.sound = to_verdict(otc && pc && ql);
  return r;
}

}  // namespace pnalign
