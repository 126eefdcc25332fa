#pragma once

// Seeded generator of small safe accepting systems for property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace testgen {

enum class shape { s_net, acyclic, general };

inline pnalign::label random_label(std::mt19937& rng) {
  static const char* names[] = {"a", "b", "c"};
  std::uniform_int_distribution<int> d(0, 4);
  const int k = d(rng);
  return k >= 3 ? pnalign::label::silent() : pnalign::label::visible(names[k]);
}

/// Draws nets until one is weakly connected and safe; the final marking is
/// a random reachable marking, so the system is easy sound.
inline pnalign::accepting_system random_system(std::mt19937& rng, shape kind, int max_places = 8,
                                               int max_transitions = 8) {
  using namespace pnalign;
  for (;;) {
    const int np = std::uniform_int_distribution<int>(2, max_places)(rng);
    const int nt = std::uniform_int_distribution<int>(1, max_transitions)(rng);
    accepting_system sys;
    auto& net = sys.net;
    for (int p = 0; p < np; ++p) net.add_place("p" + std::to_string(p));
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int t = 0; t < nt; ++t) {
      std::vector<place_index> pre, post;
      if (kind == shape::s_net) {
        pre.push_back({static_cast<std::uint32_t>(pick(0, np - 1))});
        post.push_back({static_cast<std::uint32_t>(pick(0, np - 1))});
      } else if (kind == shape::acyclic) {
        // arcs only go from lower to higher place index
        const int a = pick(0, np - 2);
        pre.push_back({static_cast<std::uint32_t>(a)});
        if (pick(0, 2) == 0 && a + 1 < np - 1) pre.push_back({static_cast<std::uint32_t>(pick(0, a))});
        const int hi = pick(a + 1, np - 1);
        post.push_back({static_cast<std::uint32_t>(hi)});
        if (pick(0, 2) == 0) post.push_back({static_cast<std::uint32_t>(pick(a + 1, np - 1))});
        if (pre.size() == 2 && pre[1].value == pre[0].value) pre.pop_back();
      } else {
        const int ni = pick(1, 2), no = pick(0, 2);
        for (int i = 0; i < ni; ++i) pre.push_back({static_cast<std::uint32_t>(pick(0, np - 1))});
        for (int i = 0; i < no; ++i) post.push_back({static_cast<std::uint32_t>(pick(0, np - 1))});
      }
      net.add_transition("t" + std::to_string(t), random_label(rng), pre, post);
    }
    if (!net.is_weakly_connected()) continue;
    if (kind == shape::s_net) {
      sys.initial_marking.set({static_cast<std::uint32_t>(pick(0, np - 1))}, 1);
    } else {
      const int k = pick(1, std::min(2, np));
      for (int i = 0; i < k; ++i) sys.initial_marking.set({static_cast<std::uint32_t>(pick(0, np - 1))}, 1);
    }
    if (kind == shape::acyclic && !net.is_acyclic()) continue;
    auto reach = oracle::explore(sys, 60);
    if (!reach) continue;
    bool safe = true;
    for (const auto& m : *reach)
      for (int v : m) safe &= v <= 1;
    if (!safe) continue;
    std::vector<oracle::dense> all(reach->begin(), reach->end());
    const auto& fin = all[static_cast<std::size_t>(pick(0, static_cast<int>(all.size()) - 1))];
    for (std::uint32_t p = 0; p < fin.size(); ++p)
      if (fin[p]) sys.final_marking.set({p}, static_cast<std::uint32_t>(fin[p]));
    return sys;
  }
}

/// Bounded T-system: every place has one producer and one consumer. The
/// second member is the exact bound over all reachable markings.
inline std::pair<pnalign::accepting_system, std::uint32_t> random_tsystem(std::mt19937& rng, int max_transitions = 6,
                                                                         int max_places = 8) {
  using namespace pnalign;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    const int nt = pick(2, max_transitions);
    const int np = pick(2, max_places);
    std::vector<std::vector<place_index>> pre(nt), post(nt);
    accepting_system sys;
    for (int p = 0; p < np; ++p) {
      const auto pi = sys.net.add_place("p" + std::to_string(p));
      post[pick(0, nt - 1)].push_back(pi);
      pre[pick(0, nt - 1)].push_back(pi);
      if (const int k = pick(0, 3); k > 0 && k < 3) sys.initial_marking.set(pi, static_cast<std::uint32_t>(k));
    }
    for (int t = 0; t < nt; ++t)
      sys.net.add_transition("t" + std::to_string(t), random_label(rng), pre[t], post[t]);
    sys.final_marking = sys.initial_marking;
    auto reach = oracle::explore(sys, 400);
    if (!reach || reach->size() < 2) continue;
    int b = 0;
    for (const auto& m : *reach)
      for (int v : m) b = std::max(b, v);
    return {sys, static_cast<std::uint32_t>(std::max(b, 1))};
  }
}

/// Uniformly random enabled transition at each step, stopping early when dead.
inline pnalign::firing_sequence random_run(std::mt19937& rng, const pnalign::petri_net& net, pnalign::marking m,
                                           std::size_t max_len) {
  pnalign::firing_sequence s;
  while (s.size() < max_len) {
    std::vector<pnalign::transition_index> on;
    for (std::uint32_t t = 0; t < net.transition_count(); ++t)
      if (pnalign::is_enabled(net, m, {t})) on.push_back({t});
    if (on.empty()) break;
    const auto t = on[std::uniform_int_distribution<std::size_t>(0, on.size() - 1)(rng)];
    m = pnalign::fire(net, m, t);
    s.push_back(t);
  }
  return s;
}

/// Adds the short-circuit transition o -> i of a workflow net.
inline pnalign::accepting_system short_circuit(pnalign::accepting_system sys) {
  using namespace pnalign;
  const auto src = sys.initial_marking.support().front();
  const auto snk = sys.final_marking.support().front();
  sys.net.add_transition("t_sc", label::silent(), {snk}, {src});
  return sys;
}

inline std::vector<std::string> random_trace(std::mt19937& rng, std::size_t max_len) {
  static const char* names[] = {"a", "b", "c"};
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::vector<std::string> w;
  for (std::size_t i = 0; i < len; ++i) w.emplace_back(names[std::uniform_int_distribution<int>(0, 2)(rng)]);
  return w;
}

}  // namespace testgen
