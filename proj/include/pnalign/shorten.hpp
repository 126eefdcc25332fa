#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "pnalign/petri_net.hpp"

namespace pnalign {

struct cluster {
  std::vector<place_index> preset;
  std::vector<transition_index> members;  // ascending index

  bool operator==(const cluster&) const = default;
};

/// Partition of T by exact pre-set equality, ordered by first member.
inline std::vector<cluster> compute_clusters(const petri_net& net) {
  std::map<std::vector<place_index>, std::size_t> slot;
  std::vector<cluster> out;
  for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
    const auto& pre = net.pre(transition_index{t});
    auto [it, fresh] = slot.emplace(pre, out.size());
    if (fresh) out.push_back({pre, {}});
    out[it->second].members.push_back({t});
  }
  return out;
}

namespace detail {

inline bool shares_place(const std::vector<place_index>& a, const std::vector<place_index>& b) {
  for (auto p : a)
    for (auto q : b)
      if (p.value == q.value) return true;
  return false;
}

inline std::vector<transition_index> support_of(const firing_sequence& s) {
  std::vector<transition_index> out;
  for (const auto& [t, n] : parikh(s)) out.push_back(t);
  return out;
}

// markings visited by s, or not_replayable
inline std::vector<marking> replay(const petri_net& net, const marking& m0, const firing_sequence& s) {
  std::vector<marking> seen{m0};
  seen.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_enabled(net, seen.back(), s[i]))
      throw error(errc::not_replayable,
                  "transition '" + net.transition_id(s[i]) + "' not enabled at step " + std::to_string(i));
    seen.push_back(fire_unchecked(net, seen.back(), s[i]));
  }
  return seen;
}

inline void require_bounded(const std::vector<marking>& seen, std::uint32_t b) {
  for (const auto& m : seen)
    if (m.max_count() > b)
      throw error(errc::not_bounded, "visited marking holds " + std::to_string(m.max_count()) +
                                         " tokens in one place, bound is " + std::to_string(b));
}

// cut every segment between two visits of the same marking
inline firing_sequence drop_repeats(const petri_net& net, const marking& m0, const firing_sequence& s) {
  firing_sequence out;
  std::vector<marking> path{m0};
  for (auto t : s) {
    marking next = fire_unchecked(net, path.back(), t);
    auto hit = std::find(path.begin(), path.end(), next);
    if (hit != path.end()) {
      const auto keep = static_cast<std::size_t>(hit - path.begin());
      path.resize(keep + 1);
      out.resize(keep);
    } else {
      path.push_back(std::move(next));
      out.push_back(t);
    }
  }
  return out;
}

// first occurrences in order, then the rest in order
inline std::vector<firing_sequence> layers(const firing_sequence& s) {
  std::vector<firing_sequence> out;
  firing_sequence rest = s;
  while (!rest.empty()) {
    std::set<transition_index> taken;
    firing_sequence head, tail;
    for (auto t : rest) (taken.insert(t).second ? head : tail).push_back(t);
    out.push_back(std::move(head));
    rest = std::move(tail);
  }
  return out;
}

}  // namespace detail

inline bool is_biased(const petri_net& net, const firing_sequence& s) {
  const auto sup = detail::support_of(s);
  for (std::size_t i = 0; i < sup.size(); ++i)
    for (std::size_t j = i + 1; j < sup.size(); ++j)
      if (detail::shares_place(net.pre(sup[i]), net.pre(sup[j]))) return false;
  return true;
}

inline std::uint64_t biased_length_bound(std::uint64_t b, std::uint64_t k) { return b * k * (k + 1) / 2; }
inline std::uint64_t shortest_sequence_bound(std::uint64_t b, std::uint64_t t) {
  return b * t * (t + 1) * (t + 2) / 6;
}

/// Shortens a biased sequence by peeling layers: each layer fires every
/// remaining support transition once. A run of layers with the same support
/// and zero effect is dropped.
inline firing_sequence shorten_biased(const petri_net& net, const marking& m0, const firing_sequence& s,
                                      std::uint32_t b) {
  if (!is_biased(net, s)) throw error(errc::not_biased, "sequence is not biased");
  detail::require_bounded(detail::replay(net, m0, s), b);
  const auto k = detail::support_of(s).size();

  firing_sequence out;
  marking m = m0;
  auto ls = detail::layers(s);
  std::size_t i = 0;
  while (i < ls.size()) {
    const auto sup = detail::support_of(ls[i]);
    std::size_t j = i;
    while (j + 1 < ls.size() && detail::support_of(ls[j + 1]) == sup) ++j;
    const marking after = fire_sequence(net, m, ls[i]);
    if (after == m) {
      i = j + 1;
      continue;
    }
    // nonzero effect: at most b equal-support layers in a b-bounded run
    for (std::size_t r = i; r <= j; ++r) {
      out.insert(out.end(), ls[r].begin(), ls[r].end());
      m = fire_sequence(net, m, ls[r]);
    }
    i = j + 1;
  }
  out = detail::drop_repeats(net, m0, out);
  if (out.size() > biased_length_bound(b, k))
    throw error(errc::not_bounded, "shortened sequence has length " + std::to_string(out.size()) +
                                       " above b*k(k+1)/2 = " + std::to_string(biased_length_bound(b, k)));
  return out;
}

inline firing_sequence shorten_biased(const accepting_system& sys, const firing_sequence& s, std::uint32_t b) {
  return shorten_biased(sys.net, sys.initial_marking, s, b);
}

/// Per-cluster linear order, lowest first: members absent from `s` by id,
/// then occurring members by last occurrence in `s`.
struct conflict_order {
  std::vector<std::vector<transition_index>> chains;
  std::vector<std::uint32_t> chain_of, rank;

  bool precedes(transition_index a, transition_index b) const {
    return chain_of[a.value] == chain_of[b.value] && rank[a.value] < rank[b.value];
  }
};

inline conflict_order agreeing_conflict_order(const petri_net& net, const firing_sequence& s) {
  std::vector<long> last(net.transition_count(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) last[s[i].value] = static_cast<long>(i);
  conflict_order co;
  co.chain_of.assign(net.transition_count(), 0);
  co.rank.assign(net.transition_count(), 0);
  for (const auto& c : compute_clusters(net)) {
    auto chain = c.members;
    std::stable_sort(chain.begin(), chain.end(), [&](transition_index a, transition_index b) {
      if ((last[a.value] < 0) != (last[b.value] < 0)) return last[a.value] < 0;
      if (last[a.value] < 0) return net.transition_id(a) < net.transition_id(b);
      return last[a.value] < last[b.value];
    });
    for (std::uint32_t r = 0; r < chain.size(); ++r) {
      co.chain_of[chain[r].value] = static_cast<std::uint32_t>(co.chains.size());
      co.rank[chain[r].value] = r;
    }
    co.chains.push_back(std::move(chain));
  }
  return co;
}

inline bool is_ordered(const firing_sequence& s, const conflict_order& co) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (co.precedes(s[j], s[i])) return false;
  return true;
}

/// Depth-first search for a permutation of `s` that replays from `m0` and is
/// ordered w.r.t. `co`. Dead remainders are memoized.
inline std::optional<firing_sequence> ordered_permutation(const petri_net& net, const marking& m0,
                                                          const firing_sequence& s, const conflict_order& co,
                                                          std::size_t budget, std::size_t& nodes) {
  const auto n = net.transition_count();
  std::vector<std::uint32_t> left(n, 0);
  for (auto t : s) ++left[t.value];
  // candidates tried in order of their next unused position in s
  std::vector<std::vector<std::size_t>> where(n);
  for (std::size_t i = 0; i < s.size(); ++i) where[s[i].value].push_back(i);
  std::vector<std::uint32_t> used(n, 0);

  std::set<std::vector<std::uint32_t>> dead;
  firing_sequence out;
  auto ready = [&](transition_index t) {
    if (left[t.value] == 0) return false;
    for (auto u : co.chains[co.chain_of[t.value]]) {
      if (u == t) break;
      if (left[u.value] != 0) return false;
    }
    return true;
  };
  std::function<bool(const marking&)> go = [&](const marking& m) -> bool {
    if (out.size() == s.size()) return true;
    if (++nodes > budget) throw budget_exceeded_error(nodes, "ordered permutation search exceeded its budget");
    if (dead.count(left)) return false;
    std::vector<transition_index> cand;
    for (std::uint32_t t = 0; t < n; ++t)
      if (ready({t}) && is_enabled(net, m, {t})) cand.push_back({t});
    std::sort(cand.begin(), cand.end(), [&](transition_index a, transition_index b) {
      return where[a.value][used[a.value]] < where[b.value][used[b.value]];
    });
    for (auto t : cand) {
      --left[t.value];
      ++used[t.value];
      out.push_back(t);
      if (go(detail::fire_unchecked(net, m, t))) return true;
      out.pop_back();
      --used[t.value];
      ++left[t.value];
    }
    dead.insert(left);
    return false;
  };
  if (go(m0)) return out;
  return std::nullopt;
}

struct shorten_result {
  firing_sequence sequence;
  bool search_exhausted = false;  // original returned unchanged
  std::size_t nodes = 0;
  std::vector<firing_sequence> segments;  // maximal biased pieces of the ordered permutation
};

/// Maximal biased prefixes, left to right.
inline std::vector<firing_sequence> biased_segments(const petri_net& net, const firing_sequence& s) {
  std::vector<firing_sequence> out;
  std::set<transition_index> in_seg;
  for (auto t : s) {
    bool fits = !out.empty();
    if (fits && !in_seg.count(t))
      for (auto u : in_seg) fits &= !detail::shares_place(net.pre(u), net.pre(t));
    if (!fits) {
      out.emplace_back();
      in_seg.clear();
    }
    out.back().push_back(t);
    in_seg.insert(t);
  }
  return out;
}

/// Shortening for live, b-bounded free-choice systems. The caller vouches for
/// liveness and free choice; boundedness of the run is checked.
inline shorten_result shorten_lbfc(const petri_net& net, const marking& m0, const firing_sequence& s, std::uint32_t b,
                                   std::size_t search_budget = 100000) {
  const auto seen = detail::replay(net, m0, s);
  detail::require_bounded(seen, b);
  shorten_result res;
  if (s.empty()) return res;
  if (is_biased(net, s)) {
    res.segments = {s};
    res.sequence = shorten_biased(net, m0, s, b);
  } else {
    const auto co = agreeing_conflict_order(net, s);
    std::optional<firing_sequence> ordered;
    if (is_ordered(s, co)) {
      ordered = s;
    } else {
      try {
        ordered = ordered_permutation(net, m0, s, co, search_budget, res.nodes);
      } catch (const budget_exceeded_error&) {
        res.sequence = s;
        res.search_exhausted = true;
        return res;
      }
      if (!ordered) {
        // the full space was searched without success; only possible outside lbfc
        res.sequence = s;
        res.search_exhausted = true;
        return res;
      }
    }
    res.segments = biased_segments(net, *ordered);
    marking m = m0;
    for (const auto& seg : res.segments) {
      auto part = shorten_biased(net, m, seg, b);
      m = fire_sequence(net, m, part);
      res.sequence.insert(res.sequence.end(), part.begin(), part.end());
    }
    res.sequence = detail::drop_repeats(net, m0, res.sequence);
  }
  const auto cap = shortest_sequence_bound(b, net.transition_count());
  if (res.sequence.size() > cap)
    throw error(errc::not_bounded, "shortened sequence has length " + std::to_string(res.sequence.size()) +
                                       " above b*|T|(|T|+1)(|T|+2)/6 = " + std::to_string(cap));
  return res;
}

inline shorten_result shorten_lbfc(const accepting_system& sys, const firing_sequence& s, std::uint32_t b,
                                   std::size_t search_budget = 100000) {
  return shorten_lbfc(sys.net, sys.initial_marking, s, b, search_budget);
}

}  // namespace pnalign
