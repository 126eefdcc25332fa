#pragma once

// Test-only reference implementations. They re-derive firing from the raw
// pre/post sets on dense vectors and share no search code with the library.

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pnalign/pnalign.hpp"

namespace oracle {

using dense = std::vector<int>;

inline dense to_dense(const pnalign::petri_net& net, const pnalign::marking& m) {
  dense d(net.place_count(), 0);
  for (const auto& [p, n] : m.entries()) d[p.value] = static_cast<int>(n);
  return d;
}

inline std::optional<dense> step(const pnalign::petri_net& net, const dense& m, std::uint32_t t) {
  dense out = m;
  for (auto p : net.pre(pnalign::transition_index{t})) {
    if (out[p.value] == 0) return std::nullopt;
    --out[p.value];
  }
  for (auto p : net.post(pnalign::transition_index{t})) ++out[p.value];
  return out;
}

/// All reachable markings by depth-first search (nullopt past `cap`).
inline std::optional<std::set<dense>> explore(const pnalign::accepting_system& sys, std::size_t cap = 100000) {
  std::set<dense> seen{to_dense(sys.net, sys.initial_marking)};
  std::vector<dense> stack(seen.begin(), seen.end());
  while (!stack.empty()) {
    dense m = stack.back();
    stack.pop_back();
    for (std::uint32_t t = 0; t < sys.net.transition_count(); ++t)
      if (auto n = step(sys.net, m, t); n && seen.insert(*n).second) {
        if (seen.size() > cap) return std::nullopt;
        stack.push_back(*n);
      }
  }
  return seen;
}

/// Number of complete firing sequences of length <= `max_len`.
inline std::size_t count_complete_sequences(const pnalign::accepting_system& sys, std::size_t max_len) {
  const dense goal = to_dense(sys.net, sys.final_marking);
  std::size_t count = 0;
  auto go = [&](auto& self, const dense& m, std::size_t depth) -> void {
    if (m == goal) ++count;
    if (depth == max_len) return;
    for (std::uint32_t t = 0; t < sys.net.transition_count(); ++t)
      if (auto n = step(sys.net, m, t)) self(self, *n, depth + 1);
  };
  go(go, to_dense(sys.net, sys.initial_marking), 0);
  return count;
}

/// Minimal alignment cost found by exhaustive depth-first enumeration of
/// move sequences of at most `max_len` moves, using integer costs scaled by
/// `scale` (costs must be multiples of 1/scale). INT_MAX if none.
inline long enumerate_alignments(const std::vector<std::string>& trace, const pnalign::accepting_system& sys,
                                 const pnalign::cost_function& c, std::size_t max_len, long scale = 1) {
  const auto& net = sys.net;
  const dense goal = to_dense(net, sys.final_marking);
  auto scaled = [&](const pnalign::cost& x) { return x.numerator() * (scale / x.denominator()); };
  long best = LONG_MAX;
  // best remaining budget seen per (pos, marking): revisiting with less budget and more cost is useless
  std::map<std::pair<std::size_t, dense>, std::pair<long, std::size_t>> memo;
  auto go = [&](auto& self, std::size_t pos, const dense& m, long acc, std::size_t left) -> void {
    if (acc >= best) return;
    auto key = std::pair{pos, m};
    if (auto it = memo.find(key); it != memo.end() && it->second.first <= acc && it->second.second >= left) return;
    memo[key] = {acc, left};
    if (pos == trace.size() && m == goal) best = std::min(best, acc);
    if (left == 0) return;
    if (pos < trace.size()) self(self, pos + 1, m, acc + scaled(c.log(trace[pos])), left - 1);
    for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
      auto n = step(net, m, t);
      if (!n) continue;
      const pnalign::transition_index ti{t};
      self(self, pos, *n, acc + scaled(c.model(ti)), left - 1);
      const auto& l = net.labeling(ti);
      if (!l.is_silent() && pos < trace.size() && l.name() == trace[pos])
        self(self, pos + 1, *n, acc + scaled(c.sync(trace[pos], ti)), left - 1);
    }
  };
  go(go, 0, to_dense(net, sys.initial_marking), 0, max_len);
  return best == LONG_MAX ? INT_MAX : best;
}

/// Words of length <= n over `alphabet`, shortest first.
inline std::vector<std::vector<std::string>> all_words(const std::vector<std::string>& alphabet, std::size_t n) {
  std::vector<std::vector<std::string>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const auto end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& a : alphabet) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

/// All distinct order-preserving interleavings of `words`.
inline std::set<std::string> interleavings(const std::vector<std::string>& words) {
  std::set<std::string> out;
  std::vector<std::size_t> pos(words.size(), 0);
  std::string cur;
  auto go = [&](auto& self) -> void {
    bool done = true;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (pos[i] == words[i].size()) continue;
      done = false;
      cur.push_back(words[i][pos[i]++]);
      self(self);
      cur.pop_back();
      --pos[i];
    }
    if (done) out.insert(cur);
  };
  go(go);
  return out;
}

}  // namespace oracle
