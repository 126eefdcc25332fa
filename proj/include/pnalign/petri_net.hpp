#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pnalign/error.hpp"
#include "pnalign/marking.hpp"

namespace pnalign {

using word = std::vector<std::string>;

inline bool is_label_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

/// Transition label: a visible activity name or the silent label tau.
class label {
 public:
  label() = default;  // silent

  static label silent() { return {}; }
  static label visible(std::string name) {
    if (!is_label_token(name)) throw error(errc::invalid_argument, "invalid label '" + name + "'");
    label l;
    l.name_ = std::move(name);
    return l;
  }

  bool is_silent() const { return name_.empty(); }
  const std::string& name() const { return name_; }
  std::string display() const { return is_silent() ? "τ" : name_; }

  friend bool operator==(const label&, const label&) = default;

 private:
  std::string name_;
};

/// Place/transition net with unweighted arcs. Vertices are addressed by
/// index; textual ids are kept for lookup and rendering.
class petri_net {
 public:
  place_index add_place(std::string id) {
    check_fresh(id);
    const place_index p{static_cast<std::uint32_t>(place_ids_.size())};
    ids_.emplace(id, vertex_ref{true, p.value});
    place_ids_.push_back(std::move(id));
    place_pre_.emplace_back();
    place_post_.emplace_back();
    return p;
  }

  transition_index add_transition(std::string id, label lab, std::vector<place_index> pre,
                                  std::vector<place_index> post) {
    check_fresh(id);
    normalize(pre);
    normalize(post);
    const transition_index t{static_cast<std::uint32_t>(transition_ids_.size())};
    for (auto p : pre) place_post_.at(p.value).push_back(t);
    for (auto p : post) place_pre_.at(p.value).push_back(t);
    ids_.emplace(id, vertex_ref{false, t.value});
    transition_ids_.push_back(std::move(id));
    labels_.push_back(std::move(lab));
    pre_.push_back(std::move(pre));
    post_.push_back(std::move(post));
    return t;
  }

  std::size_t place_count() const { return place_ids_.size(); }
  std::size_t transition_count() const { return transition_ids_.size(); }

  const std::string& place_id(place_index p) const { return place_ids_.at(p.value); }
  const std::string& transition_id(transition_index t) const { return transition_ids_.at(t.value); }
  const label& labeling(transition_index t) const { return labels_.at(t.value); }

  /// •t and t•, sorted by index.
  const std::vector<place_index>& pre(transition_index t) const { return pre_.at(t.value); }
  const std::vector<place_index>& post(transition_index t) const { return post_.at(t.value); }
  /// •p and p•, in insertion order.
  const std::vector<transition_index>& pre(place_index p) const { return place_pre_.at(p.value); }
  const std::vector<transition_index>& post(place_index p) const { return place_post_.at(p.value); }

  std::optional<place_index> find_place(std::string_view id) const {
    auto it = ids_.find(std::string(id));
    if (it == ids_.end() || !it->second.is_place) return std::nullopt;
    return place_index{it->second.index};
  }
  std::optional<transition_index> find_transition(std::string_view id) const {
    auto it = ids_.find(std::string(id));
    if (it == ids_.end() || it->second.is_place) return std::nullopt;
    return transition_index{it->second.index};
  }
  bool has_id(std::string_view id) const { return ids_.count(std::string(id)) != 0; }

  place_index place(std::string_view id) const {
    if (auto p = find_place(id)) return *p;
    throw error(errc::invalid_argument, "unknown place '" + std::string(id) + "'");
  }
  transition_index transition(std::string_view id) const {
    if (auto t = find_transition(id)) return *t;
    throw error(errc::unknown_transition, "unknown transition '" + std::string(id) + "'");
  }

  /// Transitions ordered lexicographically by id; the exploration order.
  std::vector<transition_index> transitions_by_id() const {
    std::vector<transition_index> order(transition_count());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = {i};
    std::sort(order.begin(), order.end(), [&](transition_index a, transition_index b) {
      return transition_ids_[a.value] < transition_ids_[b.value];
    });
    return order;
  }

  /// Convenience for tests and fixtures: {{"p1", 1}, {"p2", 1}}.
  marking make_marking(std::initializer_list<std::pair<std::string_view, std::uint32_t>> counts) const {
    marking m;
    for (const auto& [id, n] : counts) m.add(place(id), n);
    return m;
  }

  std::vector<std::string> alphabet() const {
    std::vector<std::string> out;
    for (const auto& l : labels_)
      if (!l.is_silent() && std::find(out.begin(), out.end(), l.name()) == out.end())
        out.push_back(l.name());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_weakly_connected() const {
    const std::size_t n = place_count() + transition_count();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t visited = 0;
    const std::size_t np = place_count();
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      ++visited;
      auto visit = [&](std::size_t w) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      };
      if (v < np) {
        for (auto t : place_pre_[v]) visit(np + t.value);
        for (auto t : place_post_[v]) visit(np + t.value);
      } else {
        for (auto p : pre_[v - np]) visit(p.value);
        for (auto p : post_[v - np]) visit(p.value);
      }
    }
    return visited == n;
  }

  /// Directed cycle check over the bipartite flow graph.
  bool is_acyclic() const { return topological_transitions().has_value(); }

  /// Transitions in a topological order of the flow graph, if it is acyclic.
  std::optional<std::vector<transition_index>> topological_transitions() const {
    const std::size_t np = place_count();
    const std::size_t n = np + transition_count();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t p = 0; p < np; ++p) indegree[p] = place_pre_[p].size();
    for (std::size_t t = 0; t < transition_count(); ++t) indegree[np + t] = pre_[t].size();
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v)
      if (indegree[v] == 0) ready.push(v);
    std::vector<transition_index> order;
    std::size_t processed = 0;
    while (!ready.empty()) {
      const auto v = ready.top();
      ready.pop();
      ++processed;
      auto release = [&](std::size_t w) {
        if (--indegree[w] == 0) ready.push(w);
      };
      if (v < np) {
        for (auto t : place_post_[v]) release(np + t.value);
      } else {
        order.push_back({static_cast<std::uint32_t>(v - np)});
        for (auto p : post_[v - np]) release(p.value);
      }
    }
    if (processed != n) return std::nullopt;
    return order;
  }

 private:
  struct vertex_ref {
    bool is_place;
    std::uint32_t index;
  };

  void check_fresh(const std::string& id) const {
    if (id.empty()) throw error(errc::invalid_argument, "empty vertex id");
    if (ids_.count(id)) throw error(errc::duplicate_id, "duplicate id '" + id + "'");
  }
  void normalize(std::vector<place_index>& v) const {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (auto p : v)
      if (p.value >= place_count()) throw error(errc::invalid_argument, "arc to unknown place");
  }

  std::vector<std::string> place_ids_;
  std::vector<std::string> transition_ids_;
  std::vector<label> labels_;
  std::vector<std::vector<place_index>> pre_, post_;
  std::vector<std::vector<transition_index>> place_pre_, place_post_;
  std::unordered_map<std::string, vertex_ref> ids_;
};

struct accepting_system {
  petri_net net;
  marking initial_marking;
  marking final_marking;
};

using firing_sequence = std::vector<transition_index>;
using parikh_vector = std::map<transition_index, std::uint64_t>;

inline bool is_enabled(const petri_net& net, const marking& m, transition_index t) {
  for (auto p : net.pre(t))
    if (m[p] == 0) return false;
  return true;
}

namespace detail {
inline marking fire_unchecked(const petri_net& net, const marking& m, transition_index t) {
  marking out = m;
  const auto& pre = net.pre(t);
  const auto& post = net.post(t);
  for (auto p : pre)
    if (!std::binary_search(post.begin(), post.end(), p)) out.add(p, -1);
  for (auto p : post)
    if (!std::binary_search(pre.begin(), pre.end(), p)) out.add(p, +1);
  return out;
}
}  // namespace detail

/// Fires `t` at `m`. Places on a self-loop with `t` keep their count.
inline marking fire(const petri_net& net, const marking& m, transition_index t, std::size_t step = 0) {
  if (t.value >= net.transition_count())
    throw error(errc::unknown_transition, "unknown transition #" + std::to_string(t.value));
  for (auto p : net.pre(t))
    if (m[p] == 0) throw not_enabled_error(net.place_id(p), step, net.transition_id(t));
  return detail::fire_unchecked(net, m, t);
}

inline marking fire(const petri_net& net, const marking& m, std::string_view t) {
  return fire(net, m, net.transition(t));
}

inline marking fire_sequence(const petri_net& net, marking m, const firing_sequence& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) m = fire(net, m, steps[i], i);
  return m;
}

inline firing_sequence sequence_of(const petri_net& net, std::initializer_list<std::string_view> ids) {
  firing_sequence s;
  for (auto id : ids) s.push_back(net.transition(id));
  return s;
}

inline parikh_vector parikh(const firing_sequence& s) {
  parikh_vector v;
  for (auto t : s) ++v[t];
  return v;
}

/// Pointwise `a <= b`.
inline bool parikh_leq(const parikh_vector& a, const parikh_vector& b) {
  for (const auto& [t, n] : a) {
    auto it = b.find(t);
    if (n > 0 && (it == b.end() || it->second < n)) return false;
  }
  return true;
}

/// Dense {-1, 0, +1} matrix, rows are places and columns transitions.
class incidence_matrix {
 public:
  incidence_matrix(std::size_t places, std::size_t transitions)
      : places_(places), transitions_(transitions), entries_(places * transitions, 0) {}

  int operator()(place_index p, transition_index t) const { return entries_[p.value * transitions_ + t.value]; }
  int& at(place_index p, transition_index t) { return entries_[p.value * transitions_ + t.value]; }
  std::size_t places() const { return places_; }
  std::size_t transitions() const { return transitions_; }

  /// m0 + N·x, or nullopt if some place would go negative.
  std::optional<marking> apply(const marking& m0, const parikh_vector& x) const {
    std::vector<std::int64_t> dense(places_, 0);
    for (const auto& [p, n] : m0.entries()) dense[p.value] = n;
    for (const auto& [t, n] : x)
      for (std::size_t p = 0; p < places_; ++p)
        dense[p] += static_cast<std::int64_t>(n) * entries_[p * transitions_ + t.value];
    marking out;
    for (std::size_t p = 0; p < places_; ++p) {
      if (dense[p] < 0) return std::nullopt;
      out.set({static_cast<std::uint32_t>(p)}, static_cast<std::uint32_t>(dense[p]));
    }
    return out;
  }

 private:
  std::size_t places_, transitions_;
  std::vector<int> entries_;
};

inline incidence_matrix make_incidence_matrix(const petri_net& net) {
  if (net.place_count() == 0 || net.transition_count() == 0)
    throw error(errc::empty_net, "incidence matrix needs at least one place and one transition");
  incidence_matrix n(net.place_count(), net.transition_count());
  for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
    const transition_index ti{t};
    const auto& pre = net.pre(ti);
    const auto& post = net.post(ti);
    for (auto p : pre)
      if (!std::binary_search(post.begin(), post.end(), p)) n.at(p, ti) = -1;
    for (auto p : post)
      if (!std::binary_search(pre.begin(), pre.end(), p)) n.at(p, ti) = +1;
  }
  return n;
}

/// Line-shaped system accepting exactly `trace`: places p0..pn, transition
/// ti labeled trace[i-1] between p(i-1) and pi.
inline accepting_system trace_system(const word& trace) {
  accepting_system sys;
  auto& net = sys.net;
  net.add_place("p0");
  for (std::size_t i = 1; i <= trace.size(); ++i) {
    const auto p = net.add_place("p" + std::to_string(i));
    net.add_transition("t" + std::to_string(i), label::visible(trace[i - 1]),
                       {place_index{static_cast<std::uint32_t>(i - 1)}}, {p});
  }
  sys.initial_marking.set({0}, 1);
  sys.final_marking.set({static_cast<std::uint32_t>(trace.size())}, 1);
  return sys;
}

/// Human-readable `{p1:1, p2:1}` rendering.
inline std::string to_string(const petri_net& net, const marking& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [p, n] : m.entries()) {
    if (!first) out += ", ";
    first = false;
    out += net.place_id(p) + ":" + std::to_string(n);
  }
  return out + "}";
}

}  // namespace pnalign
