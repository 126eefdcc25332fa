#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnalign/cost.hpp"
#include "pnalign/petri_net.hpp"

namespace pnalign {

/// A legal move: (activity, >>) log move, (>>, t) model move, or (a, t)
/// synchronous move with matching label.
struct move {
  std::optional<std::string> activity;
  std::optional<transition_index> transition;

  static move log(std::string a) { return {std::move(a), std::nullopt}; }
  static move model(transition_index t) { return {std::nullopt, t}; }
  static move sync(std::string a, transition_index t) { return {std::move(a), t}; }

  bool is_log() const { return activity && !transition; }
  bool is_model() const { return !activity && transition; }
  bool is_sync() const { return activity && transition; }

  friend bool operator==(const move&, const move&) = default;
};

using alignment = std::vector<move>;

/// Move costs over one model net. Unlisted moves take the standard costs:
/// sync 0, log 1, model 1 (0 on silent transitions).
class cost_function {
 public:
  explicit cost_function(const petri_net& net) : model_(net.transition_count(), cost(1)) {
    for (std::uint32_t t = 0; t < net.transition_count(); ++t)
      if (net.labeling(transition_index{t}).is_silent()) model_[t] = cost(0);
  }

  cost sync(const std::string& activity, transition_index t) const {
    auto it = sync_.find({activity, t.value});
    return it == sync_.end() ? cost(0) : it->second;
  }
  cost log(const std::string& activity) const {
    auto it = log_.find(activity);
    return it == log_.end() ? cost(1) : it->second;
  }
  cost model(transition_index t) const { return model_.at(t.value); }

  cost of(const move& m) const {
    if (m.is_sync()) return sync(*m.activity, *m.transition);
    if (m.is_log()) return log(*m.activity);
    return model(*m.transition);
  }

  void set_sync(const std::string& activity, transition_index t, cost c) { sync_[{activity, t.value}] = c; }
  void set_log(const std::string& activity, cost c) { log_[activity] = c; }
  void set_model(transition_index t, cost c) { model_.at(t.value) = c; }

  std::size_t transition_count() const { return model_.size(); }

  /// Largest log cost over `activities` and model cost over all transitions.
  cost max_log(const std::vector<std::string>& activities) const {
    cost m(0);
    for (const auto& a : activities) m = std::max(m, log(a));
    return m;
  }
  cost max_model() const {
    cost m(0);
    for (const auto& c : model_) m = std::max(m, c);
    return m;
  }

 private:
  std::map<std::pair<std::string, std::uint32_t>, cost> sync_;
  std::map<std::string, cost> log_;
  std::vector<cost> model_;
};

inline cost_function standard_costs(const accepting_system& sys) { return cost_function(sys.net); }

struct align_result {
  alignment moves;
  cost total;
  std::string algorithm;
  std::size_t states_expanded = 0;
  /// Length cap certified by the free-choice bound, when it applies.
  std::optional<std::uint64_t> length_cap;
};

inline cost alignment_cost(const alignment& gamma, const cost_function& c) {
  cost total(0);
  for (const auto& m : gamma) total += c.of(m);
  return total;
}

/// Checks move legality and both projections by replay; returns the cost.
inline cost validate_alignment(const alignment& gamma, const word& trace, const accepting_system& sys,
                               const cost_function& c) {
  const auto& net = sys.net;
  word log_part;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const auto& m = gamma[i];
    if (!m.activity && !m.transition)
      throw alignment_error(errc::illegal_move, i, "move " + std::to_string(i) + " is (>>, >>)");
    if (m.transition && m.transition->value >= net.transition_count())
      throw alignment_error(errc::illegal_move, i, "move " + std::to_string(i) + " names an unknown transition");
    if (m.is_sync()) {
      const auto& l = net.labeling(*m.transition);
      if (l.is_silent() || l.name() != *m.activity)
        throw alignment_error(errc::illegal_move, i,
                              "move " + std::to_string(i) + " pairs '" + *m.activity + "' with transition '" +
                                  net.transition_id(*m.transition) + "' labeled " + l.display());
    }
    if (m.activity) log_part.push_back(*m.activity);
  }
  if (log_part != trace) throw alignment_error(errc::projection_mismatch, gamma.size(), "log projection differs from trace");

  marking cur = sys.initial_marking;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const auto& m = gamma[i];
    if (!m.transition) continue;
    if (!is_enabled(net, cur, *m.transition))
      throw alignment_error(errc::not_complete_firing_sequence, i,
                            "model move " + std::to_string(i) + " fires disabled '" +
                                net.transition_id(*m.transition) + "'");
    cur = detail::fire_unchecked(net, cur, *m.transition);
  }
  if (cur != sys.final_marking)
    throw alignment_error(errc::not_complete_firing_sequence, gamma.size(),
                          "model projection ends in " + to_string(net, cur));
  return alignment_cost(gamma, c);
}

/// Model part of an alignment as a firing sequence.
inline firing_sequence model_projection(const alignment& gamma) {
  firing_sequence s;
  for (const auto& m : gamma)
    if (m.transition) s.push_back(*m.transition);
  return s;
}

namespace detail {
inline std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++w;
  return w;
}
}  // namespace detail

/// Three rows: log part, model label, transition id; >> shown as ≫.
inline std::string render_alignment(const alignment& gamma, const petri_net& net) {
  static const std::string skip = "≫";
  std::vector<std::string> rows[3];
  for (const auto& m : gamma) {
    rows[0].push_back(m.activity ? *m.activity : skip);
    rows[1].push_back(m.transition ? net.labeling(*m.transition).display() : skip);
    rows[2].push_back(m.transition ? net.transition_id(*m.transition) : skip);
  }
  std::string out;
  for (auto& row : rows) {
    out += "|";
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      std::size_t w = 0;
      for (auto& r : rows) w = std::max(w, detail::display_width(r[i]));
      out += " " + row[i] + std::string(w - detail::display_width(row[i]), ' ') + " |";
    }
    out += "\n";
  }
  return out;
}

}  // namespace pnalign
