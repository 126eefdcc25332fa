#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pnalign/petri_net.hpp"

namespace pnalign {

inline constexpr const char* no_move = ">>";

/// Which component transitions a product transition combines.
struct product_move {
  std::optional<transition_index> first;
  std::optional<transition_index> second;

  bool is_sync() const { return first && second; }
};

/// s1 ⊗ s2 together with the provenance of every product transition.
/// Places of s1 come first, so a product marking restricted to
/// [0, first_place_count) is the s1 component.
struct product_system {
  accepting_system sys;
  std::vector<product_move> moves;
  std::uint32_t first_place_count = 0;
  bool renamed = false;

  const product_move& move(transition_index t) const { return moves.at(t.value); }
};

namespace detail {
inline bool ids_collide(const petri_net& a, const petri_net& b) {
  for (std::uint32_t p = 0; p < a.place_count(); ++p)
    if (b.has_id(a.place_id({p}))) return true;
  for (std::uint32_t t = 0; t < a.transition_count(); ++t)
    if (b.has_id(a.transition_id({t}))) return true;
  return false;
}
}  // namespace detail

/// Synchronous product. Transitions are numbered: label-matching pairs
/// (visible labels only), then (t1, >>), then (>>, t2).
inline product_system synchronous_product(const accepting_system& s1, const accepting_system& s2) {
  const auto& n1 = s1.net;
  const auto& n2 = s2.net;
  product_system out;
  out.renamed = detail::ids_collide(n1, n2);
  const std::string lp = out.renamed ? "L:" : "";
  const std::string rp = out.renamed ? "R:" : "";
  auto& net = out.sys.net;
  const auto off = static_cast<std::uint32_t>(n1.place_count());
  out.first_place_count = off;

  for (std::uint32_t p = 0; p < n1.place_count(); ++p) net.add_place(lp + n1.place_id({p}));
  for (std::uint32_t p = 0; p < n2.place_count(); ++p) net.add_place(rp + n2.place_id({p}));

  auto shift = [&](const std::vector<place_index>& ps) {
    std::vector<place_index> r;
    r.reserve(ps.size());
    for (auto p : ps) r.push_back({p.value + off});
    return r;
  };
  auto join = [](std::vector<place_index> a, const std::vector<place_index>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  for (std::uint32_t a = 0; a < n1.transition_count(); ++a) {
    const transition_index ta{a};
    const auto& la = n1.labeling(ta);
    if (la.is_silent()) continue;
    for (std::uint32_t b = 0; b < n2.transition_count(); ++b) {
      const transition_index tb{b};
      if (n2.labeling(tb) != la) continue;
      net.add_transition("(" + lp + n1.transition_id(ta) + "," + rp + n2.transition_id(tb) + ")", la,
                         join(n1.pre(ta), shift(n2.pre(tb))), join(n1.post(ta), shift(n2.post(tb))));
      out.moves.push_back({ta, tb});
    }
  }
  for (std::uint32_t a = 0; a < n1.transition_count(); ++a) {
    const transition_index ta{a};
    net.add_transition("(" + lp + n1.transition_id(ta) + "," + no_move + ")", n1.labeling(ta), n1.pre(ta),
                       n1.post(ta));
    out.moves.push_back({ta, std::nullopt});
  }
  for (std::uint32_t b = 0; b < n2.transition_count(); ++b) {
    const transition_index tb{b};
    net.add_transition(std::string("(") + no_move + "," + rp + n2.transition_id(tb) + ")", n2.labeling(tb),
                       shift(n2.pre(tb)), shift(n2.post(tb)));
    out.moves.push_back({std::nullopt, tb});
  }

  out.sys.initial_marking = s1.initial_marking + s2.initial_marking.shifted(off);
  out.sys.final_marking = s1.final_marking + s2.final_marking.shifted(off);
  return out;
}

/// Splits a product marking back into its two components.
inline std::pair<marking, marking> split_marking(const product_system& prod, const marking& m) {
  marking a, b;
  for (const auto& [p, n] : m.entries()) {
    if (p.value < prod.first_place_count)
      a.set(p, n);
    else
      b.set({p.value - prod.first_place_count}, n);
  }
  return {a, b};
}

}  // namespace pnalign
