#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pnalign/alignment.hpp"

namespace pnalign {

/// Ids added by a gadget, with the model-move costs they must carry.
struct gadget_record {
  std::vector<std::string> places, transitions;
  std::map<std::string, cost> costs;

  cost_function apply(const accepting_system& sys) const {
    auto c = standard_costs(sys);
    for (const auto& [t, k] : costs) c.set_model(sys.net.transition(t), k);
    return c;
  }
};

namespace detail {

inline std::string fresh_id(const petri_net& net, std::string base) {
  while (net.has_id(base)) base += "_";
  return base;
}

inline std::string fresh_label(const petri_net& net, std::string base) {
  auto alpha = net.alphabet();
  while (std::find(alpha.begin(), alpha.end(), base) != alpha.end()) base += "_";
  return base;
}

}  // namespace detail

/// One expensive bridge M_init -> M_final. Markings must be sets.
inline std::pair<accepting_system, gadget_record> make_easy_sound_safe(const accepting_system& sys, const cost& k) {
  for (const auto* m : {&sys.initial_marking, &sys.final_marking})
    if (m->max_count() > 1) throw error(errc::not_safe_markings, "markings must hold at most one token per place");
  if (sys.initial_marking.empty()) throw error(errc::empty_marking, "initial marking is empty");
  auto out = sys;
  gadget_record rec;
  const auto id = detail::fresh_id(out.net, "t_skip");
  out.net.add_transition(id, label::visible(detail::fresh_label(out.net, "skip")), sys.initial_marking.support(),
                         sys.final_marking.support());
  rec.transitions.push_back(id);
  rec.costs[id] = k + cost(1);
  return {out, rec};
}

/// Buffer of d+1 places between drain transitions (fired first) and fill
/// transitions, d the largest per-place token difference. Every gadget
/// transition costs (k+1)/2.
inline std::pair<accepting_system, gadget_record> make_easy_sound_general(const accepting_system& sys,
                                                                          const cost& k) {
  const auto& m0 = sys.initial_marking;
  const auto& m1 = sys.final_marking;
  if (m0.empty() || m1.empty()) throw error(errc::empty_marking, "gadget needs nonempty initial and final markings");
  const auto np = sys.net.place_count();
  std::vector<std::uint32_t> drain(np, 0), fill(np, 0);
  std::uint32_t e = 0, f = 0;
  for (std::uint32_t p = 0; p < np; ++p) {
    const auto a = m0[{p}], b = m1[{p}];
    drain[p] = a > b ? a - b : 0;
    fill[p] = b > a ? b - a : 0;
    e = std::max(e, drain[p]);
    f = std::max(f, fill[p]);
  }
  const std::uint32_t d = std::max(e, f);
  const auto borrow_in = m0.support().front();   // lent when nothing drains
  const auto borrow_out = m1.support().front();  // paid back when nothing fills

  auto out = sys;
  auto& net = out.net;
  gadget_record rec;
  const auto lab = label::visible(detail::fresh_label(net, "gadget"));
  std::vector<place_index> g;
  for (std::uint32_t j = 0; j <= d; ++j) {
    const auto id = detail::fresh_id(net, "g" + std::to_string(j));
    g.push_back(net.add_place(id));
    rec.places.push_back(id);
  }
  auto add = [&](const std::string& base, std::vector<place_index> in, std::vector<place_index> post) {
    const auto id = detail::fresh_id(net, base);
    net.add_transition(id, lab, std::move(in), std::move(post));
    rec.transitions.push_back(id);
    rec.costs[id] = (k + cost(1)) / 2;
  };
  auto over = [&](const std::vector<std::uint32_t>& need, std::uint32_t j) {
    std::vector<place_index> ps;
    for (std::uint32_t p = 0; p < np; ++p)
      if (need[p] > j) ps.push_back({p});
    return ps;
  };

  // in side: one transition per drain level, extra buffer places on the last
  std::uint32_t used = 0;
  if (e == 0) {
    add("g_in0", {borrow_in}, g);
    used = d + 1;
  } else {
    for (std::uint32_t j = 0; j < e; ++j) {
      std::vector<place_index> post{g[j]};
      if (j + 1 == e && f != 0)
        for (std::uint32_t r = e; r <= d; ++r) post.push_back(g[r]);
      add("g_in" + std::to_string(j), over(drain, j), post);
    }
    used = f == 0 ? e : d + 1;
  }
  if (used < d + 1) add("g_in" + std::to_string(used), {borrow_out}, std::vector<place_index>(g.begin() + used, g.end()));

  // out side
  if (f == 0) {
    add("g_out0", g, {e == 0 ? borrow_in : borrow_out});
  } else {
    for (std::uint32_t j = 0; j < f; ++j) {
      std::vector<place_index> pre{g[j]};
      if (j + 1 == f && e != 0)
        for (std::uint32_t r = f; r <= d; ++r) pre.push_back(g[r]);
      add("g_out" + std::to_string(j), pre, over(fill, j));
    }
    if (e == 0) add("g_out" + std::to_string(f), std::vector<place_index>(g.begin() + f, g.end()), {borrow_in});
  }
  return {out, rec};
}

/// Parallel composition of trace systems: a silent fork, one line per word,
/// a silent join.
inline accepting_system gen_shuffle_tsystem(const std::vector<word>& words) {
  bool any = false;
  for (const auto& w : words) any |= !w.empty();
  if (!any) throw error(errc::invalid_argument, "need at least one nonempty word");
  accepting_system s;
  auto& net = s.net;
  const auto i = net.add_place("i");
  const auto o = net.add_place("o");
  std::vector<place_index> heads, tails;
  for (std::size_t b = 0; b < words.size(); ++b) {
    std::vector<place_index> line;
    for (std::size_t k = 0; k <= words[b].size(); ++k)
      line.push_back(net.add_place("w" + std::to_string(b + 1) + "_" + std::to_string(k)));
    heads.push_back(line.front());
    tails.push_back(line.back());
    for (std::size_t k = 0; k < words[b].size(); ++k)
      net.add_transition("t" + std::to_string(b + 1) + "_" + std::to_string(k + 1), label::visible(words[b][k]),
                         {line[k]}, {line[k + 1]});
  }
  net.add_transition("start", label::silent(), {i}, heads);
  net.add_transition("end", label::silent(), tails, {o});
  s.initial_marking = {{i, 1}};
  s.final_marking = {{o, 1}};
  return s;
}

/// One trace line carrying `copies` tokens.
inline accepting_system gen_shuffle_ssystem(const word& w, std::uint32_t copies) {
  if (w.empty() || copies == 0) throw error(errc::invalid_argument, "need a nonempty word and at least one copy");
  auto s = trace_system(w);
  s.initial_marking = {{place_index{0}, copies}};
  s.final_marking = {{place_index{static_cast<std::uint32_t>(w.size())}, copies}};
  return s;
}

inline word letters(std::string_view s) {
  word w;
  for (char c : s) w.emplace_back(1, c);
  return w;
}

}  // namespace pnalign
