#pragma once

#include <string>

#include "pnalign/pnalign.hpp"

namespace fixtures {

// running example: t4 loops back silently, t5 finishes
inline pnalign::accepting_system ex1() {
  using namespace pnalign;
  accepting_system s;
  auto& n = s.net;
  auto pi = n.add_place("p_init");
  auto p1 = n.add_place("p1");
  auto p2 = n.add_place("p2");
  auto p3 = n.add_place("p3");
  auto p4 = n.add_place("p4");
  auto pf = n.add_place("p_final");
  n.add_transition("t1", label::visible("a"), {pi}, {p1, p2});
  n.add_transition("t2", label::visible("a"), {p1}, {p3});
  n.add_transition("t3", label::visible("b"), {p2}, {p4});
  n.add_transition("t4", label::silent(), {p3, p4}, {pi});
  n.add_transition("t5", label::visible("b"), {p3, p4}, {pf});
  s.initial_marking = {{pi, 1}};
  s.final_marking = {{pf, 1}};
  return s;
}

// ex1 without the silent loop-back
inline pnalign::accepting_system ex1_acyclic() {
  using namespace pnalign;
  accepting_system s;
  auto& n = s.net;
  auto pi = n.add_place("p_init");
  auto p1 = n.add_place("p1");
  auto p2 = n.add_place("p2");
  auto p3 = n.add_place("p3");
  auto p4 = n.add_place("p4");
  auto pf = n.add_place("p_final");
  n.add_transition("t1", label::visible("a"), {pi}, {p1, p2});
  n.add_transition("t2", label::visible("a"), {p1}, {p3});
  n.add_transition("t3", label::visible("b"), {p2}, {p4});
  n.add_transition("t5", label::visible("b"), {p3, p4}, {pf});
  s.initial_marking = {{pi, 1}};
  s.final_marking = {{pf, 1}};
  return s;
}

// one-token cycle p0 -a-> p1 -b-> p0
inline pnalign::accepting_system ab_cycle() {
  using namespace pnalign;
  accepting_system s;
  auto p0 = s.net.add_place("p0");
  auto p1 = s.net.add_place("p1");
  s.net.add_transition("ta", label::visible("a"), {p0}, {p1});
  s.net.add_transition("tb", label::visible("b"), {p1}, {p0});
  s.initial_marking = {{p0, 1}};
  s.final_marking = {{p0, 1}};
  return s;
}

inline pnalign::word w(const std::string& letters) {
  pnalign::word out;
  for (char ch : letters) out.emplace_back(1, ch);
  return out;
}

}  // namespace fixtures
