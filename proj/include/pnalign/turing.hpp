#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pnalign/io.hpp"

namespace pnalign {

struct tm_rule {
  std::string next, write;
  int move = 0;  // -1, 0, +1
};

/// Single-tape deterministic machine working on cells 0..space.
struct turing_machine {
  std::vector<std::string> states;  // start, accept, reject first
  std::string blank = "_";
  std::vector<std::string> tape;  // includes blank
  std::uint32_t space = 1;
  std::map<std::pair<std::string, std::string>, tm_rule> delta;

  const std::string& start() const { return states.at(0); }
  const std::string& accept() const { return states.at(1); }
  const std::string& reject() const { return states.at(2); }
  bool halting(const std::string& q) const { return q == accept() || q == reject(); }
};

inline turing_machine parse_tm(std::string_view text) {
  turing_machine tm;
  bool have_states = false, have_space = false;
  struct owned {
    std::string text;
    std::size_t column;
  };
  struct pending {
    std::size_t line;
    std::vector<owned> toks;
  };
  std::vector<pending> rules;
  for (const auto& [line, body] : detail::content_lines(text)) {
    std::vector<owned> toks;
    for (const auto& t : detail::tokenize(body)) toks.push_back({std::string(t.text), t.column});
    if (toks.empty()) continue;
    const auto& d = toks[0].text;
    for (const auto& t : toks)
      if (!detail::is_id(t.text) && t.text != "->") throw parse_error(line, t.column, "bad token '" + t.text + "'");
    if (d == "states") {
      if (toks.size() < 4) throw parse_error(line, toks[0].column, "states needs start, accept and reject");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (std::find(tm.states.begin(), tm.states.end(), toks[i].text) != tm.states.end())
          throw parse_error(line, toks[i].column, "duplicate state '" + toks[i].text + "'");
        tm.states.push_back(toks[i].text);
      }
      have_states = true;
    } else if (d == "blank") {
      if (toks.size() != 2) throw parse_error(line, toks[0].column, "blank takes one symbol");
      tm.blank = toks[1].text;
    } else if (d == "tape") {
      for (std::size_t i = 1; i < toks.size(); ++i)
        if (std::find(tm.tape.begin(), tm.tape.end(), toks[i].text) == tm.tape.end()) tm.tape.push_back(toks[i].text);
    } else if (d == "space") {
      if (toks.size() != 2) throw parse_error(line, toks[0].column, "space takes one integer");
      tm.space = static_cast<std::uint32_t>(detail::parse_count(toks[1].text, line, toks[1].column));
      if (tm.space == 0) throw parse_error(line, toks[1].column, "space must be positive");
      have_space = true;
    } else if (d == "delta") {
      if (toks.size() != 7 || toks[3].text != "->")
        throw parse_error(line, toks[0].column, "expected: delta <q> <a> -> <q'> <b> <L|R|S>");
      rules.push_back({line, toks});
    } else {
      throw parse_error(line, toks[0].column, "unknown directive '" + d + "'");
    }
  }
  if (!have_states) throw parse_error(0, 0, "missing states directive");
  if (!have_space) throw parse_error(0, 0, "missing space directive");
  if (tm.accept() == tm.reject()) throw parse_error(0, 0, "accept and reject state coincide");
  if (std::find(tm.tape.begin(), tm.tape.end(), tm.blank) == tm.tape.end()) tm.tape.insert(tm.tape.begin(), tm.blank);
  auto known_state = [&](const owned& t, std::size_t line) {
    if (std::find(tm.states.begin(), tm.states.end(), t.text) == tm.states.end())
      throw parse_error(line, t.column, "undeclared state '" + t.text + "'");
  };
  auto known_symbol = [&](const owned& t, std::size_t line) {
    if (std::find(tm.tape.begin(), tm.tape.end(), t.text) == tm.tape.end())
      throw parse_error(line, t.column, "undeclared tape symbol '" + t.text + "'");
  };
  for (const auto& [line, t] : rules) {
    known_state(t[1], line);
    known_symbol(t[2], line);
    known_state(t[4], line);
    known_symbol(t[5], line);
    if (tm.halting(t[1].text)) throw parse_error(line, t[1].column, "halting state has no moves");
    int mv;
    if (t[6].text == "L") mv = -1;
    else if (t[6].text == "R") mv = 1;
    else if (t[6].text == "S") mv = 0;
    else throw parse_error(line, t[6].column, "move must be L, R or S");
    if (!tm.delta.emplace(std::pair{t[1].text, t[2].text}, tm_rule{t[4].text, t[5].text, mv}).second)
      throw parse_error(line, t[1].column, "second rule for (" + t[1].text + ", " + t[2].text + ")");
  }
  return tm;
}

struct tm_run {
  bool accepted = false;
  std::size_t steps = 0;
  bool normalized = false;  // halted with blank tape and head on cell 0
};

inline tm_run run_tm(const turing_machine& tm, const word& input, std::size_t step_cap = 100000) {
  const std::size_t cells = tm.space + 1;
  if (input.size() > cells)
    throw error(errc::space_bound_violated, "input of length " + std::to_string(input.size()) + " exceeds " +
                                                std::to_string(cells) + " cells");
  std::vector<std::string> tape(cells, tm.blank);
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] == tm.blank || std::find(tm.tape.begin(), tm.tape.end(), input[i]) == tm.tape.end())
      throw error(errc::invalid_argument, "input symbol '" + input[i] + "' not in the input alphabet");
    tape[i] = input[i];
  }
  std::string q = tm.start();
  std::size_t head = 0;
  std::set<std::tuple<std::string, std::size_t, std::vector<std::string>>> seen;
  tm_run r;
  while (!tm.halting(q)) {
    if (!seen.emplace(q, head, tape).second)
      throw error(errc::cycle_detected, "configuration repeats after " + std::to_string(r.steps) + " steps");
    if (r.steps >= step_cap) throw error(errc::step_cap_exceeded, "no halt within " + std::to_string(step_cap) + " steps");
    auto it = tm.delta.find({q, tape[head]});
    if (it == tm.delta.end())
      throw error(errc::machine_stuck, "no rule for state '" + q + "' reading '" + tape[head] + "'");
    const auto& rule = it->second;
    const long to = static_cast<long>(head) + rule.move;
    if (to < 0 || to >= static_cast<long>(cells))
      throw error(errc::space_bound_violated, "head leaves cells 0.." + std::to_string(tm.space));
    tape[head] = rule.write;
    head = static_cast<std::size_t>(to);
    q = rule.next;
    ++r.steps;
  }
  r.accepted = q == tm.accept();
  r.normalized = head == 0 && std::all_of(tape.begin(), tape.end(), [&](const auto& s) { return s == tm.blank; });
  return r;
}

inline bool tm_accepts(const turing_machine& tm, const word& input, std::size_t step_cap = 100000) {
  return run_tm(tm, input, step_cap).accepted;
}

struct tm_instance {
  accepting_system sys;
  word trace;  // <acc>
  tm_run run;
};

/// Configuration places K_q, H_i, C_i_a; silent step transitions; start, acc,
/// rej; plus the aux-labelled activation pairs that make every transition
/// fireable. Only places touched by some arc are created.
inline tm_instance gen_tm_wfnet(const turing_machine& tm, const word& input, std::size_t step_cap = 100000) {
  tm_instance out;
  out.run = run_tm(tm, input, step_cap);
  if (!out.run.normalized)
    throw error(errc::halt_not_normalized, "machine halts with a nonblank tape or the head away from cell 0");
  auto& net = out.sys.net;
  auto place = [&](const std::string& id) {
    if (auto p = net.find_place(id)) return *p;
    return net.add_place(id);
  };
  auto K = [&](const std::string& q) { return place("K_" + q); };
  auto H = [&](std::size_t i) { return place("H_" + std::to_string(i)); };
  auto C = [&](std::size_t i, const std::string& a) { return place("C_" + std::to_string(i) + "_" + a); };

  const auto pi = place("i");
  const auto pf = place("o");
  const auto aux = place("aux");
  const auto silent = label::silent();
  const auto aux_label = label::visible("aux");

  std::vector<place_index> init{K(tm.start()), H(0)};
  for (std::size_t i = 0; i <= tm.space; ++i) init.push_back(C(i, i < input.size() ? input[i] : tm.blank));
  net.add_transition("start", silent, {pi}, init);
  for (const auto& [name, q] : {std::pair{"acc", tm.accept()}, std::pair{"rej", tm.reject()}}) {
    std::vector<place_index> halt{K(q), H(0)};
    for (std::size_t i = 0; i <= tm.space; ++i) halt.push_back(C(i, tm.blank));
    net.add_transition(name, label::visible(name), halt, {pf});
    net.add_transition(std::string(name) + "0", aux_label, {pi}, halt);
  }
  for (const auto& q : tm.states) {
    if (tm.halting(q)) continue;
    for (const auto& a : tm.tape) {
      auto it = tm.delta.find({q, a});
      if (it == tm.delta.end()) continue;
      const auto& r = it->second;
      for (std::size_t i = 0; i <= tm.space; ++i) {
        const long to = static_cast<long>(i) + r.move;
        if (to < 0 || to > static_cast<long>(tm.space)) continue;
        const std::string tag = q + "_" + a + "_" + std::to_string(i);
        std::vector<place_index> pre{K(q), H(i), C(i, a)};
        std::vector<place_index> post{K(r.next), H(static_cast<std::size_t>(to)), C(i, r.write)};
        net.add_transition("s_" + tag, silent, pre, post);
        pre.push_back(aux);
        post.push_back(aux);
        net.add_transition("on_" + tag, aux_label, {pi}, pre);
        net.add_transition("off_" + tag, aux_label, post, {pf});
      }
    }
  }
  out.sys.initial_marking = {{pi, 1}};
  out.sys.final_marking = {{pf, 1}};
  out.trace = {"acc"};
  return out;
}

}  // namespace pnalign
