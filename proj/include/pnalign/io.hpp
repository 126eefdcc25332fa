#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pnalign/alignment.hpp"
#include "pnalign/petri_net.hpp"

namespace pnalign {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto a = s.find_first_not_of(ws);
  if (a == std::string_view::npos) return {};
  return s.substr(a, s.find_last_not_of(ws) - a + 1);
}

struct token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<token> tokenize(std::string_view line) {
  std::vector<token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline bool is_id(std::string_view s) {
  return !s.empty() && s.find_first_of(",=#") == std::string_view::npos;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::uint32_t parse_count(std::string_view s, std::size_t line, std::size_t col) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error(line, col, "expected a token count, got '" + std::string(s) + "'");
  return v;
}

/// Lines with comments stripped, paired with their 1-based numbers.
inline std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t n = 0;
  for (auto line : split(text, '\n')) {
    ++n;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    if (!trim(line).empty()) out.emplace_back(n, line);
  }
  return out;
}

}  // namespace detail

/// Parses the line format
///   place <id> [init=<n>] [final=<n>]
///   trans <id> label=<name|~> in=<id,...> out=<id,...>
/// Places may be referenced before they are declared.
inline accepting_system parse_net(std::string_view text) {
  using detail::parse_count;
  accepting_system sys;
  auto& net = sys.net;
  const auto lines = detail::content_lines(text);

  for (const auto& [ln, line] : lines) {
    const auto toks = detail::tokenize(line);
    if (toks[0].text != "place") continue;
    if (toks.size() < 2 || !detail::is_id(toks[1].text))
      throw parse_error(ln, toks.size() < 2 ? toks[0].column : toks[1].column, "expected a place id");
    const std::string id(toks[1].text);
    if (net.has_id(id)) throw error(errc::duplicate_id, "line " + std::to_string(ln) + ": duplicate id '" + id + "'");
    const auto p = net.add_place(id);
    for (std::size_t i = 2; i < toks.size(); ++i) {
      const auto& tk = toks[i];
      if (tk.text.rfind("init=", 0) == 0)
        sys.initial_marking.set(p, parse_count(tk.text.substr(5), ln, tk.column + 5));
      else if (tk.text.rfind("final=", 0) == 0)
        sys.final_marking.set(p, parse_count(tk.text.substr(6), ln, tk.column + 6));
      else
        throw parse_error(ln, tk.column, "unexpected '" + std::string(tk.text) + "'");
    }
  }

  for (const auto& [ln, line] : lines) {
    const auto toks = detail::tokenize(line);
    if (toks[0].text == "place") continue;
    if (toks[0].text != "trans") throw parse_error(ln, toks[0].column, "unknown directive '" + std::string(toks[0].text) + "'");
    if (toks.size() < 2 || !detail::is_id(toks[1].text))
      throw parse_error(ln, toks.size() < 2 ? toks[0].column : toks[1].column, "expected a transition id");
    const std::string id(toks[1].text);
    if (net.has_id(id)) throw error(errc::duplicate_id, "line " + std::to_string(ln) + ": duplicate id '" + id + "'");
    std::optional<label> lab;
    std::vector<place_index> pre, post;
    bool seen_in = false, seen_out = false;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      const auto& tk = toks[i];
      const auto eq = tk.text.find('=');
      if (eq == std::string_view::npos) throw parse_error(ln, tk.column, "expected key=value");
      const auto key = tk.text.substr(0, eq);
      const auto val = tk.text.substr(eq + 1);
      if (key == "label") {
        if (val == "~")
          lab = label::silent();
        else if (is_label_token(val))
          lab = label::visible(std::string(val));
        else
          throw parse_error(ln, tk.column + eq + 1, "invalid label '" + std::string(val) + "'");
      } else if (key == "in" || key == "out") {
        auto& dst = key == "in" ? pre : post;
        (key == "in" ? seen_in : seen_out) = true;
        if (val.empty()) continue;
        std::size_t col = tk.column + eq + 1;
        for (auto pid : detail::split(val, ',')) {
          auto p = net.find_place(pid);
          if (!p) throw parse_error(ln, col, "undeclared place '" + std::string(pid) + "'");
          dst.push_back(*p);
          col += pid.size() + 1;
        }
      } else {
        throw parse_error(ln, tk.column, "unknown key '" + std::string(key) + "'");
      }
    }
    if (!lab) throw parse_error(ln, toks[0].column, "transition '" + id + "' has no label");
    if (!seen_in || !seen_out) throw parse_error(ln, toks[0].column, "transition '" + id + "' needs in= and out=");
    net.add_transition(id, *lab, std::move(pre), std::move(post));
  }

  if (!net.is_weakly_connected()) throw error(errc::disconnected_net, "net is not weakly connected");
  return sys;
}

inline std::string serialize_net(const accepting_system& sys) {
  const auto& net = sys.net;
  std::string out;
  for (std::uint32_t p = 0; p < net.place_count(); ++p) {
    out += "place " + net.place_id({p});
    if (auto n = sys.initial_marking[{p}]) out += " init=" + std::to_string(n);
    if (auto n = sys.final_marking[{p}]) out += " final=" + std::to_string(n);
    out += "\n";
  }
  auto list = [&](const std::vector<place_index>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + net.place_id(ps[i]);
    return s;
  };
  for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
    const transition_index ti{t};
    const auto& l = net.labeling(ti);
    out += "trans " + net.transition_id(ti) + " label=" + (l.is_silent() ? "~" : l.name()) + " in=" + list(net.pre(ti)) +
           " out=" + list(net.post(ti)) + "\n";
  }
  return out;
}

/// Comma-separated activities; surrounding whitespace is ignored.
inline word parse_trace(std::string_view text) {
  word w;
  if (detail::trim(text).empty()) return w;
  std::size_t col = 1;
  for (auto part : detail::split(text, ',')) {
    const auto a = detail::trim(part);
    if (!is_label_token(a)) throw parse_error(1, col, "invalid activity '" + std::string(a) + "'");
    w.emplace_back(a);
    col += part.size() + 1;
  }
  return w;
}

/// Applies `sync <label> <t> <c>`, `log <label> <c>` and `model <t> <c>`
/// overrides on top of the standard costs.
inline cost_function parse_costs(std::string_view text, const petri_net& net) {
  cost_function c(net);
  for (const auto& [ln, line] : detail::content_lines(text)) {
    const auto toks = detail::tokenize(line);
    const auto kind = toks[0].text;
    auto value = [&](std::size_t i) {
      try {
        return cost::parse(toks[i].text);
      } catch (const error&) {
        throw parse_error(ln, toks[i].column, "invalid cost '" + std::string(toks[i].text) + "'");
      }
    };
    auto trans = [&](std::size_t i) {
      auto t = net.find_transition(toks[i].text);
      if (!t) throw parse_error(ln, toks[i].column, "unknown transition '" + std::string(toks[i].text) + "'");
      return *t;
    };
    auto activity = [&](std::size_t i) {
      if (!is_label_token(toks[i].text)) throw parse_error(ln, toks[i].column, "invalid label");
      return std::string(toks[i].text);
    };
    if (kind == "sync" && toks.size() == 4)
      c.set_sync(activity(1), trans(2), value(3));
    else if (kind == "log" && toks.size() == 3)
      c.set_log(activity(1), value(2));
    else if (kind == "model" && toks.size() == 3)
      c.set_model(trans(1), value(2));
    else
      throw parse_error(ln, toks[0].column, "expected sync/log/model directive");
  }
  return c;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pnalign
