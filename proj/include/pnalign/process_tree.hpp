#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pnalign/petri_net.hpp"

namespace pnalign {

enum class tree_kind { activity, silent, seq, xor_, par, loop };

struct process_tree {
  tree_kind kind = tree_kind::silent;
  std::string name;  // activity only
  std::vector<process_tree> children;

  static process_tree act(std::string a) { return {tree_kind::activity, std::move(a), {}}; }
  static process_tree tau() { return {}; }
  static process_tree op(tree_kind k, std::vector<process_tree> cs) { return {k, {}, std::move(cs)}; }

  bool operator==(const process_tree&) const = default;
};

inline const char* keyword(tree_kind k) {
  switch (k) {
    case tree_kind::seq: return "seq";
    case tree_kind::xor_: return "xor";
    case tree_kind::par: return "par";
    case tree_kind::loop: return "loop";
    case tree_kind::silent: return "tau";
    default: return "";
  }
}

inline std::string to_string(const process_tree& t) {
  if (t.kind == tree_kind::activity) return t.name;
  if (t.kind == tree_kind::silent) return "tau";
  std::string out = std::string(keyword(t.kind)) + "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) out += (i ? ", " : "") + to_string(t.children[i]);
  return out + ")";
}

namespace detail {

class tree_parser {
 public:
  explicit tree_parser(std::string_view text) : text_(text) {}

  process_tree parse() {
    auto t = node();
    skip();
    if (pos_ < text_.size()) fail("trailing input");
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(line_, col_, msg); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == ':';
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  process_tree node() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const auto l = line_, c = col_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && word_char(text_[pos_])) advance();
    if (start == pos_) fail(std::string("unexpected character '") + text_[pos_] + "'");
    const std::string w(text_.substr(start, pos_ - start));
    if (w == "tau") return process_tree::tau();
    tree_kind k;
    if (w == "seq") k = tree_kind::seq;
    else if (w == "xor") k = tree_kind::xor_;
    else if (w == "par") k = tree_kind::par;
    else if (w == "loop") k = tree_kind::loop;
    else return process_tree::act(w);
    expect('(');
    std::vector<process_tree> cs{node()};
    for (skip(); pos_ < text_.size() && text_[pos_] == ','; skip()) {
      advance();
      cs.push_back(node());
    }
    expect(')');
    if (k == tree_kind::loop && cs.size() != 2)
      throw error(errc::arity_error, "line " + std::to_string(l) + ":" + std::to_string(c) +
                                         ": loop takes exactly 2 children, got " + std::to_string(cs.size()));
    return process_tree::op(k, std::move(cs));
  }
};

}  // namespace detail

inline process_tree parse_tree(std::string_view text) { return detail::tree_parser(text).parse(); }

inline void collect_labels(const process_tree& t, std::vector<std::string>& out) {
  if (t.kind == tree_kind::activity) out.push_back(t.name);
  for (const auto& c : t.children) collect_labels(c, out);
}

inline std::vector<std::string> tree_alphabet(const process_tree& t) {
  std::vector<std::string> out;
  collect_labels(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool has_unique_labels(const process_tree& t) {
  std::vector<std::string> all;
  collect_labels(t, all);
  return tree_alphabet(t).size() == all.size();
}

namespace detail {

// memoized on (node, child offset, subword); par splits positions by subset
class tree_matcher {
 public:
  explicit tree_matcher(std::size_t budget) : budget_(budget) {}

  bool match(const process_tree& t, const word& w) {
    switch (t.kind) {
      case tree_kind::silent: return w.empty();
      case tree_kind::activity: return w.size() == 1 && w[0] == t.name;
      default: break;
    }
    for (const auto& a : w)
      if (!alphabet(t).count(a)) return false;
    const key k{&t, 0, w};
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    tick();
    bool r = false;
    switch (t.kind) {
      case tree_kind::seq: r = seq(t, 0, w); break;
      case tree_kind::xor_:
        for (const auto& c : t.children) r = r || match(c, w);
        break;
      case tree_kind::par: r = par(t, 0, w); break;
      case tree_kind::loop: r = loop(t, w); break;
      default: break;
    }
    return memo_[k] = r;
  }

  std::size_t work() const { return work_; }

 private:
  using key = std::tuple<const process_tree*, std::size_t, word>;
  std::size_t budget_, work_ = 0;
  std::map<key, bool> memo_;
  std::map<const process_tree*, std::set<std::string>> alpha_;

  void tick(std::size_t n = 1) {
    work_ += n;
    if (work_ > budget_) throw budget_exceeded_error(work_, "tree membership exceeded its budget");
  }

  const std::set<std::string>& alphabet(const process_tree& t) {
    auto it = alpha_.find(&t);
    if (it != alpha_.end()) return it->second;
    auto v = tree_alphabet(t);
    return alpha_[&t] = std::set<std::string>(v.begin(), v.end());
  }

  static word slice(const word& w, std::size_t a, std::size_t b) { return word(w.begin() + a, w.begin() + b); }

  bool seq(const process_tree& t, std::size_t k, const word& w) {
    if (k == t.children.size()) return w.empty();
    if (k + 1 == t.children.size()) return match(t.children[k], w);
    const key mk{&t, k, w};
    if (auto it = memo_.find(mk); it != memo_.end()) return it->second;
    bool r = false;
    for (std::size_t cut = 0; cut <= w.size() && !r; ++cut)
      r = match(t.children[k], slice(w, 0, cut)) && seq(t, k + 1, slice(w, cut, w.size()));
    return memo_[mk] = r;
  }

  bool par(const process_tree& t, std::size_t k, const word& w) {
    if (k + 1 == t.children.size()) return match(t.children[k], w);
    const key mk{&t, k, w};
    if (auto it = memo_.find(mk); it != memo_.end()) return it->second;
    if (w.size() >= 40) throw budget_exceeded_error(work_, "parallel split over too many letters");
    const auto& mine = alphabet(t.children[k]);
    std::uint64_t allowed = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (mine.count(w[i])) allowed |= std::uint64_t{1} << i;
    bool r = false;
    // every subset of allowed positions, largest first
    for (std::uint64_t sub = allowed;; sub = (sub - 1) & allowed) {
      tick();
      word left, right;
      for (std::size_t i = 0; i < w.size(); ++i) ((sub >> i) & 1 ? left : right).push_back(w[i]);
      if (match(t.children[k], left) && par(t, k + 1, right)) {
        r = true;
        break;
      }
      if (sub == 0) break;
    }
    return memo_[mk] = r;
  }

  bool loop(const process_tree& t, const word& w) {
    const auto& body = t.children[0];
    const auto& redo = t.children[1];
    std::set<std::size_t> ends, todo;
    for (std::size_t k = 0; k <= w.size(); ++k)
      if (match(body, slice(w, 0, k))) ends.insert(k);
    todo = ends;
    while (!todo.empty()) {
      const auto k = *todo.begin();
      todo.erase(todo.begin());
      for (std::size_t k2 = k; k2 <= w.size(); ++k2) {
        if (!match(redo, slice(w, k, k2))) continue;
        for (std::size_t k3 = k2; k3 <= w.size(); ++k3)
          if (!ends.count(k3) && match(body, slice(w, k2, k3))) {
            ends.insert(k3);
            todo.insert(k3);
          }
      }
    }
    return ends.count(w.size()) != 0;
  }
};

}  // namespace detail

inline bool tree_language_member(const process_tree& t, const word& w, std::size_t budget = 1000000) {
  return detail::tree_matcher(budget).match(t, w);
}

namespace detail {

struct tree_builder {
  accepting_system sys;
  std::size_t places = 0, transitions = 0;

  place_index fresh_place() { return sys.net.add_place("p" + std::to_string(++places)); }
  void add(label l, std::vector<place_index> in, std::vector<place_index> out) {
    sys.net.add_transition("t" + std::to_string(++transitions), std::move(l), std::move(in), std::move(out));
  }

  void build(const process_tree& t, place_index entry, place_index exit) {
    switch (t.kind) {
      case tree_kind::activity: add(label::visible(t.name), {entry}, {exit}); break;
      case tree_kind::silent: add(label::silent(), {entry}, {exit}); break;
      case tree_kind::seq: {
        place_index from = entry;
        for (std::size_t i = 0; i < t.children.size(); ++i) {
          const place_index to = i + 1 == t.children.size() ? exit : fresh_place();
          build(t.children[i], from, to);
          from = to;
        }
        break;
      }
      case tree_kind::xor_:
        for (const auto& c : t.children) build(c, entry, exit);
        break;
      case tree_kind::par: {
        std::vector<place_index> starts, ends;
        for (std::size_t i = 0; i < t.children.size(); ++i) {
          starts.push_back(fresh_place());
          ends.push_back(fresh_place());
        }
        add(label::silent(), {entry}, starts);
        for (std::size_t i = 0; i < t.children.size(); ++i) build(t.children[i], starts[i], ends[i]);
        add(label::silent(), ends, {exit});
        break;
      }
      case tree_kind::loop: {
        const auto do_place = fresh_place();
        const auto redo_place = fresh_place();
        add(label::silent(), {entry}, {do_place});
        build(t.children[0], do_place, redo_place);
        build(t.children[1], redo_place, do_place);
        add(label::silent(), {redo_place}, {exit});
        break;
      }
    }
  }
};

}  // namespace detail

/// Block-structured translation; places are named i, o, p1.., transitions t1..
inline accepting_system tree_to_wfnet(const process_tree& t) {
  detail::tree_builder b;
  const auto i = b.sys.net.add_place("i");
  const auto o = b.sys.net.add_place("o");
  b.build(t, i, o);
  b.sys.initial_marking = {{i, 1}};
  b.sys.final_marking = {{o, 1}};
  return b.sys;
}

/// Is v an order-preserving interleaving of the words? Sweeps the sets of
/// position tuples reachable after each letter of v.
inline bool shuffle_member(const word& v, const std::vector<word>& words, std::size_t budget = 1000000) {
  std::size_t total = 0;
  for (const auto& w : words) total += w.size();
  if (total != v.size()) return false;
  std::set<std::vector<std::size_t>> layer{std::vector<std::size_t>(words.size(), 0)};
  std::size_t work = 0;
  for (const auto& letter : v) {
    std::set<std::vector<std::size_t>> next;
    for (const auto& pos : layer)
      for (std::size_t i = 0; i < words.size(); ++i)
        if (pos[i] < words[i].size() && words[i][pos[i]] == letter) {
          auto n = pos;
          ++n[i];
          next.insert(std::move(n));
          if (++work > budget) throw budget_exceeded_error(work, "shuffle membership exceeded its budget");
        }
    if (next.empty()) return false;
    layer = std::move(next);
  }
  return true;
}

/// Random tree with at most `max_leaves` leaves and nesting depth <= max_depth.
inline process_tree random_tree(std::mt19937& rng, int max_depth, int max_leaves,
                                const std::vector<std::string>& letters) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::function<process_tree(int, int)> grow = [&](int depth, int leaves) -> process_tree {
    if (depth >= max_depth || leaves <= 1 || pick(0, 3) == 0) {
      if (pick(0, 6) == 0) return process_tree::tau();
      return process_tree::act(letters[static_cast<std::size_t>(pick(0, static_cast<int>(letters.size()) - 1))]);
    }
    const auto k = static_cast<tree_kind>(pick(2, 5));
    const int n = k == tree_kind::loop ? 2 : pick(2, std::min(3, leaves));
    std::vector<process_tree> cs;
    int left = leaves;
    for (int i = 0; i < n; ++i) {
      const int share = i + 1 == n ? left : std::max(1, left / (n - i));
      cs.push_back(grow(depth + 1, share));
      left -= share;
      if (left < 1) left = 1;
    }
    return process_tree::op(k, std::move(cs));
  };
  return grow(1, max_leaves);
}

inline std::size_t leaf_count(const process_tree& t) {
  if (t.children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : t.children) n += leaf_count(c);
  return n;
}

inline std::size_t depth(const process_tree& t) {
  std::size_t d = 0;
  for (const auto& c : t.children) d = std::max(d, depth(c));
  return d + 1;
}

}  // namespace pnalign
