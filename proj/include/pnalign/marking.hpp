#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

namespace pnalign {

/// Position of a place within its net.
struct place_index {
  std::uint32_t value = 0;
  friend auto operator<=>(place_index, place_index) = default;
};

/// Position of a transition within its net.
struct transition_index {
  std::uint32_t value = 0;
  friend auto operator<=>(transition_index, transition_index) = default;
};

/// Multiset of tokens over places. Stored sparsely as (place, count) pairs
/// sorted by place with zero counts elided, so equality and hashing are over
/// the union of supports.
class marking {
 public:
  using entry = std::pair<place_index, std::uint32_t>;

  marking() = default;
  marking(std::initializer_list<entry> entries) {
    for (const auto& [p, n] : entries) add(p, static_cast<std::int64_t>(n));
  }

  std::uint32_t operator[](place_index p) const {
    auto it = find(p);
    return it != entries_.end() && it->first == p ? it->second : 0;
  }

  void set(place_index p, std::uint32_t count) {
    auto it = find(p);
    if (it != entries_.end() && it->first == p) {
      if (count == 0)
        entries_.erase(it);
      else
        it->second = count;
    } else if (count != 0) {
      entries_.insert(it, {p, count});
    }
  }

  /// Adds `delta` tokens; the result must stay non-negative.
  void add(place_index p, std::int64_t delta) {
    set(p, static_cast<std::uint32_t>(static_cast<std::int64_t>((*this)[p]) + delta));
  }

  const std::vector<entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  std::vector<place_index> support() const {
    std::vector<place_index> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
  }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto& e : entries_) sum += e.second;
    return sum;
  }

  std::uint32_t max_count() const {
    std::uint32_t m = 0;
    for (const auto& e : entries_) m = std::max(m, e.second);
    return m;
  }

  /// Pointwise `*this >= other`.
  bool covers(const marking& other) const {
    return std::all_of(other.entries_.begin(), other.entries_.end(),
                       [&](const entry& e) { return (*this)[e.first] >= e.second; });
  }

  /// Same tokens with every place index moved up by `offset`.
  marking shifted(std::uint32_t offset) const {
    marking out;
    out.entries_ = entries_;
    for (auto& e : out.entries_) e.first.value += offset;
    return out;
  }

  friend marking operator+(const marking& a, const marking& b) {
    marking out = a;
    for (const auto& [p, n] : b.entries_) out.add(p, n);
    return out;
  }

  friend bool operator==(const marking&, const marking&) = default;
  friend auto operator<=>(const marking& a, const marking& b) { return a.entries_ <=> b.entries_; }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& [p, n] : entries_) {
      h ^= (static_cast<std::size_t>(p.value) << 32) ^ n;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::vector<entry>::iterator find(place_index p) {
    return std::lower_bound(entries_.begin(), entries_.end(), p,
                            [](const entry& e, place_index q) { return e.first < q; });
  }
  std::vector<entry>::const_iterator find(place_index p) const {
    return std::lower_bound(entries_.begin(), entries_.end(), p,
                            [](const entry& e, place_index q) { return e.first < q; });
  }

  std::vector<entry> entries_;
};

}  // namespace pnalign

template <>
struct std::hash<pnalign::marking> {
  std::size_t operator()(const pnalign::marking& m) const noexcept { return m.hash(); }
};
