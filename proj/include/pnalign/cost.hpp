#pragma once

#include <boost/rational.hpp>

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "pnalign/error.hpp"

namespace pnalign {

/// Exact non-negative rational cost. Always held in lowest terms.
class cost {
 public:
  using value_type = boost::rational<std::int64_t>;

  cost() = default;
  cost(std::int64_t whole) : value_(whole) { check(); }  // NOLINT(google-explicit-constructor)
  cost(std::int64_t num, std::int64_t den) : value_(num, den) { check(); }
  explicit cost(value_type v) : value_(v) { check(); }

  std::int64_t numerator() const { return value_.numerator(); }
  std::int64_t denominator() const { return value_.denominator(); }
  const value_type& value() const { return value_; }
  bool is_zero() const { return value_.numerator() == 0; }

  cost& operator+=(const cost& other) {
    value_ += other.value_;
    return *this;
  }
  friend cost operator+(cost a, const cost& b) { return a += b; }
  friend cost operator*(const cost& a, std::int64_t n) { return cost(a.value_ * n); }
  friend cost operator/(const cost& a, std::int64_t n) { return cost(a.value_ / n); }

  friend bool operator==(const cost& a, const cost& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const cost& a, const cost& b) {
    if (a.value_ == b.value_) return std::strong_ordering::equal;
    return a.value_ < b.value_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  /// Largest n with n * step <= *this. `step` must be positive.
  std::int64_t floor_div(const cost& step) const {
    const value_type q = value_ / step.value_;
    return q.numerator() / q.denominator();
  }

  /// Canonical text: `2`, `5/2`.
  std::string str() const {
    if (value_.denominator() == 1) return std::to_string(value_.numerator());
    return std::to_string(value_.numerator()) + "/" + std::to_string(value_.denominator());
  }

  /// Accepts integers (`3`), decimals (`2.25`) and fractions (`5/2`).
  static cost parse(std::string_view text) {
    auto fail = [&] { return error(errc::parse_error, "invalid cost '" + std::string(text) + "'"); };
    auto to_int = [&](std::string_view s) {
      std::int64_t v = 0;
      if (s.empty()) throw fail();
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) throw fail();
      return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      const auto den = to_int(text.substr(slash + 1));
      if (den == 0) throw fail();
      return cost(to_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto frac = text.substr(dot + 1);
      if (frac.size() > 15) throw fail();
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const auto whole = dot == 0 ? 0 : to_int(text.substr(0, dot));
      const auto part = frac.empty() ? 0 : to_int(frac);
      return cost(whole * scale + part, scale);
    }
    return cost(to_int(text));
  }

 private:
  void check() const {
    if (value_ < 0) throw error(errc::invalid_argument, "costs must be non-negative");
  }

  value_type value_{0};
};

}  // namespace pnalign
