#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace twistkit {

/// Exact element of ½ℤ, stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  constexpr HalfInteger(std::int64_t whole) : twice_(2 * whole) {}  // NOLINT

  static constexpr HalfInteger from_twice(std::int64_t twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInteger half() { return from_twice(1); }

  constexpr std::int64_t twice_value() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double to_double() const { return 0.5 * static_cast<double>(twice_); }

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInteger& operator-=(HalfInteger o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return a += b; }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return a -= b; }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

  /// Congruence modulo 1, i.e. equality of the fractional parts.
  constexpr bool congruent_mod_one(HalfInteger o) const {
    return ((twice_ - o.twice_) % 2) == 0;
  }

  /// "3", "-1/2", "5/2".
  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  std::int64_t twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, HalfInteger h) { return os << h.to_string(); }

}  // namespace twistkit
