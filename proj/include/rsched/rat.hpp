#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rsched {

/// Thrown when an exact rational result does not fit the 64-bit representation.
class RatOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact rational number in canonical form: den > 0 and gcd(|num|, den) = 1.
///
/// Intermediate products are formed in 128-bit arithmetic and reduced before
/// narrowing back, so any result whose reduced form fits in 64 bits is exact.
/// A result that does not fit throws RatOverflow; nothing is ever rounded.
class Rat {
 public:
  constexpr Rat() noexcept = default;
  constexpr Rat(std::int64_t n) noexcept : num_(n) {}  // NOLINT: implicit by design of a numeric type
  Rat(std::int64_t n, std::int64_t d);

  /// Parses "p/q", an integer, or a decimal literal such as "-0.125".
  static Rat parse(std::string_view text);

  [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }

  /// "p/q", or "p" when the value is an integer.
  [[nodiscard]] std::string str() const;
  [[nodiscard]] double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
  [[nodiscard]] constexpr bool is_positive() const noexcept { return num_ > 0; }
  [[nodiscard]] constexpr bool is_negative() const noexcept { return num_ < 0; }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a);

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend constexpr bool operator==(const Rat& a, const Rat& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept;

 private:
  static Rat from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

[[nodiscard]] inline Rat abs(const Rat& r) { return r.is_negative() ? -r : r; }
[[nodiscard]] inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
[[nodiscard]] inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Smallest integer >= r.
[[nodiscard]] std::int64_t ceil(const Rat& r);
/// Largest integer <= r.
[[nodiscard]] std::int64_t floor(const Rat& r);

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace rsched

template <>
struct std::hash<rsched::Rat> {
  std::size_t operator()(const rsched::Rat& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31 ^ std::hash<std::int64_t>{}(r.den());
  }
};
