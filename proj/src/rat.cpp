#include "rsched/rat.hpp"

#include <limits>
#include <numeric>
#include <ostream>

namespace rsched {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 gcd_wide(u128 a, u128 b) {
  if (a <= std::numeric_limits<std::uint64_t>::max() && b <= std::numeric_limits<std::uint64_t>::max()) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(n, d);
}

Rat Rat::from_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const u128 g = gcd_wide(uabs(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (n > kMax64 || n < -kMax64 || d > kMax64) throw RatOverflow("rational overflow beyond 64-bit numerator/denominator");
  Rat r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rat operator+(const Rat& a, const Rat& b) {
  if (a.den_ == b.den_) return Rat::from_wide(static_cast<i128>(a.num_) + b.num_, a.den_);
  return Rat::from_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                        static_cast<i128>(a.den_) * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) {
  if (a.den_ == b.den_) return Rat::from_wide(static_cast<i128>(a.num_) - b.num_, a.den_);
  return Rat::from_wide(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                        static_cast<i128>(a.den_) * b.den_);
}

Rat operator*(const Rat& a, const Rat& b) {
  return Rat::from_wide(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return Rat::from_wide(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

Rat operator-(const Rat& a) {
  Rat r;
  r.num_ = -a.num_;
  r.den_ = a.den_;
  return r;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rat Rat::parse(std::string_view text) {
  auto fail = [&]() -> Rat { throw std::invalid_argument("not a rational literal: \"" + std::string(text) + "\""); };
  if (text.empty()) return fail();

  auto parse_int = [&](std::string_view s, bool allow_sign) -> i128 {
    bool neg = false;
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) fail();
    i128 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail();
      v = v * 10 + (c - '0');
      if (v > kMax64 * 1000) throw RatOverflow("rational literal too large: " + std::string(text));
    }
    return neg ? -v : v;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const i128 n = parse_int(text.substr(0, slash), true);
    const i128 d = parse_int(text.substr(slash + 1), false);
    if (d == 0) throw std::domain_error("rational with zero denominator: " + std::string(text));
    return from_wide(n, d);
  }

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool neg = false;
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) {
      neg = ip.front() == '-';
      ip.remove_prefix(1);
    }
    if (ip.empty() && fp.empty()) return fail();
    if (fp.size() > 18) throw RatOverflow("decimal literal has too many fractional digits: " + std::string(text));
    const i128 whole = ip.empty() ? 0 : parse_int(ip, false);
    const i128 frac = fp.empty() ? 0 : parse_int(fp, false);
    i128 scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    const i128 n = whole * scale + frac;
    return from_wide(neg ? -n : n, scale);
  }

  return from_wide(parse_int(text, true), 1);
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t floor(const Rat& r) {
  std::int64_t q = r.num() / r.den();
  if (r.num() % r.den() != 0 && r.num() < 0) --q;
  return q;
}

std::int64_t ceil(const Rat& r) {
  std::int64_t q = r.num() / r.den();
  if (r.num() % r.den() != 0 && r.num() > 0) ++q;
  return q;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace rsched
