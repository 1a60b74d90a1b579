#include <random>
#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "rsched/rat.hpp"

using rsched::Rat;

TEST_CASE("canonical form") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(3, -6).num() == -1);
  CHECK(Rat(3, -6).den() == 2);
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(0, 7).den() == 1);
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK(Rat(2, 3) / Rat(4, 9) == Rat(3, 2));
  CHECK(-Rat(5, 7) == Rat(-5, 7));
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);

  Rat x(1, 10);
  Rat sum;
  for (int i = 0; i < 10; ++i) sum += x;
  CHECK(sum == Rat(1));
}

TEST_CASE("ordering uses cross multiplication") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(577, 408) > Rat(1414213562373, 1000000000000));
  CHECK(Rat(239, 169) < Rat(1414213562373, 1000000000000));
  CHECK(rsched::max(Rat(1, 2), Rat(2, 3)) == Rat(2, 3));
  CHECK(rsched::min(Rat(1, 2), Rat(2, 3)) == Rat(1, 2));
}

TEST_CASE("parse and print") {
  CHECK(Rat::parse("3/4") == Rat(3, 4));
  CHECK(Rat::parse("-6/8") == Rat(-3, 4));
  CHECK(Rat::parse("0.25") == Rat(1, 4));
  CHECK(Rat::parse("-0.125") == Rat(-1, 8));
  CHECK(Rat::parse("17") == Rat(17));
  CHECK(Rat::parse("0.414213562373") == Rat(414213562373, 1000000000000));
  CHECK_THROWS(Rat::parse(""));
  CHECK_THROWS(Rat::parse("abc"));
  CHECK_THROWS(Rat::parse("1/"));
  CHECK_THROWS(Rat::parse("1.2.3"));
  CHECK_THROWS_AS(Rat::parse("1/0"), std::domain_error);

  CHECK(Rat(150, 101).str() == "150/101");
  CHECK(Rat(4).str() == "4");
  CHECK(Rat(-1, 2).str() == "-1/2");
  std::ostringstream os;
  os << Rat(3, 7);
  CHECK(os.str() == "3/7");
}

TEST_CASE("floor and ceil") {
  CHECK(rsched::floor(Rat(7, 2)) == 3);
  CHECK(rsched::ceil(Rat(7, 2)) == 4);
  CHECK(rsched::floor(Rat(-7, 2)) == -4);
  CHECK(rsched::ceil(Rat(-7, 2)) == -3);
  CHECK(rsched::ceil(Rat(4)) == 4);
}

TEST_CASE("overflow is reported, never rounded") {
  const Rat big(INT64_MAX / 2);
  CHECK_THROWS_AS(big * Rat(3), rsched::RatOverflow);
  const Rat tiny(1, INT64_MAX / 3);
  CHECK_THROWS_AS(tiny * Rat(1, 7), rsched::RatOverflow);
  // Large intermediates that reduce back are fine.
  const Rat a(INT64_MAX / 4, 3);
  CHECK(a * Rat(3) / a == Rat(3));
}

TEST_CASE("round trip through str for random values") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto n = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    const auto d = static_cast<std::int64_t>(rng() % 100000) + 1;
    const Rat r(n, d);
    CHECK(Rat::parse(r.str()) == r);
    CHECK((r + Rat(1, d)) - Rat(1, d) == r);
  }
}

TEST_CASE("hash is consistent with equality") {
  std::unordered_set<Rat> s{Rat(1, 2), Rat(2, 4), Rat(3, 6), Rat(1, 3)};
  CHECK(s.size() == 2);
}
