#include <doctest.h>

#include <random>

#include "ecpq/arith.hpp"
#include "ecpq/curves.hpp"
#include "ecpq/error.hpp"
#include "oracles.hpp"

using namespace ecpq;
using namespace ecpq::curves;

TEST_CASE("invariants examples")
{
  const auto s = invariants({0, 1, 1, 1, 0});
  CHECK(s.b2 == 4);
  CHECK(s.b4 == 2);
  CHECK(s.b6 == 1);
  CHECK(s.b8 == 0);
  CHECK(s.c4 == -32);
  CHECK(s.c6 == 8);
  CHECK(s.delta == -19);
  CHECK(1728 * s.delta == s.c4 * s.c4 * s.c4 - s.c6 * s.c6);

  const auto zero = invariants({0, 0, 0, 0, 0});
  CHECK(zero.delta == 0);
  CHECK(zero.c4 == 0);
  CHECK(invariants({0, 0, 1, -1, 0}).delta == 37);
  // Curve with a1 != 0: y^2 + xy + y = x^3 - x^2, conductor 53.
  CHECK(invariants({1, -1, 1, 0, 0}).delta == -53);
}

TEST_CASE("invariants refuse to wrap around")
{
  const WeierstrassModel huge{0, 0, 0, INT64_MAX / 2, INT64_MAX / 2};
  CHECK_THROWS_AS(invariants(huge), std::overflow_error);
}

TEST_CASE("family model and closed-form discriminant")
{
  CHECK(family_model({1, 1, 0}) == WeierstrassModel{0, 1, 1, 1, 0});
  CHECK(family_model({0, 1, 0}) == WeierstrassModel{0, 0, 1, 1, 0});
  CHECK(family_model({0, 0, 0}) == WeierstrassModel{0, 0, 1, 0, 0});
  CHECK(family_discriminant({1, 1, 0}) == -19);
  CHECK(family_discriminant({1, 1, 1}) == -443);
  CHECK(family_discriminant({0, 0, 0}) == -27);
  CHECK(family_discriminant({2, 1, 0}) == -11);
  const auto poly = discriminant_polynomial(1, 1);
  CHECK(poly.c2 == -432);
  CHECK(poly.c1 == 8);
  CHECK(poly.c0 == -19);
}

TEST_CASE("quadratic discriminant of the family")
{
  CHECK(family_quadratic_discriminant(1, 1) == -32768);
  CHECK(family_quadratic_discriminant(2, 1) == 4096);
  CHECK(family_quadratic_discriminant(0, 1) == -110592);
  CHECK(discriminant_polynomial(1, 1).discriminant() == -32768);
}

TEST_CASE("closed form matches the general discriminant on random parameters")
{
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<i64> dist(-500, 500);
  int bad = 0;
  for (int i = 0; i < 100'000; ++i) {
    const FamilyParams fp{dist(gen), dist(gen), dist(gen)};
    const i64 closed = family_discriminant(fp);
    const auto inv = invariants(family_model(fp));
    if (closed != inv.delta) ++bad;
    if (oracle::textbook_delta(0, fp.a, 1, fp.b, fp.n) != inv.delta) ++bad;
    if (((closed % 8) + 8) % 8 != 5) ++bad;
    if (inv.c4 != family_c4(fp.a, fp.b)) ++bad;
    const i128 t = i128(fp.a) * fp.a - 3 * i128(fp.b);
    if (family_quadratic_discriminant(fp.a, fp.b) != 4096 * t * t * t) ++bad;
    if (discriminant_polynomial(fp.a, fp.b).discriminant() != family_quadratic_discriminant(fp.a, fp.b)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("delta is 2 b^3 mod 3 when 3 divides a")
{
  for (i64 a = -30; a <= 30; a += 3)
    for (i64 b = -20; b <= 20; ++b)
      for (i64 n = -5; n <= 5; ++n) {
        const i64 d = family_discriminant({a, b, n});
        CHECK(((d - 2 * b * b * b) % 3 + 3) % 3 == 0);
      }
}

TEST_CASE("admissibility")
{
  CHECK(family_admissible(1, 1));
  CHECK_FALSE(family_admissible(3, 3));
  CHECK_FALSE(family_admissible(2, 1));
  CHECK_FALSE(family_admissible(0, 0));
  CHECK_FALSE(family_admissible(3, 0));  // a^2 - 3b = 9
  CHECK(family_admissible(0, 1));
}

TEST_CASE("residue pairs mod 8 that rule out a square")
{
  // The classical list is stated for a^4 - 3b; with a^2 - 3b it holds except at a = 2, 6 with b = 1.
  const std::vector<std::pair<int, int>> pairs = {
      {0, 1}, {0, 3}, {0, 7}, {1, 2}, {1, 4}, {1, 6}, {2, 1}, {2, 3}, {2, 7}, {3, 2}, {3, 4}, {3, 6},
      {4, 1}, {4, 3}, {4, 7}, {5, 2}, {5, 4}, {5, 6}, {6, 1}, {6, 3}, {6, 7}, {7, 2}, {7, 4}, {7, 6}};
  auto cube_mod8 = [](i64 t) { return (((t * t % 8) * t) % 8 + 8) % 8; };
  for (const auto& [ra, rb] : pairs) {
    const bool exception = (ra == 2 || ra == 6) && rb == 1;
    for (i64 ka = -3; ka <= 3; ++ka)
      for (i64 kb = -3; kb <= 3; ++kb) {
        const i64 a = ra + 8 * ka, b = rb + 8 * kb;
        const i64 quartic = cube_mod8(a * a * a * a - 3 * b);
        CHECK((quartic != 0 && quartic != 1 && quartic != 4));
        if (exception) continue;
        const i64 t = a * a - 3 * b;
        const i64 c = cube_mod8(t);
        CHECK((c != 0 && c != 1 && c != 4));
        CHECK(family_admissible(a, b) == (a % 3 != 0 || b % 3 != 0));
      }
  }
  CHECK_FALSE(family_admissible(2, 1));  // a^2 - 3b = 1
  CHECK_FALSE(family_admissible(6, 9));
}

TEST_CASE("reduction types")
{
  const WeierstrassModel e{0, 1, 1, 1, 0};
  CHECK(reduction_type(e, 19) == Reduction::multiplicative);
  CHECK(reduction_type(e, 7) == Reduction::good);
  CHECK(reduction_type(e, 5) == Reduction::good);
  CHECK_THROWS_AS(reduction_type(e, 2), UnsupportedPrime);
  CHECK_THROWS_AS(reduction_type(e, 9), InvalidInput);
  // y^2 = x^3 + 5: additive at 5 (5 | delta and 5 | c4 = 0).
  CHECK(reduction_type({0, 0, 0, 0, 5}, 5) == Reduction::additive);
}

TEST_CASE("primes >= 5 exactly dividing delta give multiplicative reduction")
{
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<i64> dist(-60, 60);
  int tested = 0, bad = 0;
  while (tested < 10'000) {
    const WeierstrassModel m{dist(gen), dist(gen), dist(gen), dist(gen), dist(gen)};
    const auto inv = invariants(m);
    if (inv.delta == 0 || inv.delta > INT64_MAX || inv.delta < -INT64_MAX) continue;
    const auto fac = arith::factor(i64(inv.delta));
    for (const auto& f : fac.factors) {
      if (f.prime < 5 || f.exponent != 1) continue;
      ++tested;
      if (reduction_type(m, f.prime) != Reduction::multiplicative) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("conductor of family members")
{
  CHECK(family_conductor({1, 1, 0}) == std::optional<i64>(19));
  CHECK(family_conductor({0, 1, 0}) == std::optional<i64>(91));
  CHECK(family_conductor({2, 1, 0}) == std::optional<i64>(11));
  CHECK_FALSE(family_conductor({0, 0, 1}).has_value());  // delta = -675 = -3^3 5^2
  CHECK_FALSE(family_conductor({3, 3, 0}).has_value());  // delta = -243 = -3^5
}

TEST_CASE("minimality by exponent: no u > 1 has u^12 dividing delta")
{
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<i64> dist(-200, 200);
  int bad = 0;
  for (int i = 0; i < 2000; ++i) {
    const FamilyParams fp{dist(gen), dist(gen), dist(gen)};
    const i64 d = family_discriminant(fp);
    if (d == 0 || !minimal_by_exponent(d)) continue;
    for (i64 u = 2; u <= 40; ++u) {
      i128 u12 = 1;
      for (int k = 0; k < 12; ++k) u12 *= u;
      if (i128(d) % u12 == 0) ++bad;
    }
  }
  CHECK(bad == 0);
  CHECK(minimal_by_exponent(-19));
  CHECK_FALSE(minimal_by_exponent(i64(1) << 12));
}
