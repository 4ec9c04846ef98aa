#include "ecpq/curves.hpp"

#include <limits>

#include "ecpq/arith.hpp"
#include "ecpq/error.hpp"

namespace ecpq::curves {

namespace {

i64 narrow(i128 v, const char* what)
{
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
  return i64(v);
}

i128 mod_floor(i128 v, i128 m)
{
  i128 r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::string to_string(Reduction r)
{
  switch (r) {
    case Reduction::good: return "good";
    case Reduction::multiplicative: return "multiplicative";
    case Reduction::additive: return "additive";
  }
  return "unknown";
}

InvariantSet invariants(const WeierstrassModel& m)
{
  const i128 a1 = m.a1, a2 = m.a2, a3 = m.a3, a4 = m.a4, a6 = m.a6;
  auto mul = checked_mul;
  auto add = checked_add;
  auto sub = checked_sub;

  InvariantSet s;
  s.b2 = add(mul(a1, a1), mul(4, a2));
  s.b4 = add(mul(2, a4), mul(a1, a3));
  s.b6 = add(mul(a3, a3), mul(4, a6));
  // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
  s.b8 = sub(add(sub(add(mul(mul(a1, a1), a6), mul(mul(4, a2), a6)), mul(mul(a1, a3), a4)), mul(a2, mul(a3, a3))),
             mul(a4, a4));
  s.c4 = sub(mul(s.b2, s.b2), mul(24, s.b4));
  s.c6 = sub(add(mul(-1, mul(s.b2, mul(s.b2, s.b2))), mul(36, mul(s.b2, s.b4))), mul(216, s.b6));
  // delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
  s.delta = add(sub(sub(mul(-1, mul(mul(s.b2, s.b2), s.b8)), mul(8, mul(s.b4, mul(s.b4, s.b4)))), mul(27, mul(s.b6, s.b6))),
                mul(9, mul(s.b2, mul(s.b4, s.b6))));
  return s;
}

WeierstrassModel family_model(const FamilyParams& p)
{
  return {0, p.a, 1, p.b, p.n};
}

QuadraticPoly discriminant_polynomial(i64 a, i64 b)
{
  const i128 A = a, B = b;
  const i128 c1 = -64 * A * A * A + 288 * A * B - 216;
  const i128 c0 = -16 * A * A * A + 16 * A * A * B * B - 64 * B * B * B + 72 * A * B - 27;
  return {-432, narrow(c1, "discriminant polynomial c1"), narrow(c0, "discriminant polynomial c0")};
}

i64 family_discriminant(const FamilyParams& p)
{
  return narrow(discriminant_polynomial(p.a, p.b)(p.n), "family discriminant");
}

i128 family_quadratic_discriminant(i64 a, i64 b)
{
  const i128 t = i128(a) * a - i128(3) * b;
  return checked_mul(4096, checked_mul(t, checked_mul(t, t)));
}

i64 family_c4(i64 a, i64 b)
{
  return narrow(16 * i128(a) * a - 48 * i128(b), "family c4");
}

bool family_admissible(i64 a, i64 b)
{
  if (a % 3 == 0 && b % 3 == 0) return false;
  return !arith::is_perfect_square(i128(a) * a - i128(3) * b);
}

Reduction reduction_type(const WeierstrassModel& model, i64 p)
{
  if (p == 2) throw UnsupportedPrime("reduction_type: p = 2 is not supported");
  if (!arith::is_prime(p)) throw InvalidInput("reduction_type: p must be an odd prime");
  const InvariantSet inv = invariants(model);
  if (mod_floor(inv.delta, p) != 0) return Reduction::good;
  if (mod_floor(inv.c4, p) != 0) return Reduction::multiplicative;
  return Reduction::additive;
}

bool minimal_by_exponent(i64 delta)
{
  if (delta == 0) return false;
  for (const auto& f : arith::factor(delta).factors)
    if (f.exponent >= 12) return false;
  return true;
}

std::optional<i64> family_conductor(const FamilyParams& p)
{
  const i64 delta = family_discriminant(p);
  if (delta == 0 || delta % 2 == 0) return std::nullopt;
  const arith::Factorization fac = arith::factor(delta);
  if (!fac.squarefree()) return std::nullopt;
  const WeierstrassModel model = family_model(p);
  // Exponents are all 1 < 12, so the model is minimal at every prime.
  for (const auto& f : fac.factors)
    if (reduction_type(model, f.prime) != Reduction::multiplicative) return std::nullopt;
  return delta < 0 ? -delta : delta;
}

}  // namespace ecpq::curves
