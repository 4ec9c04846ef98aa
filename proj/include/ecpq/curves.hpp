#pragma once

#include <optional>
#include <string>

#include "ecpq/int128.hpp"

namespace ecpq::curves {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassModel {
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  friend bool operator==(const WeierstrassModel&, const WeierstrassModel&) = default;
};

/// Standard b- and c-invariants plus the discriminant. Satisfies
/// 4 b8 = b2 b6 - b4^2 and 1728 delta = c4^3 - c6^2.
struct InvariantSet {
  i128 b2 = 0, b4 = 0, b6 = 0, b8 = 0, c4 = 0, c6 = 0, delta = 0;
};

/// (a, b, n) selecting the curve y^2 + y = x^3 + a x^2 + b x + n.
struct FamilyParams {
  i64 a = 0, b = 0, n = 0;
};

/// c2 n^2 + c1 n + c0
struct QuadraticPoly {
  i64 c2 = 0, c1 = 0, c0 = 0;

  i128 operator()(i64 n) const { return i128(c2) * n * n + i128(c1) * n + c0; }
  i128 discriminant() const { return i128(c1) * c1 - i128(4) * c2 * c0; }
};

enum class Reduction { good, multiplicative, additive };

std::string to_string(Reduction r);

/// Thrown for primes the reduction classifier does not handle (p = 2).
class UnsupportedPrime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact; throws std::overflow_error if an intermediate leaves 128 bits.
InvariantSet invariants(const WeierstrassModel& model);

WeierstrassModel family_model(const FamilyParams& p);

/// Closed form -432 n^2 + (-64a^3 + 288ab - 216) n + (-16a^3 + 16a^2b^2 - 64b^3 + 72ab - 27).
QuadraticPoly discriminant_polynomial(i64 a, i64 b);
i64 family_discriminant(const FamilyParams& p);
/// Discriminant of the discriminant polynomial in n: 2^12 (a^2 - 3b)^3.
i128 family_quadratic_discriminant(i64 a, i64 b);
/// c4 of the family model: 16 a^2 - 48 b.
i64 family_c4(i64 a, i64 b);

/// Not both of a, b divisible by 3, and a^2 - 3b not a perfect square (0 counts).
bool family_admissible(i64 a, i64 b);

/// Reduction type at an odd prime for a model minimal at p.
Reduction reduction_type(const WeierstrassModel& model, i64 p);

/// True when every prime divides delta with exponent below 12, so no
/// change of variables can shrink the discriminant.
bool minimal_by_exponent(i64 delta);

/// |delta| when it is odd, squarefree and every prime divisor has
/// multiplicative reduction; empty otherwise.
std::optional<i64> family_conductor(const FamilyParams& p);

}  // namespace ecpq::curves
