#include "ecpq/diophantine.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "ecpq/arith.hpp"
#include "ecpq/error.hpp"

namespace ecpq::diophantine {

namespace {

void require_distinct_odd_primes(i64 p, i64 q, const char* who)
{
  if (p == q || p == 2 || q == 2 || !arith::is_prime(p) || !arith::is_prime(q))
    throw InvalidInput(std::string(who) + ": p and q must be distinct odd primes");
}

i64 mod_floor(i128 v, i64 m)
{
  i128 r = v % m;
  return i64(r < 0 ? r + m : r);
}

// p^0 .. p^e_max; entries above kPowerCap are empty.
std::vector<std::optional<i128>> capped_powers(i64 base, int e_max)
{
  std::vector<std::optional<i128>> out(std::size_t(e_max) + 1);
  i128 v = 1;
  for (int e = 0; e <= e_max; ++e) {
    if (v > kPowerCap) break;
    out[std::size_t(e)] = v;
    if (v > kPowerCap / base + 1) {
      v = kPowerCap + 1;
      continue;
    }
    v *= base;
  }
  return out;
}

std::optional<i128> square_root_if_square(i128 v)
{
  if (v < 0) return std::nullopt;
  const u128 r = isqrt(u128(v));
  if (r * r != u128(v)) return std::nullopt;
  return i128(r);
}

constexpr std::array<std::array<int, 2>, 4> kSignCombos = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

// A^2 for equations E3-E7, from exact powers.
i128 a_squared(EqTag tag, i128 pa, i128 qb, int s1, int s2)
{
  switch (tag) {
    case EqTag::E3: return pa * qb - 64;
    case EqTag::E4: return s2 * pa - s1 * 64 * qb;
    case EqTag::E5: return s2 * 256 * pa - s1 * 4 * qb;
    case EqTag::E6: return s2 * 256 - s1 * 4 * pa * qb;
    case EqTag::E7: return s2 - s1 * 64 * pa * qb;
    default: break;
  }
  throw std::logic_error("a_squared: equation has no A");
}

bool needs_product(EqTag tag)
{
  return tag == EqTag::E3 || tag == EqTag::E6 || tag == EqTag::E7;
}

// True when p^a = q^b mod 16 is only possible with a and b both even.
// Element orders in (Z/16)^x divide 4, so exponents mod 4 suffice.
bool congruence_forces_even_exponents(i64 p, i64 q)
{
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      if (arith::powmod(u64(p % 16), u64(a), 16) == arith::powmod(u64(q % 16), u64(b), 16) && (a % 2 || b % 2))
        return false;
  return true;
}

}  // namespace

std::string to_string(EqTag tag)
{
  return "E" + std::to_string(int(tag));
}

EqTag parse_eq_tag(const std::string& text)
{
  std::string t = text;
  if (!t.empty() && (t[0] == 'E' || t[0] == 'e')) t = t.substr(1);
  if (t.size() == 1 && t[0] >= '1' && t[0] <= '7') return EqTag(t[0] - '0');
  throw InvalidInput("unknown equation tag '" + text + "' (expected 1..7)");
}

bool has_sign_choices(EqTag tag)
{
  return int(tag) >= 4;
}

std::string to_string(ObstructionKind kind)
{
  switch (kind) {
    case ObstructionKind::Mod3: return "Mod3";
    case ObstructionKind::Mod16Factorization: return "Mod16Factorization";
    case ObstructionKind::GaussianPrime: return "GaussianPrime";
    case ObstructionKind::Mod3Mod5: return "Mod3Mod5";
  }
  return "unknown";
}

std::vector<i64> possible_B_values(i64 p, i64 q, int e_max)
{
  require_distinct_odd_primes(p, q, "possible_B_values");
  if (e_max < 0) throw InvalidInput("possible_B_values: e_max must be nonnegative");
  std::set<i128> values{1, 16, -16};
  const int k_max = e_max / 2;  // B carries p^(alpha/2) with alpha <= e_max even
  auto add_shape = [&](i128 core) {
    for (int sign : {1, -1}) {
      const i128 v = sign * core;
      if (mod_floor(v, 8) == 1) values.insert(v);
      values.insert(checked_mul(16, v));
    }
  };
  for (int k = 1; k <= k_max; ++k) {
    add_shape(checked_pow(p, unsigned(k)));
    add_shape(checked_pow(q, unsigned(k)));
    for (int l = 1; l <= k_max; ++l) add_shape(checked_mul(checked_pow(p, unsigned(k)), checked_pow(q, unsigned(l))));
  }
  std::vector<i64> out;
  for (i128 v : values) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
      throw std::overflow_error("possible_B_values: value exceeds 64 bits; lower e_max");
    out.push_back(i64(v));
  }
  return out;
}

SolveResult solve_equation(const DiophEq& eq, i64 p, i64 q, const SearchBounds& bounds)
{
  require_distinct_odd_primes(p, q, "solve_equation");
  if (int(eq.tag) < 1 || int(eq.tag) > 7) throw InvalidInput("solve_equation: malformed equation tag");
  if (bounds.a_max < 1 || bounds.b_max < 1 || bounds.A_max < 1)
    throw InvalidInput("solve_equation: bounds must be positive");
  if (eq.signs && !has_sign_choices(eq.tag)) throw InvalidInput("solve_equation: " + to_string(eq.tag) + " has no signs");

  const auto pp = capped_powers(p, bounds.a_max);
  const auto qp = capped_powers(q, bounds.b_max);
  const i128 A_max = bounds.A_max;
  SolveResult result;

  std::vector<std::array<int, 2>> combos;
  if (eq.signs)
    combos.push_back(*eq.signs);
  else if (has_sign_choices(eq.tag))
    combos.assign(kSignCombos.begin(), kSignCombos.end());
  else
    combos.push_back({1, 1});

  for (const auto& [s1, s2] : combos) {
    for (int a = 1; a <= bounds.a_max; ++a) {
      for (int b = 1; b <= bounds.b_max; ++b) {
        const auto& pa = pp[std::size_t(a)];
        const auto& qb = qp[std::size_t(b)];
        if (!pa || !qb || (needs_product(eq.tag) && *pa > kPowerCap / *qb)) {
          ++result.skipped_over_cap;
          continue;
        }
        Solution s;
        s.a = a;
        s.b = b;
        s.signs = {s1, s2};
        if (eq.tag == EqTag::E1) {
          if (16 * *qb - *pa == 1) result.solutions.push_back(s);
          continue;
        }
        if (eq.tag == EqTag::E2) {
          const i128 d = *pa - *qb;
          if (d == 16 || d == -16) result.solutions.push_back(s);
          continue;
        }
        if (eq.tag == EqTag::E5 && mod_floor(*qb, 8) != mod_floor(-s1, 8)) continue;
        const auto root = square_root_if_square(a_squared(eq.tag, *pa, *qb, s1, s2));
        if (!root || *root > A_max) continue;
        s.A = *root;
        result.solutions.push_back(s);
      }
    }
  }
  return result;
}

bool satisfies(EqTag tag, i64 p, i64 q, const Solution& s)
{
  const i128 pa = checked_pow(p, unsigned(s.a));
  const i128 qb = checked_pow(q, unsigned(s.b));
  const auto [s1, s2] = s.signs;
  switch (tag) {
    case EqTag::E1: return checked_sub(checked_mul(16, qb), pa) == 1;
    case EqTag::E2: return pa - qb == 16 || qb - pa == 16;
    default: break;
  }
  if (!s.A) return false;
  const i128 A2 = checked_mul(*s.A, *s.A);
  switch (tag) {
    case EqTag::E3: return checked_add(A2, 64) == checked_mul(pa, qb);
    case EqTag::E4: return checked_add(A2, checked_mul(s1 * 64, qb)) == s2 * pa;
    case EqTag::E5:
      return checked_add(A2, checked_mul(s1 * 4, qb)) == checked_mul(s2 * 256, pa) && mod_floor(qb, 8) == mod_floor(-s1, 8);
    case EqTag::E6: return checked_add(A2, checked_mul(s1 * 4, checked_mul(pa, qb))) == s2 * 256;
    case EqTag::E7: return checked_add(A2, checked_mul(s1 * 64, checked_mul(pa, qb))) == s2;
    default: break;
  }
  return false;
}

SetzerSystem to_setzer_system(EqTag tag, i64 p, i64 q, const Solution& s)
{
  const i128 pa = checked_pow(p, unsigned(s.a));
  const i128 qb = checked_pow(q, unsigned(s.b));
  const auto [s1, s2] = s.signs;
  auto normalize_mod4 = [](i128 A) { return mod_floor(A, 4) == 1 ? A : -A; };
  SetzerSystem sys;
  switch (tag) {
    case EqTag::E1:
      sys = {checked_add(checked_mul(4, pa), 2), 1, s.a, s.b, 1};
      break;
    case EqTag::E2: {
      const i128 smaller = pa > qb ? qb : pa;
      sys = {normalize_mod4(smaller + 8), 16, s.a, s.b, 1};
      break;
    }
    case EqTag::E3:
      sys = {normalize_mod4(s.A.value_or(0)), -16, s.a, s.b, 1};
      break;
    case EqTag::E4:
      sys = {s.A.value_or(0), checked_mul(-s1 * 16, qb), s.a, 2 * s.b, s2};
      break;
    case EqTag::E5:
      sys = {s.A.value_or(0), -s1 * qb, s.a, 2 * s.b, s2};
      break;
    case EqTag::E6:
      sys = {s.A.value_or(0), checked_mul(-s1, checked_mul(pa, qb)), 2 * s.a, 2 * s.b, s2};
      break;
    case EqTag::E7:
      sys = {s.A.value_or(0), checked_mul(-s1 * 16, checked_mul(pa, qb)), 2 * s.a, 2 * s.b, s2};
      break;
  }
  return sys;
}

bool setzer_identity_holds(const SetzerSystem& sys, i64 p, i64 q)
{
  const i128 lhs = checked_mul(checked_mul(sys.B, sys.B), checked_sub(checked_mul(sys.A, sys.A), checked_mul(4, sys.B)));
  const i128 rhs = checked_mul(sys.sign * 256,
                               checked_mul(checked_pow(p, unsigned(sys.alpha)), checked_pow(q, unsigned(sys.beta))));
  return lhs == rhs;
}

std::vector<ExceptionalSolution> exceptional_solutions()
{
  return {{1, 9, 7}, {-3, 5, 11}, {5, 3, 13}, {-7, 3, 5}};
}

std::vector<ExceptionalSolution> sweep_exceptional_solutions()
{
  // B = 16 with negative right side: 64 - A^2 = p^alpha q^beta, A = 1 mod 4.
  std::vector<ExceptionalSolution> out;
  for (i64 A = -7; A <= 7; ++A) {
    if (((A % 4) + 4) % 4 != 1) continue;
    const auto fac = arith::factor(64 - A * A);
    if (fac.factors.size() != 2 || fac.factors[0].prime == 2) continue;
    const i64 pp = i64(checked_pow(fac.factors[0].prime, unsigned(fac.factors[0].exponent)));
    const i64 qq = i64(checked_pow(fac.factors[1].prime, unsigned(fac.factors[1].exponent)));
    out.push_back({A, pp, qq});
  }
  return out;
}

std::vector<i64> excluded_conductors()
{
  std::vector<i64> out;
  for (const auto& e : exceptional_solutions()) {
    const auto fp = arith::factor(e.p_power).factors;
    const auto fq = arith::factor(e.q_power).factors;
    out.push_back(fp.at(0).prime * fq.at(0).prime);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> subgroup_mod16(i64 q)
{
  const int g = int(((q % 16) + 16) % 16);
  std::vector<int> out{1};
  for (int x = g; x != 1 && x % 2 == 1; x = (x * g) % 16) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

bool two_torsion_obstructed(i64 p, i64 q)
{
  require_distinct_odd_primes(p, q, "two_torsion_obstructed");
  if (p % 60 != 31 || q % 60 != 31) return false;
  const auto group = subgroup_mod16(q);
  return std::find(group.begin(), group.end(), int(p % 16)) == group.end();
}

std::optional<Obstruction> residue_obstruction(const DiophEq& eq, i64 p, i64 q)
{
  require_distinct_odd_primes(p, q, "residue_obstruction");
  const std::string pq = "p=" + std::to_string(p) + ", q=" + std::to_string(q);
  const bool one_mod3 = p % 3 == 1 && q % 3 == 1;
  const bool one_mod5 = p % 5 == 1 && q % 5 == 1;
  switch (eq.tag) {
    case EqTag::E1:
      if (!one_mod3) return std::nullopt;
      return Obstruction{ObstructionKind::Mod3,
                         pq + ": p = q = 1 mod 3, so mod 3 the equation 1 = 2^4 q^b - p^a reads 1 = 16 - 1 = 0, "
                              "impossible"};
    case EqTag::E2: {
      if (!one_mod5 || p % 16 == 1 || q % 16 == 1) return std::nullopt;
      if (!congruence_forces_even_exponents(p, q)) return std::nullopt;
      const auto g = subgroup_mod16(q);
      std::string group;
      for (int x : g) group += (group.empty() ? "" : ",") + std::to_string(x);
      return Obstruction{
          ObstructionKind::Mod16Factorization,
          pq + ": p^a = q^b mod 16 (p = " + std::to_string(p % 16) + ", <q> = {" + group +
              "} mod 16) forces a, b even; then q^b = (p^(a/2) - 4)(p^(a/2) + 4) with coprime odd factors, "
              "so p^(a/2) = 5 (symmetrically q^(b/2) = 5), impossible since p = q = 1 mod 5"};
    }
    case EqTag::E3:
      if (p % 4 != 3 || q % 4 != 3) return std::nullopt;
      return Obstruction{ObstructionKind::GaussianPrime,
                         pq + ": p = q = 3 mod 4 are prime in Z[i] and divide neither A + 8i nor A - 8i, so "
                              "(A + 8i)(A - 8i) = p^a q^b is impossible"};
    case EqTag::E4:
    case EqTag::E5:
    case EqTag::E6:
    case EqTag::E7:
      if (!one_mod3 || !one_mod5) return std::nullopt;
      return Obstruction{ObstructionKind::Mod3Mod5,
                         pq + ": p = q = 1 mod 15 reduces " + to_string(eq.tag) +
                             " to A^2 + s1 = s2 mod 3 and A^2 - s1 = s2 mod 5; (+,+) needs 2 square mod 5, (-,-) needs "
                             "3 square mod 5, (-,+) needs 2 square mod 3, (+,-) equates a positive and a negative "
                             "number"};
  }
  return std::nullopt;
}

}  // namespace ecpq::diophantine
