#include "ecpq/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "ecpq/error.hpp"

namespace ecpq::arith {

namespace {

constexpr u64 kTrialBound = 10000;

u64 magnitude_of(i64 n)
{
  return n < 0 ? u64(0) - u64(n) : u64(n);
}

bool strong_probable_prime(u64 n, u64 base)
{
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(base % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 if the
// iteration cap was hit or the cycle collapsed.
u64 rho_brent(u64 n, u64 x0, u64 c, u64 max_iterations)
{
  constexpr u64 batch = 128;
  u64 y = x0, x = x0, ys = x0, g = 1, q = 1;
  u64 r = 1, iterations = 0;
  auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = step(y);
    u64 k = 0;
    do {
      ys = y;
      const u64 m = std::min(batch, r - k);
      for (u64 i = 0; i < m; ++i) {
        y = step(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
      iterations += m;
    } while (k < r && g == 1);
    r *= 2;
    if (iterations > max_iterations) return 0;
  } while (g == 1);

  if (g == n) {
    do {
      ys = step(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

void split(u64 n, std::map<u64, int>& out, const FactorBudget& budget)
{
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  // Deterministic retry schedule: a fixed-seed generator supplies (x0, c).
  std::mt19937_64 gen(0x5eedULL ^ n);
  for (int attempt = 0; attempt < budget.rho_attempts; ++attempt) {
    const u64 x0 = gen() % n;
    const u64 c = 1 + gen() % (n - 1);
    const u64 d = rho_brent(n, x0, c, budget.rho_iterations);
    if (d != 0) {
      split(d, out, budget);
      split(n / d, out, budget);
      return;
    }
  }
  throw FactorIncomplete(n, "factorization incomplete: rho budget exhausted on composite cofactor " +
                                std::to_string(n));
}

}  // namespace

int Factorization::total_exponent() const
{
  int total = 0;
  for (const auto& f : factors) total += f.exponent;
  return total;
}

bool Factorization::squarefree() const
{
  return std::all_of(factors.begin(), factors.end(), [](const PrimeFactor& f) { return f.exponent == 1; });
}

u64 Factorization::magnitude() const
{
  u64 m = 1;
  for (const auto& f : factors)
    for (int e = 0; e < f.exponent; ++e) m *= u64(f.prime);
  return m;
}

u64 mulmod(u64 x, u64 y, u64 m)
{
  return u64(u128(x) * y % m);
}

u64 powmod(u64 base, u64 exp, u64 m)
{
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(u64 n)
{
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  for (u64 a : small)
    if (!strong_probable_prime(n, a)) return false;
  return true;
}

bool is_prime(i64 n)
{
  return n > 1 && is_prime_u64(u64(n));
}

Factorization factor(i64 n, const FactorBudget& budget)
{
  if (n == 0) throw InvalidInput("factor: n must be nonzero");
  Factorization result;
  result.value = n;
  result.sign = n < 0 ? -1 : 1;
  u64 rest = magnitude_of(n);

  std::map<u64, int> found;
  for (u64 d = 2; d <= kTrialBound && d * d <= rest; d += (d == 2 ? 1 : 2)) {
    while (rest % d == 0) {
      ++found[d];
      rest /= d;
    }
  }
  if (rest > 1) {
    if (rest <= kTrialBound * kTrialBound)
      ++found[rest];  // no factor below its square root
    else
      split(rest, found, budget);
  }
  for (const auto& [p, e] : found) result.factors.push_back({i64(p), e});
  return result;
}

bool is_perfect_square(i64 n)
{
  if (n < 0) return false;
  const u128 r = isqrt(u128(n));
  return r * r == u128(n);
}

bool is_perfect_square(i128 n)
{
  if (n < 0) return false;
  const u128 r = isqrt(u128(n));
  return r * r == u128(n);
}

int kronecker(i64 d, i64 k)
{
  if (k == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  // (D/-1) = sign of D.
  if (k < 0) {
    k = -k;
    if (d < 0) result = -result;
  }
  // Factor out powers of 2 from k: (D/2) = 0 if D even, +1 if D = +-1 mod 8, -1 if D = +-3 mod 8.
  int twos = 0;
  while ((k & 1) == 0) {
    k >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((d & 1) == 0) return 0;
    const i64 r8 = ((d % 8) + 8) % 8;
    if ((twos & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // k odd positive: Jacobi symbol (d/k).
  i64 a = d % k;
  if (a < 0) a += k;
  i64 m = k;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const i64 r8 = m % 8;
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

bool is_squarefree(i64 n)
{
  if (n == 0) return false;
  if (n == 1 || n == -1) return true;
  return factor(n).squarefree();
}

std::vector<i64> primes_up_to(i64 limit)
{
  std::vector<i64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(std::size_t(limit) + 1, false);
  for (i64 i = 2; i <= limit; ++i) {
    if (composite[std::size_t(i)]) continue;
    primes.push_back(i);
    for (i64 j = i * i; j <= limit; j += i) composite[std::size_t(j)] = true;
  }
  return primes;
}

}  // namespace ecpq::arith
