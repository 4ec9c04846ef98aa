#include "ecpq/existence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "ecpq/arith.hpp"
#include "ecpq/error.hpp"
#include "ecpq/parallel.hpp"

namespace ecpq::existence {

namespace {

i64 mod_floor(i128 v, i64 m)
{
  i128 r = v % m;
  return i64(r < 0 ? r + m : r);
}

}  // namespace

std::vector<ConductorRow> search_conductors(IntRange a_range, IntRange b_range, IntRange n_range, i64 n_max,
                                            unsigned workers)
{
  if (n_max < 1) throw InvalidInput("search_conductors: N_max must be at least 1");
  if (a_range.empty() || b_range.empty() || n_range.empty()) return {};

  // One block per value of a; blocks are disjoint and merged after sorting.
  std::vector<std::vector<ConductorRow>> blocks(std::size_t(a_range.size()));
  parallel_for(blocks.size(), workers, [&](std::size_t i) {
    const i64 a = a_range.lo + i64(i);
    auto& out = blocks[i];
    for (i64 b = b_range.lo; b <= b_range.hi; ++b) {
      if (!curves::family_admissible(a, b)) continue;
      const curves::QuadraticPoly poly = curves::discriminant_polynomial(a, b);
      for (i64 n = n_range.lo; n <= n_range.hi; ++n) {
        const i128 delta = poly(n);
        const i128 mag = delta < 0 ? -delta : delta;
        if (mag > n_max || mag == 0) continue;
        const auto N = curves::family_conductor({a, b, n});
        if (!N) continue;
        const auto fac = arith::factor(*N);
        if (fac.factors.size() > 2) continue;
        ConductorRow row{a, b, n, i64(delta), *N, fac.factors[0].prime, 1};
        if (fac.factors.size() == 2) row.q = fac.factors[1].prime;
        out.push_back(row);
      }
    }
  });

  std::vector<ConductorRow> rows;
  for (auto& block : blocks) rows.insert(rows.end(), block.begin(), block.end());
  std::sort(rows.begin(), rows.end(), [](const ConductorRow& x, const ConductorRow& y) {
    return std::tie(x.N, x.a, x.b, x.n) < std::tie(y.N, y.a, y.b, y.n);
  });
  return rows;
}

AlmostPrimeCounts almost_prime_count(i64 a, i64 b, i64 T)
{
  if (!curves::family_admissible(a, b)) throw InvalidInput("almost_prime_count: (a, b) is not admissible");
  if (T < 0) throw InvalidInput("almost_prime_count: T must be nonnegative");
  const curves::QuadraticPoly poly = curves::discriminant_polynomial(a, b);
  AlmostPrimeCounts counts;
  for (i64 n = 1; n <= T; ++n) {
    const i128 v = poly(n);
    if (v > INT64_MAX || v < -INT64_MAX) throw std::overflow_error("almost_prime_count: discriminant exceeds 64 bits");
    const i64 value = i64(v);
    if (value == 0) continue;
    const i64 mag = value < 0 ? -value : value;
    if (arith::is_prime(mag)) {
      ++counts.primes;
      continue;
    }
    if (mag > 1 && arith::factor(mag).total_exponent() == 2) ++counts.semiprimes;
  }
  return counts;
}

RootCount quadratic_root_count(const curves::QuadraticPoly& poly, i64 p)
{
  if (!arith::is_prime(p)) throw InvalidInput("quadratic_root_count: p must be prime");
  const i64 c2 = mod_floor(poly.c2, p), c1 = mod_floor(poly.c1, p), c0 = mod_floor(poly.c0, p);
  RootCount out;
  if (c2 == 0 && c1 == 0 && c0 == 0) {
    out.degenerate = true;
    out.roots = int(std::min<i64>(p, 1 << 30));
    return out;
  }
  if (p == 2 || c2 == 0) {
    if (c2 == 0) {
      // Linear or constant mod p.
      out.roots = c1 != 0 ? 1 : 0;
      return out;
    }
    for (i64 n = 0; n < p; ++n)
      if ((i128(c2) * n * n + i128(c1) * n + c0) % p == 0) ++out.roots;
    return out;
  }
  const i64 disc = mod_floor(poly.discriminant(), p);
  out.roots = disc == 0 ? 1 : 1 + arith::kronecker(disc, p);
  return out;
}

HLResult hl_constant(i64 a, i64 b, i64 prime_cutoff)
{
  if (!curves::family_admissible(a, b)) throw InvalidInput("hl_constant: (a, b) is not admissible");
  if (prime_cutoff < 3) throw InvalidInput("hl_constant: prime cutoff must be at least 3");
  const curves::QuadraticPoly poly = curves::discriminant_polynomial(a, b);
  long double product = 1.0L;
  for (i64 p : arith::primes_up_to(prime_cutoff)) {
    const RootCount w = quadratic_root_count(poly, p);
    if (w.degenerate) throw std::logic_error("hl_constant: discriminant polynomial vanishes mod p");
    product *= (1.0L - (long double)w.roots / p) / (1.0L - 1.0L / p);
  }
  return {a, b, prime_cutoff, double(product / std::sqrt(432.0L))};
}

std::vector<SetzerPrimeHit> setzer_prime_search(i64 limit)
{
  if (limit < 0) throw InvalidInput("setzer_prime_search: limit must be nonnegative");
  std::vector<SetzerPrimeHit> hits;
  for (i64 u = 0; u * u + 64 <= limit; ++u)
    if (arith::is_prime(u * u + 64)) hits.push_back({u, u * u + 64});
  return hits;
}

void write_table1_csv(std::ostream& out, const std::vector<ConductorRow>& rows)
{
  out << "a,b,n,delta,N,p,q\n";
  for (const auto& r : rows) {
    out << r.a << ',' << r.b << ',' << r.n << ',' << r.delta << ',' << r.N << ',' << r.p << ',';
    if (r.q != 1) out << r.q;
    out << '\n';
  }
}

}  // namespace ecpq::existence
