#pragma once

#include <iosfwd>
#include <vector>

#include "ecpq/curves.hpp"
#include "ecpq/int128.hpp"

namespace ecpq::existence {

/// A family member whose discriminant is +-p or +-pq. q == 1 for prime N.
struct ConductorRow {
  i64 a = 0, b = 0, n = 0;
  i64 delta = 0;
  i64 N = 0;
  i64 p = 0;
  i64 q = 1;

  friend bool operator==(const ConductorRow&, const ConductorRow&) = default;
};

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct IntRange {
  i64 lo = 0, hi = -1;

  bool empty() const { return lo > hi; }
  i64 size() const { return empty() ? 0 : hi - lo + 1; }
};

/// Every admissible (a, b, n) in the box whose curve has conductor N = |delta| <= n_max
/// with N prime or a product of two distinct primes. Sorted by (N, a, b, n).
std::vector<ConductorRow> search_conductors(IntRange a_range, IntRange b_range, IntRange n_range, i64 n_max,
                                            unsigned workers = 1);

struct AlmostPrimeCounts {
  i64 primes = 0;      // 1 <= n <= T with |delta(n)| prime
  i64 semiprimes = 0;  // ... with exactly two prime factors counted with multiplicity

  friend bool operator==(const AlmostPrimeCounts&, const AlmostPrimeCounts&) = default;
};

AlmostPrimeCounts almost_prime_count(i64 a, i64 b, i64 T);

struct RootCount {
  int roots = 0;            // number of residues n mod p with poly(n) = 0 mod p
  bool degenerate = false;  // poly vanishes identically mod p
};

RootCount quadratic_root_count(const curves::QuadraticPoly& poly, i64 p);

struct HLResult {
  i64 a = 0, b = 0;
  i64 prime_cutoff = 0;
  double C = 0.0;
};

/// Prime-count constant for p(x) ~ C sqrt(x) / log x, with x bounding the conductor:
/// C = (1/sqrt 432) prod_{p <= cutoff} (1 - omega(p)/p) / (1 - 1/p).
HLResult hl_constant(i64 a, i64 b, i64 prime_cutoff);

struct SetzerPrimeHit {
  i64 u = 0;
  i64 p = 0;

  friend bool operator==(const SetzerPrimeHit&, const SetzerPrimeHit&) = default;
};

/// Primes of the form u^2 + 64 up to limit, ascending in u.
std::vector<SetzerPrimeHit> setzer_prime_search(i64 limit);

/// table1.csv: header a,b,n,delta,N,p,q; q empty when 1.
void write_table1_csv(std::ostream& out, const std::vector<ConductorRow>& rows);

}  // namespace ecpq::existence
