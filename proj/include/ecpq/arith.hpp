#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ecpq/int128.hpp"

namespace ecpq::arith {

struct PrimeFactor {
  i64 prime;
  int exponent;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// Complete factorization of a nonzero integer. `factors` lists the primes of
/// |value| in strictly ascending order; the sign of value is kept in `sign`.
struct Factorization {
  i64 value = 1;
  int sign = 1;
  std::vector<PrimeFactor> factors;

  /// Omega(n): number of prime factors counted with multiplicity.
  int total_exponent() const;
  bool squarefree() const;
  /// Product of prime^exponent, i.e. |value|.
  u64 magnitude() const;
};

/// Thrown by factor() when the rho budget runs out on a composite cofactor.
class FactorIncomplete : public std::runtime_error {
 public:
  FactorIncomplete(u64 cofactor, const std::string& what)
      : std::runtime_error(what), cofactor_(cofactor) {}
  u64 cofactor() const { return cofactor_; }

 private:
  u64 cofactor_;
};

struct FactorBudget {
  int rho_attempts = 32;           // distinct polynomial seeds tried per cofactor
  u64 rho_iterations = u64(1) << 22;  // iteration cap per attempt
};

u64 mulmod(u64 x, u64 y, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Deterministic primality for every 64-bit input (strong-probable-prime test
/// with the first twelve prime bases, which has no pseudoprimes below 2^64).
bool is_prime(i64 n);
bool is_prime_u64(u64 n);

Factorization factor(i64 n, const FactorBudget& budget = {});

bool is_perfect_square(i64 n);
bool is_perfect_square(i128 n);

/// Kronecker symbol (D/k), including the conventions (D/2) and (D/-1).
int kronecker(i64 d, i64 k);

bool is_squarefree(i64 n);

/// All primes p with 2 <= p <= limit, ascending.
std::vector<i64> primes_up_to(i64 limit);

}  // namespace ecpq::arith
