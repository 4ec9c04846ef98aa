#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ecpq/int128.hpp"

namespace ecpq::diophantine {

/// B^2 (A^2 - 4B) = sign * 2^8 * p^alpha * q^beta.
struct SetzerSystem {
  i128 A = 0;
  i128 B = 0;
  int alpha = 0;
  int beta = 0;
  int sign = 1;
};

/// The seven equation shapes:
///   E1  1 = 2^4 q^b - p^a
///   E2  |p^a - q^b| = 16
///   E3  A^2 + 64 = p^a q^b
///   E4  A^2 + s1 64 q^b = s2 p^a
///   E5  A^2 + s1 4 q^b = s2 256 p^a,  with q^b = -s1 mod 8
///   E6  A^2 + s1 4 p^a q^b = s2 256
///   E7  A^2 + s1 64 p^a q^b = s2
enum class EqTag { E1 = 1, E2, E3, E4, E5, E6, E7 };

inline constexpr std::array<EqTag, 7> kAllEquations = {EqTag::E1, EqTag::E2, EqTag::E3, EqTag::E4,
                                                       EqTag::E5, EqTag::E6, EqTag::E7};

std::string to_string(EqTag tag);
/// Parses "1".."7" or "E1".."E7"; throws InvalidInput otherwise.
EqTag parse_eq_tag(const std::string& text);
bool has_sign_choices(EqTag tag);

/// An equation with optional fixed signs (s1, s2). Unset signs mean every
/// combination is searched. Only E4-E7 carry signs.
struct DiophEq {
  EqTag tag = EqTag::E1;
  std::optional<std::array<int, 2>> signs;
};

struct Solution {
  std::optional<i128> A;  // absent for E1 and E2; otherwise A >= 0
  int a = 0;
  int b = 0;
  std::array<int, 2> signs{1, 1};  // (s1, s2) for E4-E7, (1, 1) otherwise
};

struct SearchBounds {
  int a_max = 40;
  int b_max = 40;
  i64 A_max = 1'000'000;
};

/// Prime powers and products beyond this magnitude are skipped and counted.
inline const i128 kPowerCap = i128(1) << 90;

struct SolveResult {
  std::vector<Solution> solutions;
  u64 skipped_over_cap = 0;
};

enum class ObstructionKind { Mod3, Mod16Factorization, GaussianPrime, Mod3Mod5 };

std::string to_string(ObstructionKind kind);

/// Residue-class proof that an equation has no solution for given (p, q).
struct Obstruction {
  ObstructionKind kind = ObstructionKind::Mod3;
  std::string detail;
};

struct ExceptionalSolution {
  i64 A = 0;
  i64 p_power = 0;
  i64 q_power = 0;

  friend bool operator==(const ExceptionalSolution&, const ExceptionalSolution&) = default;
  friend auto operator<=>(const ExceptionalSolution&, const ExceptionalSolution&) = default;
};

/// B values allowed by the congruence and divisibility constraints, with every
/// exponent at most e_max. Sorted ascending.
std::vector<i64> possible_B_values(i64 p, i64 q, int e_max);

/// Exhaustive search within bounds. Throws InvalidInput for bad primes.
SolveResult solve_equation(const DiophEq& eq, i64 p, i64 q, const SearchBounds& bounds = {});

/// Checks a candidate solution by direct substitution (including the E5 side condition).
bool satisfies(EqTag tag, i64 p, i64 q, const Solution& s);

/// The Setzer system a solution of the given equation came from.
SetzerSystem to_setzer_system(EqTag tag, i64 p, i64 q, const Solution& s);
/// B^2 (A^2 - 4B) == sign 2^8 p^alpha q^beta, exactly.
bool setzer_identity_holds(const SetzerSystem& sys, i64 p, i64 q);

/// The finitely many solutions of A^2 - 64 = -p^alpha q^beta under A = 1 mod 4.
std::vector<ExceptionalSolution> exceptional_solutions();
/// Re-derives exceptional_solutions() by sweeping A with A^2 < 64.
std::vector<ExceptionalSolution> sweep_exceptional_solutions();
/// Conductors p q excluded because of the exceptional solutions.
std::vector<i64> excluded_conductors();

std::optional<Obstruction> residue_obstruction(const DiophEq& eq, i64 p, i64 q);

/// p = q = 31 mod 60 and p mod 16 outside the subgroup generated by q mod 16.
bool two_torsion_obstructed(i64 p, i64 q);

/// Multiplicative subgroup of (Z/16)^x generated by q mod 16.
std::vector<int> subgroup_mod16(i64 q);

}  // namespace ecpq::diophantine
