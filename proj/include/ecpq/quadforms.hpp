#pragma once

#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "ecpq/int128.hpp"

namespace ecpq::quadforms {

/// Binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;

  i64 discriminant() const { return b * b - 4 * a * c; }
  bool primitive() const;

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

struct QuadFormHash {
  std::size_t operator()(const QuadForm& f) const noexcept;
};

/// Class-number verdict for Q(sqrt(m)). For m > 0 h_value is the narrow class
/// number; 3 divides it exactly when 3 divides the wide class number.
struct FieldClassData {
  i64 m = 0;
  i64 D = 0;
  i64 h_value = 0;
  bool div3 = false;
};

/// m if m = 1 mod 4, else 4m. Requires m squarefree and m not 0 or 1.
i64 fundamental_discriminant(i64 m);
bool is_fundamental_discriminant(i64 D);

// Positive-definite forms (D < 0).

/// All primitive reduced forms: |b| <= a <= c, with b >= 0 when |b| = a or a = c.
std::vector<QuadForm> reduced_forms_imaginary(i64 D);
i64 class_number_imaginary(i64 D);
/// Independent route: h = w / (2 (2 - chi(2))) * sum_{0<k<|D|/2} chi(k).
i64 class_number_imaginary_character_sum(i64 D);

// Indefinite forms (D > 0, non-square).

/// Primitive reduced indefinite forms: 0 < b < sqrt(D), sqrt(D) - b < 2|a| < sqrt(D) + b.
std::vector<QuadForm> reduced_forms_indefinite(i64 D);
/// One reduction step (a, b, c) -> (c, b', (b'^2 - D) / 4c) with b' = -b mod 2c
/// taken in the window (sqrt(D) - 2|c|, sqrt(D)) when |c| < sqrt(D).
QuadForm rho(const QuadForm& f, i64 D);
/// Cycles of reduced forms under rho; each form appears in exactly one cycle.
std::vector<std::vector<QuadForm>> reduced_cycles(i64 D);
/// Narrow class number: the number of rho-cycles.
i64 narrow_class_number_real(i64 D);

/// Dirichlet's class number formula with the fundamental unit taken from the
/// continued fraction period. Independent of the cycle enumeration.
struct RealAnalyticClassData {
  i64 wide_h = 0;
  int unit_norm = 0;  // norm of the fundamental unit, +1 or -1
  i64 narrow_h = 0;
  double log_unit = 0.0;
};
RealAnalyticClassData class_number_real_analytic(i64 D);

FieldClassData field_class_data(i64 m);
bool h_divisible_by_3(i64 m);

/// Memo of field_class_data keyed by radicand; safe for concurrent use.
class ClassNumberCache {
 public:
  FieldClassData get(i64 m);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<i64, FieldClassData> table_;
};

}  // namespace ecpq::quadforms
