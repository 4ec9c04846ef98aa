#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ecpq/int128.hpp"
#include "ecpq/quadforms.hpp"

namespace ecpq::nonexistence {

/// N = p q with p the factor that is 7 mod 16 when the congruences pass.
struct SemiprimeCandidate {
  i64 N = 0;
  i64 p = 0;
  i64 q = 0;

  friend bool operator==(const SemiprimeCandidate&, const SemiprimeCandidate&) = default;
};

struct Verdict {
  SemiprimeCandidate candidate;
  bool congruence_pass = false;
  /// Evaluated fields in the order p, -p, q, -q, pq, -pq; stops at the first
  /// class number divisible by 3.
  std::vector<quadforms::FieldClassData> class_data;
  bool nonexistent = false;

  /// Radicand of the first field with 3 | h, if any.
  std::optional<i64> failing_field() const;
};

/// p = 7 mod 16, q = 15 mod 16, p = q = 1 mod 15 (ordered).
bool nonexistence_congruences(i64 p, i64 q);
/// p = q = 31 mod 60 and p mod 16 not in <q mod 16>.
bool obstruction_congruences(i64 p, i64 q);

/// For squarefree N = prod factors: either 2 is a factor or every factor is
/// +-1 mod 8, and no field Q(sqrt(+-m)) over nonempty subset products m has
/// class number divisible by 3. Then every curve of conductor N has a
/// rational 2-torsion point.
bool forces_two_torsion(std::span<const i64> factors);

/// All N = p q < limit passing nonexistence_congruences in some order, ascending.
std::vector<SemiprimeCandidate> congruence_candidates(i64 limit);

/// Six-field class number test for one candidate.
Verdict evaluate_candidate(const SemiprimeCandidate& c, quadforms::ClassNumberCache* cache = nullptr);

/// Verdicts for every congruence candidate below limit, ascending by N.
std::vector<Verdict> nonexistence_search(i64 limit, unsigned workers = 1);

/// The nonexistent subset, ascending by N.
std::vector<SemiprimeCandidate> nonexistent_conductors(const std::vector<Verdict>& verdicts);

/// table2.csv: header N,p,q.
void write_table2_csv(std::ostream& out, const std::vector<SemiprimeCandidate>& rows);
/// verdicts.csv: N,p,q,congruence_pass,failing_field,h_values (h values separated by ';').
void write_verdicts_csv(std::ostream& out, const std::vector<Verdict>& verdicts);

}  // namespace ecpq::nonexistence
