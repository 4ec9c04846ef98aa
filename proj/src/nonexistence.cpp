#include "ecpq/nonexistence.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "ecpq/arith.hpp"
#include "ecpq/diophantine.hpp"
#include "ecpq/error.hpp"
#include "ecpq/parallel.hpp"

namespace ecpq::nonexistence {

namespace {

bool p_side(i64 p)
{
  return p % 16 == 7 && p % 15 == 1;
}

bool q_side(i64 q)
{
  return q % 16 == 15 && q % 15 == 1;
}

}  // namespace

std::optional<i64> Verdict::failing_field() const
{
  for (const auto& f : class_data)
    if (f.div3) return f.m;
  return std::nullopt;
}

bool nonexistence_congruences(i64 p, i64 q)
{
  return p != q && p_side(p) && q_side(q);
}

bool obstruction_congruences(i64 p, i64 q)
{
  return diophantine::two_torsion_obstructed(p, q);
}

bool forces_two_torsion(std::span<const i64> factors)
{
  if (factors.empty()) throw InvalidInput("forces_two_torsion: need at least one prime");
  if (factors.size() > 20) throw InvalidInput("forces_two_torsion: too many primes");
  std::set<i64> distinct(factors.begin(), factors.end());
  if (distinct.size() != factors.size()) throw InvalidInput("forces_two_torsion: primes must be distinct");
  for (i64 p : factors)
    if (!arith::is_prime(p)) throw InvalidInput("forces_two_torsion: " + std::to_string(p) + " is not prime");

  const bool has_two = distinct.count(2) != 0;
  const bool all_pm1 =
      std::all_of(factors.begin(), factors.end(), [](i64 p) { return p % 8 == 1 || p % 8 == 7; });
  if (!has_two && !all_pm1) return false;

  const std::size_t n = factors.size();
  for (u64 mask = 1; mask < (u64(1) << n); ++mask) {
    i128 m = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (u64(1) << i)) m = checked_mul(m, factors[i]);
    if (m > INT64_MAX / 4) throw std::overflow_error("forces_two_torsion: radicand too large");
    for (i64 sign : {1, -1})
      if (quadforms::h_divisible_by_3(sign * i64(m))) return false;
  }
  return true;
}

std::vector<SemiprimeCandidate> congruence_candidates(i64 limit)
{
  if (limit < 1) throw InvalidInput("congruence_candidates: limit must be at least 1");
  // The smallest prime on either side is 31, so the partner is below limit / 31.
  const auto primes = arith::primes_up_to(limit / 31 + 1);
  std::vector<i64> ps, qs;
  for (i64 x : primes) {
    if (p_side(x)) ps.push_back(x);
    if (q_side(x)) qs.push_back(x);
  }
  std::vector<SemiprimeCandidate> out;
  for (i64 p : ps)
    for (i64 q : qs) {
      if (i128(p) * q >= limit) break;
      out.push_back({p * q, p, q});
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.N < y.N; });
  return out;
}

Verdict evaluate_candidate(const SemiprimeCandidate& c, quadforms::ClassNumberCache* cache)
{
  Verdict v;
  v.candidate = c;
  v.congruence_pass = nonexistence_congruences(c.p, c.q) || nonexistence_congruences(c.q, c.p);
  if (!v.congruence_pass) return v;
  const i64 radicands[] = {c.p, -c.p, c.q, -c.q, c.N, -c.N};
  // Only the prime fields repeat across candidates, so only they go through the cache.
  for (std::size_t k = 0; k < 6; ++k) {
    const i64 m = radicands[k];
    const auto data = (cache && k < 4) ? cache->get(m) : quadforms::field_class_data(m);
    v.class_data.push_back(data);
    if (data.div3) return v;
  }
  v.nonexistent = true;
  return v;
}

std::vector<Verdict> nonexistence_search(i64 limit, unsigned workers)
{
  const auto candidates = congruence_candidates(limit);
  std::vector<Verdict> verdicts(candidates.size());
  quadforms::ClassNumberCache cache;
  parallel_for(candidates.size(), workers, [&](std::size_t i) { verdicts[i] = evaluate_candidate(candidates[i], &cache); });
  return verdicts;
}

std::vector<SemiprimeCandidate> nonexistent_conductors(const std::vector<Verdict>& verdicts)
{
  std::vector<SemiprimeCandidate> out;
  for (const auto& v : verdicts)
    if (v.nonexistent) out.push_back(v.candidate);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.N < y.N; });
  return out;
}

void write_table2_csv(std::ostream& out, const std::vector<SemiprimeCandidate>& rows)
{
  out << "N,p,q\n";
  for (const auto& r : rows) out << r.N << ',' << r.p << ',' << r.q << '\n';
}

void write_verdicts_csv(std::ostream& out, const std::vector<Verdict>& verdicts)
{
  out << "N,p,q,congruence_pass,failing_field,h_values\n";
  for (const auto& v : verdicts) {
    out << v.candidate.N << ',' << v.candidate.p << ',' << v.candidate.q << ',' << (v.congruence_pass ? 1 : 0) << ',';
    if (const auto f = v.failing_field()) out << *f;
    out << ',';
    for (std::size_t i = 0; i < v.class_data.size(); ++i) out << (i ? ";" : "") << v.class_data[i].h_value;
    out << '\n';
  }
}

}  // namespace ecpq::nonexistence
