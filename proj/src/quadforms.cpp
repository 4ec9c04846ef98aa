#include "ecpq/quadforms.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ecpq/arith.hpp"
#include "ecpq/error.hpp"

namespace ecpq::quadforms {

namespace {

i64 gcd3(i64 a, i64 b, i64 c)
{
  return std::gcd(std::gcd(a, b), c);
}

void require_fundamental(i64 D, bool negative, const char* who)
{
  if ((negative && D >= 0) || (!negative && D <= 0))
    throw InvalidInput(std::string(who) + ": discriminant has the wrong sign");
  if (!negative && arith::is_perfect_square(D))
    throw InvalidInput(std::string(who) + ": discriminant is a perfect square");
  if (!is_fundamental_discriminant(D))
    throw InvalidInput(std::string(who) + ": " + std::to_string(D) + " is not a fundamental discriminant");
}

i64 isqrt64(i64 n)
{
  return i64(isqrt(u128(n)));
}

}  // namespace

bool QuadForm::primitive() const
{
  return gcd3(a, b, c) == 1;
}

std::size_t QuadFormHash::operator()(const QuadForm& f) const noexcept
{
  u64 h = u64(f.a) * 0x9E3779B97F4A7C15ULL;
  h ^= u64(f.b) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  h ^= u64(f.c) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
  return std::size_t(h);
}

i64 fundamental_discriminant(i64 m)
{
  if (m == 0 || m == 1) throw InvalidInput("fundamental_discriminant: radicand must not be 0 or 1");
  if (!arith::is_squarefree(m)) throw InvalidInput("fundamental_discriminant: radicand " + std::to_string(m) + " is not squarefree");
  const i64 r = ((m % 4) + 4) % 4;
  return r == 1 ? m : 4 * m;
}

bool is_fundamental_discriminant(i64 D)
{
  if (D == 0 || D == 1) return false;
  const i64 r = ((D % 4) + 4) % 4;
  if (r == 1) return arith::is_squarefree(D);
  if (r != 0) return false;
  const i64 m = D / 4;
  const i64 r4 = ((m % 4) + 4) % 4;
  return (r4 == 2 || r4 == 3) && arith::is_squarefree(m);
}

std::vector<QuadForm> reduced_forms_imaginary(i64 D)
{
  require_fundamental(D, true, "reduced_forms_imaginary");
  const i64 absD = -D;
  const i64 parity = absD & 1;
  std::vector<QuadForm> forms;
  for (i64 a = 1; 3 * a * a <= absD; ++a) {
    const i64 four_a = 4 * a;
    for (i64 b = parity; b <= a; b += 2) {
      const i64 num = b * b + absD;
      if (num % four_a != 0) continue;
      const i64 c = num / four_a;
      if (c < a || gcd3(a, b, c) != 1) continue;
      forms.push_back({a, b, c});
      if (b != 0 && b != a && a != c) forms.push_back({a, -b, c});
    }
  }
  return forms;
}

i64 class_number_imaginary(i64 D)
{
  require_fundamental(D, true, "class_number_imaginary");
  // Same enumeration as reduced_forms_imaginary, counting without storage.
  const i64 absD = -D;
  const i64 parity = absD & 1;
  i64 h = 0;
  for (i64 a = 1; 3 * a * a <= absD; ++a) {
    const i64 four_a = 4 * a;
    for (i64 b = parity; b <= a; b += 2) {
      const i64 num = b * b + absD;
      if (num % four_a != 0) continue;
      const i64 c = num / four_a;
      if (c < a || gcd3(a, b, c) != 1) continue;
      h += (b != 0 && b != a && a != c) ? 2 : 1;
    }
  }
  return h;
}

i64 class_number_imaginary_character_sum(i64 D)
{
  require_fundamental(D, true, "class_number_imaginary_character_sum");
  const i64 absD = -D;
  const i64 w = D == -3 ? 6 : D == -4 ? 4 : 2;
  i64 sum = 0;
  for (i64 k = 1; 2 * k < absD; ++k) sum += arith::kronecker(D, k);
  const i64 denom = 2 * (2 - arith::kronecker(D, 2));
  if ((w * sum) % denom != 0) throw std::logic_error("character sum not divisible by its normalizer");
  return w * sum / denom;
}

std::vector<QuadForm> reduced_forms_indefinite(i64 D)
{
  require_fundamental(D, false, "reduced_forms_indefinite");
  const i64 s = isqrt64(D);
  std::vector<QuadForm> forms;
  for (i64 b = (D & 1) ? 1 : 2; b <= s; b += 2) {
    const i64 n = (D - b * b) / 4;  // -a*c
    // 2|a| + b > sqrt(D)  and  2|a| - b < sqrt(D)
    for (i64 abs_a = 1; 2 * abs_a - b <= s; ++abs_a) {
      const i64 lo = 2 * abs_a + b;
      if (lo * lo <= D) continue;
      if (n % abs_a != 0) continue;
      const i64 abs_c = n / abs_a;
      if (std::gcd(std::gcd(abs_a, b), abs_c) != 1) continue;
      forms.push_back({abs_a, b, -abs_c});
      forms.push_back({-abs_a, b, abs_c});
    }
  }
  return forms;
}

QuadForm rho(const QuadForm& f, i64 D)
{
  const i64 s = isqrt64(D);
  const i64 two_c = 2 * (f.c < 0 ? -f.c : f.c);
  i64 bp;
  if (two_c / 2 <= s) {
    const i64 r = ((s + f.b) % two_c + two_c) % two_c;
    bp = s - r;
  } else {
    // -|c| < b' <= |c|
    const i64 half = two_c / 2;
    i64 r = ((-f.b) % two_c + two_c) % two_c;
    if (r > half) r -= two_c;
    bp = r;
  }
  const i64 num = bp * bp - D;
  return {f.c, bp, num / (4 * f.c)};
}

std::vector<std::vector<QuadForm>> reduced_cycles(i64 D)
{
  const auto forms = reduced_forms_indefinite(D);
  std::unordered_map<QuadForm, std::size_t, QuadFormHash> index;
  index.reserve(forms.size() * 2);
  for (std::size_t i = 0; i < forms.size(); ++i) index.emplace(forms[i], i);

  std::vector<bool> seen(forms.size(), false);
  std::vector<std::vector<QuadForm>> cycles;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (seen[i]) continue;
    std::vector<QuadForm> cycle;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      cycle.push_back(forms[j]);
      const auto it = index.find(rho(forms[j], D));
      if (it == index.end()) throw std::logic_error("reduction step left the set of reduced forms");
      j = it->second;
    }
    if (j != i) throw std::logic_error("reduction step is not a permutation of reduced forms");
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

i64 narrow_class_number_real(i64 D)
{
  return i64(reduced_cycles(D).size());
}

RealAnalyticClassData class_number_real_analytic(i64 D)
{
  require_fundamental(D, false, "class_number_real_analytic");
  const i64 s = isqrt64(D);
  const long double root = std::sqrt((long double)D);

  // omega = (P0 + sqrt D) / Q0 generates the maximal order.
  i64 P = (D & 1) ? 1 : 0;
  i64 Q = 2;
  auto advance = [&](i64& p, i64& q) {
    const i64 a = (p + s) / q;
    p = a * q - p;
    q = (D - p * p) / q;
  };
  advance(P, Q);  // first complete quotient after omega is reduced
  const i64 P1 = P, Q1 = Q;
  long double log_unit = 0.0L;
  int period = 0;
  do {
    log_unit += std::log((P + root) / (long double)Q);
    advance(P, Q);
    ++period;
  } while (P != P1 || Q != Q1);

  long double sum = 0.0L;
  const long double pi = std::numbers::pi_v<long double>;
  for (i64 k = 1; k < D; ++k) {
    const int chi = arith::kronecker(D, k);
    if (chi != 0) sum += chi * std::log(std::sin(pi * (long double)k / (long double)D));
  }
  const long double h_real = -sum / (2.0L * log_unit);
  const i64 h = std::llround((double)h_real);
  if (std::fabs((double)(h_real - h)) > 1e-3) throw std::logic_error("analytic class number did not round cleanly");

  RealAnalyticClassData out;
  out.wide_h = h;
  out.unit_norm = (period % 2 == 0) ? 1 : -1;
  out.narrow_h = out.unit_norm == 1 ? 2 * h : h;
  out.log_unit = double(log_unit);
  return out;
}

FieldClassData field_class_data(i64 m)
{
  FieldClassData out;
  out.m = m;
  if (m == 1 || m == -1) {
    out.D = m == -1 ? -4 : 1;
    out.h_value = 1;
    out.div3 = false;
    return out;
  }
  out.D = fundamental_discriminant(m);
  out.h_value = m < 0 ? class_number_imaginary(out.D) : narrow_class_number_real(out.D);
  out.div3 = out.h_value % 3 == 0;
  return out;
}

bool h_divisible_by_3(i64 m)
{
  if (m == 0 || m == 1 || m == -1) throw InvalidInput("h_divisible_by_3: radicand must not be 0 or +-1");
  return field_class_data(m).div3;
}

FieldClassData ClassNumberCache::get(i64 m)
{
  {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(m); it != table_.end()) return it->second;
  }
  const FieldClassData data = field_class_data(m);
  std::unique_lock lock(mutex_);
  table_.emplace(m, data);
  return data;
}

std::size_t ClassNumberCache::size() const
{
  std::shared_lock lock(mutex_);
  return table_.size();
}

}  // namespace ecpq::quadforms
