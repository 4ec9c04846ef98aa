#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "ecpq/error.hpp"
#include "ecpq/quadforms.hpp"
#include "oracles.hpp"

using namespace ecpq;
using namespace ecpq::quadforms;

TEST_CASE("fundamental_discriminant")
{
  CHECK(fundamental_discriminant(5) == 5);
  CHECK(fundamental_discriminant(-1) == -4);
  CHECK(fundamental_discriminant(-151) == -151);
  CHECK(fundamental_discriminant(3) == 12);
  CHECK(fundamental_discriminant(2) == 8);
  CHECK_THROWS_AS(fundamental_discriminant(12), InvalidInput);
  CHECK_THROWS_AS(fundamental_discriminant(0), InvalidInput);
  CHECK_THROWS_AS(fundamental_discriminant(1), InvalidInput);
}

TEST_CASE("imaginary class numbers from hand enumeration")
{
  CHECK(class_number_imaginary(-3) == 1);
  CHECK(class_number_imaginary(-23) == 3);
  CHECK(class_number_imaginary(-31) == 3);
  CHECK(class_number_imaginary(-4) == 1);
  const auto forms = reduced_forms_imaginary(-23);
  const std::set<QuadForm> got(forms.begin(), forms.end());
  CHECK(got == std::set<QuadForm>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}});
  CHECK_THROWS_AS(class_number_imaginary(-12), InvalidInput);
  CHECK_THROWS_AS(class_number_imaginary(5), InvalidInput);
}

TEST_CASE("reduced imaginary forms are primitive, reduced, of the right discriminant")
{
  for (i64 D : {-3, -4, -23, -84, -151, -420, -1155, -4 * 151 * 271}) {
    for (const auto& f : reduced_forms_imaginary(D)) {
      CHECK(f.discriminant() == D);
      CHECK(f.primitive());
      CHECK(std::abs(f.b) <= f.a);
      CHECK(f.a <= f.c);
      if (std::abs(f.b) == f.a || f.a == f.c) CHECK(f.b >= 0);
    }
  }
}

TEST_CASE("imaginary class numbers agree with Gauss reduction of a larger box")
{
  int bad = 0;
  for (i64 D = -3; D >= -400; --D) {
    if (!oracle::fundamental_trial(D)) continue;
    const i64 box = 3 * i64(std::sqrt(double(-D))) + 3;
    if (class_number_imaginary(D) != oracle::class_number_by_gauss_reduction(D, box)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("indefinite reduced forms and cycles")
{
  CHECK(narrow_class_number_real(5) == 1);
  CHECK(narrow_class_number_real(12) == 2);
  CHECK(narrow_class_number_real(316) == 6);
  CHECK(reduced_forms_indefinite(12).size() == 4);
  const auto cycles5 = reduced_cycles(5);
  REQUIRE(cycles5.size() == 1);
  CHECK(std::set<QuadForm>(cycles5[0].begin(), cycles5[0].end()) == std::set<QuadForm>{{1, 1, -1}, {-1, 1, 1}});
  CHECK_THROWS_AS(narrow_class_number_real(16), InvalidInput);
  CHECK_THROWS_AS(narrow_class_number_real(20), InvalidInput);
}

TEST_CASE("cycle decomposition is a partition of the reduced forms")
{
  for (i64 D : {5, 8, 12, 40, 316, 1155 * 4, 40921, 4 * 271}) {
    const auto forms = reduced_forms_indefinite(D);
    std::set<QuadForm> all(forms.begin(), forms.end());
    CHECK(all.size() == forms.size());
    std::set<QuadForm> covered;
    for (const auto& cycle : reduced_cycles(D))
      for (const auto& f : cycle) {
        CHECK(covered.insert(f).second);
        CHECK(f.discriminant() == D);
        const QuadForm g = rho(f, D);
        CHECK(all.count(g) == 1);
      }
    CHECK(covered == all);
  }
}

TEST_CASE("analytic routes match hand values")
{
  CHECK(class_number_imaginary_character_sum(-3) == 1);
  CHECK(class_number_imaginary_character_sum(-4) == 1);
  CHECK(class_number_imaginary_character_sum(-23) == 3);
  const auto q5 = class_number_real_analytic(5);
  CHECK(q5.wide_h == 1);
  CHECK(q5.unit_norm == -1);
  CHECK(q5.log_unit == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)));
  const auto q3 = class_number_real_analytic(12);
  CHECK(q3.unit_norm == 1);
  CHECK(q3.narrow_h == 2);
  CHECK(q3.log_unit == doctest::Approx(std::log(2 + std::sqrt(3.0))));
  const auto q79 = class_number_real_analytic(316);
  CHECK(q79.wide_h == 3);
  CHECK(q79.narrow_h == 6);
}

TEST_CASE("large imaginary discriminants: enumeration matches character sum")
{
  std::mt19937_64 gen(4242);
  std::uniform_int_distribution<i64> dist(1'000'001, 40'000'000);
  int checked = 0;
  while (checked < 3) {
    const i64 D = -dist(gen);
    if (!is_fundamental_discriminant(D)) continue;
    CHECK(class_number_imaginary(D) == class_number_imaginary_character_sum(D));
    ++checked;
  }
}

TEST_CASE("h_divisible_by_3 and field_class_data")
{
  CHECK(h_divisible_by_3(-31));
  CHECK_FALSE(h_divisible_by_3(5));
  CHECK_FALSE(h_divisible_by_3(-151));
  CHECK(h_divisible_by_3(79));
  CHECK_THROWS_AS(h_divisible_by_3(1), InvalidInput);
  CHECK_THROWS_AS(h_divisible_by_3(-1), InvalidInput);
  const auto unit = field_class_data(-1);
  CHECK(unit.h_value == 1);
  CHECK_FALSE(unit.div3);
  const auto f = field_class_data(-23);
  CHECK(f.D == -23);
  CHECK(f.h_value == 3);
  CHECK(f.div3);
}

TEST_CASE("ClassNumberCache returns the same data under concurrent use")
{
  ClassNumberCache cache;
  std::vector<std::jthread> threads;
  std::vector<i64> results(8);
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { results[t] = cache.get(-151 * (t % 2 ? 1 : 271)).h_value; });
  threads.clear();
  for (int t = 0; t < 8; ++t) CHECK(results[t] == field_class_data(-151 * (t % 2 ? 1 : 271)).h_value);
  CHECK(cache.size() == 2);
}

TEST_CASE("3-divisibility transfers between narrow and wide class numbers")
{
  int bad = 0, fields = 0;
  for (i64 D = 5; D <= 10'000; ++D) {
    if (!oracle::fundamental_trial(D)) continue;
    ++fields;
    const i64 narrow = narrow_class_number_real(D);
    const auto analytic = class_number_real_analytic(D);
    if (narrow != analytic.wide_h && narrow != 2 * analytic.wide_h) ++bad;
    if ((narrow % 3 == 0) != (analytic.wide_h % 3 == 0)) ++bad;
  }
  CHECK(fields > 3000);
  CHECK(bad == 0);
}

TEST_CASE("narrow class numbers agree with Zagier-reduced cycle counts")
{
  for (i64 D = 5; D <= 1500; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    CHECK(narrow_class_number_real(D) == oracle::narrow_class_number_by_zagier_cycles(D));
  }
}
