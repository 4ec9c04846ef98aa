#include <doctest.h>

#include <array>
#include <fstream>
#include <sstream>

#include "ecpq/arith.hpp"
#include "ecpq/diophantine.hpp"
#include "ecpq/error.hpp"
#include "ecpq/nonexistence.hpp"
#include "oracles.hpp"

using namespace ecpq;
using namespace ecpq::nonexistence;

TEST_CASE("nonexistence_congruences")
{
  CHECK(nonexistence_congruences(151, 271));
  CHECK_FALSE(nonexistence_congruences(271, 151));
  CHECK_FALSE(nonexistence_congruences(7, 31));
}

TEST_CASE("obstruction_congruences")
{
  CHECK(obstruction_congruences(151, 271));
  CHECK(obstruction_congruences(31, 151));
  CHECK_FALSE(obstruction_congruences(151, 7));
}

TEST_CASE("forces_two_torsion")
{
  const std::array<i64, 2> table_row{151, 271}, small{3, 5}, with_two{2, 7}, repeated{7, 7};
  CHECK(forces_two_torsion(table_row));
  CHECK_FALSE(forces_two_torsion(small));
  CHECK(forces_two_torsion(with_two));
  CHECK_THROWS_AS(forces_two_torsion(repeated), InvalidInput);
  const std::array<i64, 1> nine{9};
  CHECK_THROWS_AS(forces_two_torsion(nine), InvalidInput);
  // 31 passes the mod 8 test but Q(sqrt(-31)) has class number 3.
  const std::array<i64, 2> mixed{151, 31};
  CHECK_FALSE(forces_two_torsion(mixed));
}

TEST_CASE("congruence_candidates")
{
  CHECK(congruence_candidates(5000) == std::vector<SemiprimeCandidate>{{4681, 151, 31}});
  CHECK(congruence_candidates(4681).empty());
  CHECK(congruence_candidates(4682).size() == 1);
  for (const auto& c : congruence_candidates(1'000'000)) {
    CHECK(c.N == c.p * c.q);
    CHECK(nonexistence_congruences(c.p, c.q));
  }
}

TEST_CASE("candidate count matches factoring every N below the limit")
{
  const i64 limit = 210'000;
  std::vector<SemiprimeCandidate> expected;
  for (i64 N = 1; N < limit; ++N) {
    const auto f = oracle::factor_trial(N);
    if (f.size() != 2 || f[0].second != 1 || f[1].second != 1) continue;
    const i64 a = f[0].first, b = f[1].first;
    if (nonexistence_congruences(a, b)) expected.push_back({N, a, b});
    else if (nonexistence_congruences(b, a)) expected.push_back({N, b, a});
  }
  CHECK(expected.size() == 17);
  CHECK(congruence_candidates(limit) == expected);
}

TEST_CASE("nonexistence_search small limits")
{
  const auto v50k = nonexistence_search(50'000);
  CHECK(nonexistent_conductors(v50k) == std::vector<SemiprimeCandidate>{{40921, 151, 271}});
  CHECK(nonexistent_conductors(nonexistence_search(4681)).empty());

  const auto first = evaluate_candidate({4681, 151, 31});
  CHECK(first.congruence_pass);
  CHECK_FALSE(first.nonexistent);
  CHECK(first.failing_field() == std::optional<i64>(-31));
  CHECK(first.class_data.size() == 4);
  CHECK(first.class_data[3].h_value == 3);

  const auto row = evaluate_candidate({40921, 151, 271});
  CHECK(row.nonexistent);
  REQUIRE(row.class_data.size() == 6);
  const std::array<i64, 6> radicands{151, -151, 271, -271, 40921, -40921};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(row.class_data[i].m == radicands[i]);
    CHECK_FALSE(row.class_data[i].div3);
  }
}

TEST_CASE("verdict invariants")
{
  for (const auto& v : nonexistence_search(2'000'000)) {
    bool any_div3 = false;
    for (const auto& f : v.class_data) any_div3 = any_div3 || f.div3;
    CHECK(v.nonexistent == (v.congruence_pass && !any_div3));
    if (v.class_data.size() < 6) CHECK_FALSE(v.nonexistent);
    if (v.nonexistent) {
      CHECK(diophantine::two_torsion_obstructed(v.candidate.p, v.candidate.q));
      const std::array<i64, 2> f{v.candidate.p, v.candidate.q};
      CHECK(forces_two_torsion(f));
    }
  }
}

TEST_CASE("congruences imply the obstruction congruences")
{
  std::vector<i64> ps, qs;
  for (i64 x : arith::primes_up_to(100'000)) {
    if (x % 16 == 7 && x % 15 == 1) ps.push_back(x);
    if (x % 16 == 15 && x % 15 == 1) qs.push_back(x);
  }
  std::size_t pairs = 0;
  for (i64 p : ps)
    for (i64 q : qs) {
      REQUIRE(nonexistence_congruences(p, q));
      CHECK(obstruction_congruences(p, q));
      ++pairs;
    }
  CHECK(pairs > 10'000);
}

TEST_CASE("ruled-out fixture members have factors +-1 mod 8")
{
  std::ifstream in(ECPQ_FIXTURE_DIR "/table2.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    i64 N = 0, p = 0, q = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(line);
    REQUIRE((is >> N >> c1 >> p >> c2 >> q));
    CHECK(N == p * q);
    CHECK((p % 8 == 1 || p % 8 == 7));
    CHECK((q % 8 == 1 || q % 8 == 7));
    ++rows;
  }
  CHECK(rows == 67);
}

TEST_CASE("search output is independent of the worker count")
{
  std::ostringstream one, four;
  write_verdicts_csv(one, nonexistence_search(3'000'000, 1));
  write_verdicts_csv(four, nonexistence_search(3'000'000, 4));
  CHECK(one.str() == four.str());
}

TEST_CASE("csv layouts")
{
  std::ostringstream t2;
  write_table2_csv(t2, {{40921, 151, 271}});
  CHECK(t2.str() == "N,p,q\n40921,151,271\n");
  std::ostringstream vd;
  write_verdicts_csv(vd, {evaluate_candidate({4681, 151, 31})});
  CHECK(vd.str().rfind("N,p,q,congruence_pass,failing_field,h_values\n4681,151,31,1,-31,", 0) == 0);
}
