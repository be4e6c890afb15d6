#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towerforge/quadunits.hpp"

using namespace tf;

namespace {

// Brute-force minimal-y unit search: the independent oracle for
// fundamental_unit. Scans y upward and reports the first unit of the
// maximal order.
struct BruteUnit {
  Int x, y;
  int norm;
  bool half;
};

bool brute_at(i64 m, i64 y, BruteUnit& out) {
  i64 r;
  if (m % 4 == 1) {
    if (is_square(m * y * y - 4, &r) && (r % 2) == (y % 2)) {
      out = {Int(r), Int(y), -1, true};
      return true;
    }
    if (is_square(m * y * y + 4, &r) && (r % 2) == (y % 2)) {
      out = {Int(r), Int(y), 1, true};
      return true;
    }
  }
  if (is_square(m * y * y - 1, &r)) {
    out = {Int(r), Int(y), -1, false};
    return true;
  }
  if (is_square(m * y * y + 1, &r)) {
    out = {Int(r), Int(y), 1, false};
    return true;
  }
  return false;
}

}  // namespace

TEST_CASE("fundamental unit examples") {
  FundamentalUnit u5 = fundamental_unit(5);
  CHECK(u5.x == 1);
  CHECK(u5.y == 1);
  CHECK(u5.half);
  CHECK(u5.norm == -1);

  FundamentalUnit u3 = fundamental_unit(3);
  CHECK(u3.x == 2);
  CHECK(u3.y == 1);
  CHECK_FALSE(u3.half);
  CHECK(u3.norm == 1);

  FundamentalUnit u105 = fundamental_unit(105);
  CHECK(u105.x == 41);
  CHECK(u105.y == 4);
  CHECK_FALSE(u105.half);
  CHECK(u105.norm == 1);
  CHECK(u105.str() == "41+4*sqrt(105)");

  CHECK_THROWS_AS(fundamental_unit(12), std::domain_error);
  CHECK_THROWS_AS(fundamental_unit(1), std::domain_error);
}

TEST_CASE("unit norms") {
  CHECK(unit_norm(105) == 1);
  CHECK(unit_norm(5) == -1);
  CHECK(unit_norm(3) == 1);
  CHECK(unit_norm(2) == -1);
  CHECK(unit_norm(15) == 1);
}

TEST_CASE("fundamental unit minimality against the brute-force oracle") {
  for (i64 m = 2; m <= 120; ++m) {
    if (!is_squarefree(m) || m == 1) continue;
    FundamentalUnit u = fundamental_unit(m);
    // no unit below the reported y
    i64 uy = u.y.get_si();
    BruteUnit b;
    for (i64 y = 1; y < uy; ++y) CHECK_FALSE(brute_at(m, y, b));
    REQUIRE(brute_at(m, uy, b));
    CHECK(b.x == u.x);
    CHECK(b.norm == u.norm);
    CHECK(b.half == u.half);
    // the unit equation itself
    Int v = u.x * u.x - m * u.y * u.y;
    CHECK(v == (u.half ? 4 * u.norm : u.norm));
  }
}

TEST_CASE("pell normalization") {
  auto [t, u] = pell_plus_four(105);
  CHECK(t * t - 105 * u * u == 4);
  auto [t5, u5] = pell_plus_four(5);  // norm -1 unit gets squared
  CHECK(t5 * t5 - 5 * u5 * u5 == 4);
  CHECK(t5 == 3);
  CHECK(u5 == 1);
}

TEST_CASE("norm form solutions") {
  auto r1 = solve_norm_form(5, 21, -4);
  REQUIRE(r1.solved());
  CHECK(r1.solution->first == 4);
  CHECK(r1.solution->second == 2);

  auto r2 = solve_norm_form(1, 3, -2);
  REQUIRE(r2.solved());
  CHECK(r2.solution->first == 1);
  CHECK(r2.solution->second == 1);

  auto r3 = solve_norm_form(3, 35, 4);
  CHECK(r3.status == NormFormResult::Status::NoneCongruence);
  CHECK(r3.modulus == 5);
  CHECK(r3.certificate() == "congruence_obstruction mod 5");

  CHECK_THROWS_AS(solve_norm_form(6, 9, 1), std::domain_error);  // not coprime
  CHECK_THROWS_AS(solve_norm_form(2, 3, 0), std::domain_error);
}

TEST_CASE("norm form obstructions certify the class-group facts") {
  // q and q' classes of the (5,3,7) triple are not principal in Q(sqrt 105):
  // q x^2 - p q' y^2 = ±4 and q' x^2 - p q y^2 = ±4 are insolvable.
  for (i64 N : {4, -4}) {
    CHECK_FALSE(solve_norm_form(3, 35, N).solved());
    CHECK_FALSE(solve_norm_form(7, 15, N).solved());
  }
  // but p is: p x^2 - q q' y^2 = -4
  CHECK(solve_norm_form(5, 21, -4).solved());
}

TEST_CASE("solutions verify by substitution") {
  for (auto [a, b, N] : std::vector<std::array<i64, 3>>{
           {5, 21, -4}, {1, 3, -2}, {5, 69, -4}, {13, 77, -4}, {1, 2, -1}}) {
    auto r = solve_norm_form(a, b, N);
    REQUIRE(r.solved());
    auto [x, y] = *r.solution;
    CHECK(a * x * x - b * y * y == N);
  }
}

TEST_CASE("eta witness for the flagship triple") {
  PrimeTriple t = validate_triple(5, 3, 7);
  UnitSquareWitness w = eta_witness(t);
  CHECK(w.x == 4);
  CHECK(w.y == 2);
  CHECK(w.u == 1);
  CHECK(w.eps.norm == 1);
  // (2 sqrt5 + sqrt21)^2 = 41 + 4 sqrt105 = (82 + 8 sqrt105)/2 exactly
  Int S = 5 * w.x * w.x + 21 * w.y * w.y;
  CHECK(S == 164);
  CHECK(w.x * w.y == 8);
}

TEST_CASE("eta witness across small triples") {
  for (auto [p, q, qp] : std::vector<std::array<i64, 3>>{
           {5, 3, 7}, {5, 3, 23}, {5, 3, 47}, {13, 11, 7}, {29, 3, 31}}) {
    if (triple_defect(p, q, qp)) continue;
    PrimeTriple t = validate_triple(p, q, qp);
    UnitSquareWitness w = eta_witness(t);
    CHECK(t.p * w.x * w.x - t.q * t.qprime * w.y * w.y == -4);
    CHECK(w.u % 2 == 1);
    CHECK(w.eps.norm == 1);  // norm +1 forced by the q = 3 (mod 4) factor
  }
}
