#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "towerforge/qforms.hpp"

using namespace tf;

TEST_CASE("reduce, definite") {
  // hand reduction (15,36,23) -> (15,6,2)-ish chain -> (2,2,11), disc -84
  CHECK(reduce({15, 36, 23}) == QuadForm{2, 2, 11});
  CHECK(reduce({1, 0, 105}) == QuadForm{1, 0, 105});
  CHECK(reduce({5, 4, 5}) == QuadForm{5, 4, 5});  // ambiguous, a = c
  CHECK(reduce({5, -4, 5}) == QuadForm{5, 4, 5});
  CHECK_THROWS_AS(reduce({2, 2, 22}), std::domain_error);   // imprimitive
  CHECK_THROWS_AS(reduce({1, 0, 3}), std::domain_error);    // disc -12 not fundamental
  CHECK_THROWS_AS(reduce({-1, 0, -5}), std::domain_error);  // negative definite
}

TEST_CASE("compose") {
  CHECK(compose({1, 0, 21}, {3, 0, 7}) == QuadForm{3, 0, 7});       // identity law
  CHECK(compose({2, 2, 11}, {2, 2, 11}) == QuadForm{1, 0, 21});     // ambiguous square
  CHECK(compose({3, 2, 5}, {3, 2, 5}) == QuadForm{2, 0, 7});        // disc -56 cyclic
  CHECK_THROWS_AS(compose({1, 0, 21}, {1, 0, 105}), std::invalid_argument);
}

TEST_CASE("class group of -420 (flagship)") {
  FormClassGroup G = FormClassGroup::enumerate(-420);
  CHECK(G.h() == 8);
  CHECK(G.two_sylow() == make_type({2, 2, 2}));
  CHECK(G.invariants() == make_type({2, 2, 2}));
  std::set<QuadForm> expect = {{1, 0, 105}, {3, 0, 35},  {5, 0, 21},
                               {7, 0, 15},  {2, 2, 53},  {6, 6, 19},
                               {11, 8, 11}, {10, 10, 13}};
  std::set<QuadForm> got(G.classes().begin(), G.classes().end());
  CHECK(got == expect);
  CHECK(G.ambiguous_count() == 8);
}

TEST_CASE("class group shapes") {
  CHECK(FormClassGroup::enumerate(-84).h() == 4);
  CHECK(FormClassGroup::enumerate(-84).two_sylow() == make_type({2, 2}));
  CHECK(FormClassGroup::enumerate(-276).h() == 8);
  CHECK(FormClassGroup::enumerate(-276).two_sylow() == make_type({2, 4}));
  CHECK(FormClassGroup::enumerate(-56).invariants() == make_type({4}));
  CHECK_THROWS_AS(FormClassGroup::enumerate(-12), std::domain_error);

  // two_sylow drops odd parts: h(-23) = 3
  FormClassGroup G23 = FormClassGroup::enumerate(-23);
  CHECK(G23.h() == 3);
  CHECK(G23.two_sylow() == AbelianType{});
  CHECK(G23.invariants() == make_type({3}));
}

TEST_CASE("two-primary part of invariant lists") {
  CHECK(two_primary(make_type({2, 6})) == make_type({2, 2}));
  CHECK(two_primary(make_type({3, 15})) == AbelianType{});
  CHECK(two_primary(make_type({2, 4})) == make_type({2, 4}));
}

TEST_CASE("narrow class groups of real discriminants") {
  FormClassGroup G105 = FormClassGroup::enumerate(105);
  CHECK(G105.h() == 4);  // narrow
  CHECK(G105.invariants() == make_type({2, 2}));
  CHECK(wide_h2(105) == 2);

  CHECK(FormClassGroup::enumerate(12).h() == 2);  // narrow; h(Q(sqrt 3)) = 1
  CHECK(wide_h2(12) == 1);
  CHECK(wide_h2(5) == 1);
  CHECK(wide_h2(-84) == 4);
  // disc 40: norm -1 unit, narrow = wide
  CHECK(FormClassGroup::enumerate(40).h() == 2);
  CHECK(wide_h2(40) == 2);
}

TEST_CASE("ideal classes of ramified primes") {
  FormClassGroup G = FormClassGroup::enumerate(-420);
  CHECK(G.classes()[ideal_class_of_prime(G, 2)] == QuadForm{2, 2, 53});
  CHECK(G.classes()[ideal_class_of_prime(G, 5)] == QuadForm{5, 0, 21});
  CHECK(G.classes()[ideal_class_of_prime(G, 3)] == QuadForm{3, 0, 35});
  FormClassGroup G84 = FormClassGroup::enumerate(-84);
  CHECK(G84.classes()[ideal_class_of_prime(G84, 3)] == QuadForm{3, 0, 7});
  // 13 is inert in disc -84: (-84/13) = (7/13) = -1
  CHECK_THROWS_AS(ideal_class_of_prime(G84, 13), std::domain_error);
  // 11 splits: (-84/11) = (4/11) = +1; a class is still returned
  CHECK(ideal_class_of_prime(G84, 11) < static_cast<std::size_t>(G84.h()));
}

TEST_CASE("principal representation search") {
  auto r = is_principal_rep(105, -5);
  REQUIRE(r.has_value());
  CHECK(r->first == 20);
  CHECK(r->second == 2);
  CHECK_FALSE(is_principal_rep(105, 3).has_value());
  CHECK_FALSE(is_principal_rep(105, -3).has_value());
  auto r2 = is_principal_rep(-84, 1);
  REQUIRE(r2.has_value());
  CHECK(r2->first == 2);
  CHECK(r2->second == 0);
  CHECK_THROWS_AS(is_principal_rep(105, 0), std::domain_error);
}

TEST_CASE("group axioms on a sample of definite class groups") {
  for (i64 d = -3; d > -2000; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    FormClassGroup G = FormClassGroup::enumerate(d);
    std::size_t h = static_cast<std::size_t>(G.h());
    std::size_t id = G.identity();
    // closure + commutativity on all pairs, inverses, identity
    for (std::size_t i = 0; i < h; ++i) {
      CHECK(G.mul(id, i) == i);
      CHECK(G.mul(G.inv(i), i) == id);
      for (std::size_t j = i; j < h; ++j) {
        std::size_t ij = G.mul(i, j);
        REQUIRE(ij < h);
        CHECK(ij == G.mul(j, i));
      }
    }
    // ambiguous classes count 2^(t-1)
    i64 t = static_cast<i64>(prime_disc_factorization(d).size());
    CHECK(G.ambiguous_count() == (i64(1) << (t - 1)));
    // h equals the order of the subgroup generated by all classes
    std::set<std::size_t> gen{id};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::size_t> cur(gen.begin(), gen.end());
      for (std::size_t x : cur)
        for (std::size_t g = 0; g < h; ++g)
          if (gen.insert(G.mul(x, g)).second) grew = true;
    }
    CHECK(gen.size() == h);
  }
}

TEST_CASE("associativity, sampled deterministically") {
  u64 seed = 99;
  for (i64 d : {-420, -276, -84, -56, -1155, 105, 12, 440}) {
    FormClassGroup G = FormClassGroup::enumerate(d);
    std::size_t h = static_cast<std::size_t>(G.h());
    for (int k = 0; k < 200; ++k) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::size_t a = (seed >> 20) % h;
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::size_t b = (seed >> 20) % h;
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::size_t c = (seed >> 20) % h;
      CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
    }
  }
}

TEST_CASE("ambiguous count in the narrow sense for positive discriminants") {
  for (i64 d = 5; d < 10000; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    FormClassGroup G = FormClassGroup::enumerate(d);
    i64 t = static_cast<i64>(prime_disc_factorization(d).size());
    CHECK(G.ambiguous_count() == (i64(1) << (t - 1)));
  }
}

TEST_CASE("triple discriminant two-sylow shapes") {
  // disc -4qq' of a valid triple has 2-Sylow (2, 2^n); the classes over 2
  // and q span a (2,2) subgroup
  for (auto [q, qp] : std::vector<std::pair<i64, i64>>{{3, 7}, {3, 23}, {11, 7}}) {
    FormClassGroup G = FormClassGroup::enumerate(-4 * q * qp);
    auto syl = G.two_sylow();
    REQUIRE(syl.factors.size() == 2);
    CHECK(syl.factors[0] == 2);
    std::size_t z = ideal_class_of_prime(G, 2);
    std::size_t qc = ideal_class_of_prime(G, q);
    CHECK(G.mul(z, z) == G.identity());
    CHECK(G.mul(qc, qc) == G.identity());
    CHECK(z != qc);
    CHECK(z != G.identity());
  }
}
