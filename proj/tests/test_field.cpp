#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ekrlab/error.hpp"
#include "ekrlab/field.hpp"

using namespace ekrlab;

namespace {

// Exhaustive axiom sweep; q^3 products stay tiny at desk scale.
void check_axioms(const Field& F) {
  const auto els = F.elements();
  REQUIRE(els.size() == F.q());
  for (Fe a : els) {
    CHECK(F.add(a, F.zero()) == a);
    CHECK(F.mul(a, F.one()) == a);
    CHECK(F.add(a, F.neg(a)) == F.zero());
    if (a.idx != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
  }
  for (Fe a : els)
    for (Fe b : els) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
    }
  for (Fe a : els)
    for (Fe b : els)
      for (Fe c : els) {
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
}

}  // namespace

TEST_CASE("prime field arithmetic over GF(5)") {
  Field F = Field::from_order(5);
  CHECK(F.p() == 5);
  CHECK(F.k() == 1);
  CHECK(F.q() == 5);
  CHECK(F.add(F.element(2), F.element(4)) == F.element(1));
  CHECK(F.sub(F.element(1), F.element(3)) == F.element(3));
  CHECK(F.mul(F.element(3), F.element(4)) == F.element(2));
  CHECK(F.neg(F.element(2)) == F.element(3));
  CHECK(F.inv(F.element(3)) == F.element(2));
  CHECK(F.pow(F.element(2), 4) == F.element(1));
  CHECK(F.pow(F.element(2), -1) == F.element(3));
  CHECK(F.pow(F.element(0), 0) == F.element(1));
  CHECK(F.to_string() == "GF(5)");
  CHECK(F.modulus() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("GF(4) uses the canonical modulus and characteristic-2 rules") {
  Field F = Field::from_order(4);
  CHECK(F.p() == 2);
  CHECK(F.k() == 2);
  CHECK(F.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  // With modulus x^2 + x + 1: x * x = x + 1.
  CHECK(F.mul(F.element(2), F.element(2)) == F.element(3));
  CHECK(F.mul(F.element(2), F.element(3)) == F.one());
  for (Fe a : F.elements()) CHECK(F.add(a, a) == F.zero());
  CHECK(F.to_string() == "GF(2^2;1,1,1)");
}

TEST_CASE("default moduli are the lexicographically smallest irreducibles") {
  CHECK(Field::from_order(8).modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
  CHECK(Field::from_order(9).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(Field::from_order(16).modulus() == std::vector<std::uint32_t>{1, 0, 0, 1, 1});
  // Over GF(5): x^2 + 1 = (x - 2)(x + 2), so x^2 + x + 1 is the first irreducible.
  CHECK(Field::from_order(25).modulus() == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("from_order factors prime powers and rejects everything else") {
  Field F9 = Field::from_order(9);
  CHECK(F9.p() == 3);
  CHECK(F9.k() == 2);
  Field F49 = Field::from_order(49);
  CHECK(F49.p() == 7);
  CHECK(F49.k() == 2);
  CHECK_THROWS_WITH_AS(Field::from_order(6), doctest::Contains("not a prime power"), Error);
  CHECK_THROWS_AS(Field::from_order(12), Error);
  CHECK_THROWS_AS(Field::from_order(0), Error);
  CHECK_THROWS_AS(Field::from_order(1), Error);
  try {
    Field::from_order(10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrime);
  }
}

TEST_CASE("make validates p, the modulus, and the order bound") {
  CHECK_THROWS_AS(Field::make(4, 1), Error);   // composite p
  CHECK_THROWS_AS(Field::make(2, 0), Error);   // degree 0
  // x^2 + 1 = (x + 1)^2 over GF(2).
  try {
    Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ReduciblePolynomial);
  }
  CHECK_THROWS_AS(Field::make(2, 2, std::vector<std::uint32_t>{1, 1}), Error);     // wrong length
  CHECK_THROWS_AS(Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 2}), Error);  // not monic
  try {
    Field::from_order(32, /*q_bound=*/16);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundExceeded);
  }
  // A supplied irreducible modulus distinct from the default is accepted.
  Field F = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  CHECK(F.q() == 4);
}

TEST_CASE("element access and division guard rails") {
  Field F = Field::from_order(7);
  CHECK_THROWS_AS(F.element(7), Error);
  try {
    F.inv(F.zero());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZero);
  }
  std::vector<Fe> units = F.units();
  CHECK(units.size() == 6);
  CHECK(std::none_of(units.begin(), units.end(), [](Fe a) { return a.idx == 0; }));
}

TEST_CASE("polynomial evaluation and root extraction") {
  Field F5 = Field::from_order(5);
  // x^2 + 2x + 2 factors as (x - 1)(x - 2) over GF(5).
  std::vector<Fe> p{F5.element(2), F5.element(2), F5.element(1)};
  CHECK(F5.poly_eval(p, F5.zero()) == F5.element(2));
  CHECK(F5.poly_eval(p, F5.element(1)) == F5.zero());
  std::vector<Fe> roots = F5.poly_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == F5.element(1));
  CHECK(roots[1] == F5.element(2));

  // (x - 1)^2 reports the double root twice.
  std::vector<Fe> sq{F5.element(1), F5.element(3), F5.element(1)};
  std::vector<Fe> dbl = F5.poly_roots(sq);
  REQUIRE(dbl.size() == 2);
  CHECK(dbl[0] == F5.element(1));
  CHECK(dbl[1] == F5.element(1));

  // x^2 + 1 has no roots over GF(3).
  Field F3 = Field::from_order(3);
  CHECK(F3.poly_roots({F3.one(), F3.zero(), F3.one()}).empty());

  CHECK_THROWS_AS(F5.poly_roots({}), Error);
  CHECK_THROWS_AS(F5.poly_roots({F5.zero(), F5.zero()}), Error);

  // Constant nonzero polynomial: no roots, no error.
  CHECK(F5.poly_roots({F5.element(4)}).empty());
}

TEST_CASE("field axioms hold exhaustively at desk scale") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    CAPTURE(q);
    check_axioms(Field::from_order(q));
  }
}

TEST_CASE("units have multiplicative order dividing q - 1") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u, 13u, 16u, 25u, 27u}) {
    CAPTURE(q);
    Field F = Field::from_order(q);
    for (Fe a : F.units()) CHECK(F.pow(a, (long long)q - 1) == F.one());
  }
}

TEST_CASE("extension field copies stay usable independently") {
  Field F = Field::from_order(9);
  Field copy = F;
  CHECK(copy == F);
  CHECK(copy.mul(copy.element(5), copy.element(7)) == F.mul(F.element(5), F.element(7)));
}
