#include <sstream>
#include <vector>

#include "doctest.h"
#include "ekrlab/error.hpp"
#include "ekrlab/field.hpp"
#include "ekrlab/geometry.hpp"
#include "ekrlab/matrix.hpp"
#include "ekrlab/textio.hpp"

using namespace ekrlab;

namespace {

Mat m2(const Field& F, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  Mat m;
  m.at(0, 0) = F.element(a);
  m.at(0, 1) = F.element(b);
  m.at(1, 0) = F.element(c);
  m.at(1, 1) = F.element(d);
  return m;
}

Vec v2(const Field& F, std::uint32_t x, std::uint32_t y) {
  Vec v;
  v.c[0] = F.element(x);
  v.c[1] = F.element(y);
  return v;
}

}  // namespace

TEST_CASE("field specs round-trip") {
  CHECK(format_field(Field::from_order(5)) == "GF(5)");
  CHECK(format_field(Field::from_order(9)) == "GF(3^2;1,0,1)");
  CHECK(parse_field("GF(7)").q() == 7);
  CHECK(parse_field("GF(2^3;1,0,1,1)").q() == 8);
  CHECK(parse_field(" GF( 3 ^ 2 ; 1 , 0 , 1 ) ").q() == 9);  // whitespace ignored
  Field F = parse_field("GF(2^2;1,1,1)");
  CHECK(F.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u}) {
    Field a = Field::from_order(q);
    CHECK(parse_field(format_field(a)) == a);
  }
}

TEST_CASE("field spec errors carry positions and the right code") {
  for (const char* bad : {"GF", "GF(", "GF(x)", "GF(5", "GF(5)extra", "GF(4)",
                          "GF(2^2)junk", "GF(2^2;1,1)", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_field(bad), Error);
  }
  try {
    parse_field("GF(6)");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrime);
  }
  // GF(4) without a modulus means p = 4, which is not prime.
  try {
    parse_field("GF(2^2;1,0,1)");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ReduciblePolynomial);
  }
}

TEST_CASE("vectors and matrices round-trip with whitespace tolerance") {
  Field F = Field::from_order(5);
  CHECK(format_vec(F, v2(F, 1, 4)) == "[1,4]");
  CHECK(parse_vec(F, "[1,4]") == v2(F, 1, 4));
  CHECK(parse_vec(F, " [ 1 , 4 ] ") == v2(F, 1, 4));

  Mat a = m2(F, 2, 1, 0, 1);
  CHECK(format_mat(F, a) == "[[2,1],[0,1]]");
  CHECK(parse_mat(F, "[[2,1],[0,1]]") == a);
  CHECK(parse_mat(F, "[[ 2, 1 ],\t[0, 1]]") == a);

  Field F2 = Field::from_order(2);
  Mat id3 = mat_identity(F2, 3);
  CHECK(format_mat(F2, id3) == "[[1,0,0],[0,1,0],[0,0,1]]");
  CHECK(parse_mat(F2, "[[1,0,0],[0,1,0],[0,0,1]]", 3) == id3);
}

TEST_CASE("parse errors name the offending position") {
  Field F = Field::from_order(3);
  for (const char* bad : {"", "[1]", "[1,2", "[1,2]]", "[3,0]", "[a,b]", "1,2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_vec(F, bad), Error);
  }
  try {
    parse_vec(F, "[5,0]");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("out of range") != std::string::npos);
  }
  try {
    parse_vec(F, "[1,2");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
  for (const char* bad : {"[[1,2],[0]]", "[[1,2]]", "[[1,2],[0,1]", "[[1,2],[0,1]]x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_mat(F, bad), Error);
  }
}

TEST_CASE("projective and affine line formatting") {
  Field F = Field::from_order(5);
  Plane P(F);
  CHECK(format_proj_line(F, P.proj_line_of(v2(F, 1, 4))) == "<[1,4]>");
  const AffLine& l = P.o2()[0];
  CHECK(format_aff_line(F, l) == "[0,1]+<[1,0]>");
}

TEST_CASE("matrix lists split on semicolons") {
  Field F = Field::from_order(5);
  std::vector<Mat> mats = parse_mat_list(F, "[[1,0],[0,1]];[[2,1],[0,1]]");
  REQUIRE(mats.size() == 2);
  CHECK(mats[0] == mat_identity(F, 2));
  CHECK(mats[1] == m2(F, 2, 1, 0, 1));
  // A trailing separator is tolerated; an empty item in the middle is not.
  CHECK(parse_mat_list(F, "[[1,0],[0,1]];").size() == 1);
  CHECK_THROWS_AS(parse_mat_list(F, "[[1,0],[0,1]];;[[2,1],[0,1]]"), Error);
}

TEST_CASE("matrix streams skip blanks and comments and count lines") {
  Field F = Field::from_order(5);
  std::istringstream in(
      "# running example\n"
      "[[1,0],[0,1]]\n"
      "\n"
      "  [[2,1],[0,1]]  \n"
      "# done\n");
  std::vector<Mat> mats = parse_mat_stream(F, in);
  REQUIRE(mats.size() == 2);
  CHECK(mats[1] == m2(F, 2, 1, 0, 1));

  std::istringstream bad(
      "[[1,0],[0,1]]\n"
      "[[9,0],[0,1]]\n");
  try {
    parse_mat_stream(F, bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
