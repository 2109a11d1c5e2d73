#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "stableforms/parse.hpp"

using namespace sfc;
using sfc::testutil::rand_form;

namespace {
FormK F(const std::string& s, int n = 7) { return Parser::form(s, n); }
}  // namespace

TEST_CASE("word order on basis blades") {
  // Ascending-lex on index words: 12 < 123 < 13.
  WordLess lt;
  unsigned m12 = 0b011, m123 = 0b111, m13 = 0b101;
  CHECK(lt(m12, m123));
  CHECK(lt(m123, m13));
  CHECK(lt(m12, m13));
  CHECK(!lt(m13, m123));

  FormK f = F("13 + 123 + 12");
  CHECK(f.str() == "12 + 123 + 13");
}

TEST_CASE("wedge product") {
  FormK e1 = FormK::covector(7, 1), e2 = FormK::covector(7, 2), e3 = FormK::covector(7, 3);
  CHECK(wedge(e1, e2) == F("12"));
  CHECK(wedge(e2, e1) == F("-12"));
  CHECK(wedge(wedge(e1, e2), e3) == F("123"));
  CHECK(wedge(F("13"), e2) == F("-123"));
  CHECK(wedge(F("12"), F("12")).is_zero());
  CHECK(wedge(F("12 + 34"), F("56")) == F("1256 + 3456"));

  // graded commutativity and associativity on random samples
  std::mt19937_64 rng(42);
  for (int i = 0; i < 40; ++i) {
    FormK a = rand_form(rng, 7, 2), b = rand_form(rng, 7, 3), c = rand_form(rng, 7, 1);
    CHECK(wedge(a, b) == wedge(b, a));                     // (-1)^{2*3} = +1
    CHECK(wedge(b, c) == ScalarK(-1) * wedge(c, b));       // (-1)^{3*1} = -1
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("interior product") {
  VecK x = VecK::basis(7, 1), y = VecK::basis(7, 2);
  CHECK(contract(x, F("12")) == F("2"));
  CHECK(contract(y, F("12")) == F("-1"));
  CHECK(contract(x, F("234")).is_zero());
  CHECK(contract(y, F("123")) == F("-13"));

  // antiderivation rule on random samples
  std::mt19937_64 rng(43);
  for (int i = 0; i < 40; ++i) {
    FormK a = rand_form(rng, 7, 2), b = rand_form(rng, 7, 2);
    VecK v = sfc::testutil::rand_vector(rng, 7);
    FormK lhs = contract(v, wedge(a, b));
    FormK rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b));
    CHECK(lhs == rhs);
    CHECK(contract(v, contract(v, wedge(a, b))).is_zero());
  }
}

TEST_CASE("pullback by covector images") {
  std::vector<FormK> images;
  for (int i = 1; i <= 7; ++i) images.push_back(FormK::covector(7, i));
  images[0] = F("1 + 2");  // e^1 -> e^1 + e^2
  CHECK(pullback(F("12"), images) == F("12"));
  CHECK(pullback(F("13"), images) == F("13 + 23"));

  // projection to a lower dimension: drop e^7
  std::vector<FormK> proj;
  for (int i = 1; i <= 6; ++i) proj.push_back(FormK::covector(6, i));
  proj.push_back(FormK(6));
  CHECK(pullback(F("12 + 67"), proj) == Parser::form("12", 6));
  CHECK(pullback(F("127"), proj).is_zero());
}

TEST_CASE("hodge star for the identity metric") {
  CHECK(hodge_star(F("123")) == F("4567"));
  CHECK(hodge_star(F("145")) == F("2367"));
  CHECK(hodge_star(F("1")) == F("234567"));
  CHECK(hodge_star(FormK::volume(7)) == FormK::blade(7, 0u));

  // In dimension 7, star of star is the identity in every degree.
  std::mt19937_64 rng(44);
  for (int k = 0; k <= 7; ++k) {
    FormK a = rand_form(rng, 7, k);
    CHECK(hodge_star(hodge_star(a)) == a);
  }
  // In dimension 6 it is (-1)^k on k-forms.
  for (int k = 0; k <= 6; ++k) {
    FormK a = rand_form(rng, 6, k);
    ScalarK s(k % 2 ? -1 : 1);
    CHECK(hodge_star(hodge_star(a)) == s * a);
  }
  CHECK(hodge_star(Parser::form("123", 6)) == Parser::form("456", 6));
  CHECK(hodge_star(Parser::form("456", 6)) == Parser::form("-123", 6));
}

TEST_CASE("hodge star for a diagonal metric") {
  auto g = Matrix<ScalarK>::identity(2);
  g.at(0, 0) = ScalarK(4);
  Metric m(2, g);
  CHECK(hodge_star(Parser::form("1", 2), m) == Parser::form("1/2 2", 2));
  CHECK(hodge_star(Parser::form("2", 2), m) == Parser::form("-2*1", 2));
  CHECK(hodge_star(Parser::form("12", 2), m).coeff(0u) == ScalarK(mpq_class(1, 2)));

  auto g7 = Matrix<ScalarK>::identity(1);
  g7.at(0, 0) = ScalarK(7);
  CHECK_THROWS_AS(hodge_star(Parser::form("1", 1), Metric(1, g7)), IrrationalVolume);

  // orientation reversal flips the sign
  Metric rev(7, Matrix<ScalarK>::identity(7), -1);
  CHECK(hodge_star(F("123"), rev) == F("-4567"));
}

TEST_CASE("metric dual of a vector") {
  auto g = Matrix<ScalarK>::identity(2);
  g.at(1, 1) = ScalarK(3);
  VecK x(2);
  x.x[0] = ScalarK(1);
  x.x[1] = ScalarK(2);
  CHECK(flat(x, Metric(2, g)) == Parser::form("1 + 6*2", 2));
}

TEST_CASE("canonical rendering") {
  CHECK(F("0").is_zero());
  CHECK(FormK(7).str() == "0");
  CHECK(F("-12").str() == "-12");
  CHECK(F("12 - 13").str() == "12 - 13");
  CHECK(F("1r2/2*12").str() == "1r2/2*12");
  CHECK(F("(1 + 1r2)*12 - 13").str() == "(1 + 1r2)*12 - 13");
  CHECK(F("1/5r5 123").str() == "1r5/5*123");
  CHECK(Parser::generic_form("c1234*12 - 2*c56*34", 7).str() == "c1234*12 - 2*c56*34");
  CHECK(Parser::generic_form("(c12 - c34)*56", 7).str() == "(c12 - c34)*56");

  // round-trip: parse(str(f)) == f
  std::mt19937_64 rng(45);
  for (int i = 0; i < 60; ++i) {
    FormK a = rand_form(rng, 7, 3, 5);
    CHECK(F(a.str()) == a);
  }
}

TEST_CASE("degree bookkeeping") {
  CHECK(F("12 + 34").is_homogeneous());
  CHECK(F("12 + 34").degree() == 2);
  CHECK(!F("12 + 345").is_homogeneous());
  CHECK(FormK(7).degree() == -1);
  CHECK_THROWS_AS(wedge(F("12"), Parser::form("12", 6)), DimMismatch);
}

TEST_CASE("coefficient ring converters") {
  FormK a = F("12 - 1r3*34");
  FormP p = to_poly(a);
  CHECK(p.coeff(0b1100u) == PolyK(-ScalarK::sqrt3()));
  FormR r = to_ratfun(p);
  CHECK(r.coeff(0b11u) == RatFunK(PolyK(1)));
}
