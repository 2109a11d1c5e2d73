#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "stableforms/ratfun.hpp"

using namespace sfc;

namespace {
PolyK x() { return PolyK::var("x"); }
PolyK y() { return PolyK::var("y"); }
}  // namespace

TEST_CASE("polynomial ring operations") {
  PolyK p = x() * x() - PolyK(1);
  PolyK q = x() + PolyK(1);
  CHECK(p + q == x() * x() + x());
  CHECK(q * (x() - PolyK(1)) == p);
  CHECK((p - p).is_zero());
  CHECK(p.degree_in("x") == 2);
  CHECK(p.degree_in("y") == 0);

  PolyK r = ScalarK::sqrt2() * x() * y() + PolyK(3);
  CHECK(r.coeff_of("x", 1) == ScalarK::sqrt2() * y());
  CHECK(r.coeff_of("x", 0) == PolyK(3));
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(11);
  PolyK p = x() * x() * y() - ScalarK::sqrt3() * y() + PolyK(7);
  PolyK q = x() + y() * y();
  for (int i = 0; i < 100; ++i) {
    std::map<std::string, ScalarK> at{{"x", testutil::rand_scalar(rng)},
                                      {"y", testutil::rand_scalar(rng)}};
    CHECK((p * q).eval(at) == p.eval(at) * q.eval(at));
    CHECK((p + q).eval(at) == p.eval(at) + q.eval(at));
  }
  CHECK_THROWS_AS(p.eval({{"x", ScalarK(1)}}), Error);
}

TEST_CASE("substitution") {
  PolyK p = x() * x() + y();
  PolyK s = p.substitute_scalars({{"x", ScalarK::sqrt2()}});
  CHECK(s == y() + PolyK(2));
  PolyK t = p.substitute_polys({{"y", x() * x()}});
  CHECK(t == ScalarK(2) * x() * x());
}

TEST_CASE("exact division") {
  PolyK p = x() * x() - y() * y();
  auto q = PolyK::try_divide(p, x() - y());
  REQUIRE(q);
  CHECK(*q == x() + y());
  CHECK(!PolyK::try_divide(p, x() + PolyK(1)));
  auto c = PolyK::try_divide(ScalarK(6) * x(), PolyK(2));
  REQUIRE(c);
  CHECK(*c == ScalarK(3) * x());

  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    PolyK a = testutil::rand_scalar(rng) * x() * x() + testutil::rand_scalar(rng) * y() + PolyK(1);
    PolyK b = x() + testutil::rand_scalar(rng) * y();
    auto d = PolyK::try_divide(a * b, b);
    REQUIRE(d);
    CHECK(*d == a);
  }
}

TEST_CASE("monomial content") {
  PolyK p = x() * x() * y() + ScalarK(2) * x() * y() * y();
  Mono m = p.monomial_content();
  Mono want{{"x", 1}, {"y", 1}};
  CHECK(m == want);
}

TEST_CASE("rational function normalization") {
  RatFunK f(x() * x() - PolyK(1), x() + PolyK(1));
  CHECK(f.is_poly());
  CHECK(f.num() == x() - PolyK(1));

  RatFunK g(x(), x() * y());
  CHECK(g.num() == PolyK(1));
  CHECK(g.den() == y());

  // denominator made monic in the grlex-leading coefficient
  RatFunK h(PolyK(1), ScalarK(2) * x() + PolyK(2));
  CHECK(h.den() == x() + PolyK(1));
  CHECK(h.num() == PolyK(mpq_class(1, 2)));

  CHECK_THROWS_AS(RatFunK(PolyK(1), PolyK(0)), DivisionByZero);

  RatFunK a(PolyK(1), x());
  RatFunK b(PolyK(1), y());
  RatFunK s = a + b;
  CHECK(s.num() == x() + y());
  CHECK(s.den() == x() * y());
  CHECK(a * a.inverse() == RatFunK(PolyK(1)));
  CHECK(a / a == RatFunK(PolyK(1)));
}

TEST_CASE("substitute rational functions into a polynomial") {
  PolyK p = x() * x() + y();
  std::map<std::string, RatFunK> at{{"x", RatFunK(PolyK(1), y())}};
  RatFunK r = substitute(p, at);
  CHECK(r == RatFunK(PolyK(1) + y() * y() * y(), y() * y()));
}
