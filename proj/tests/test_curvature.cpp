#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "stableforms/curvature.hpp"
#include "stableforms/parse.hpp"

using namespace sfc;

namespace {

LieAlgebra abelian7() { return LieAlgebra::parse("(0,0,0,0,0,0,0)"); }
LieAlgebra alg17f() {
  return LieAlgebra::parse("(0,0,0,0,0,0,1r6/6*12 + 1r6/6*34 + 1r6/6*56)");
}
LieAlgebra ex2() { return LieAlgebra::parse("(0,0,0,12,13,0,16+25+34)"); }

Metric identity7() { return Metric(7, Matrix<ScalarK>::identity(7)); }

Matrix<ScalarK> diag(std::vector<mpq_class> v) {
  Matrix<ScalarK> m((int)v.size(), (int)v.size());
  for (int i = 0; i < (int)v.size(); ++i) m.at(i, i) = ScalarK(v[i]);
  return m;
}

// Independent floating-point Ricci via Christoffel symbols, identity metric.
std::vector<std::vector<double>> ricci_numeric(const LieAlgebra& g) {
  int n = g.dim();
  std::vector gam(n, std::vector(n, std::vector<double>(n, 0.0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      VecK br = g.bracket(VecK::basis(n, a + 1), VecK::basis(n, b + 1));
      for (int c = 0; c < n; ++c) gam[a][b][c] = br.x[c].to_double();
    }
  std::vector G(n, std::vector(n, std::vector<double>(n, 0.0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        G[i][j][k] = 0.5 * (gam[i][j][k] - gam[j][k][i] + gam[k][i][j]);
  auto nabla = [&](int i, const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) out[k] += v[m] * G[i][m][k];
    return out;
  };
  std::vector<std::vector<double>> ric(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double acc = 0;
      for (int i = 0; i < n; ++i) {
        // <R(e_i, e_a) e_b, e_i>
        std::vector<double> eb(n, 0.0);
        eb[b] = 1.0;
        auto t1 = nabla(i, nabla(a, eb));
        auto t2 = nabla(a, nabla(i, eb));
        std::vector<double> t3(n, 0.0);
        for (int m = 0; m < n; ++m)
          if (gam[i][a][m] != 0.0) {
            auto nm = nabla(m, eb);
            for (int k = 0; k < n; ++k) t3[k] += gam[i][a][m] * nm[k];
          }
        acc += t1[i] - t2[i] - t3[i];
      }
      ric[a][b] = acc;
    }
  return ric;
}

}  // namespace

TEST_CASE("ricci tensor") {
  CHECK(ricci(abelian7(), identity7()) == Matrix<ScalarK>(7, 7));

  Matrix<ScalarK> r17 = ricci(alg17f(), identity7());
  mpq_class m12(-1, 12);
  CHECK(r17 == diag({m12, m12, m12, m12, m12, m12, mpq_class(1, 4)}));

  CHECK_THROWS_AS(ricci(LieAlgebra::parse("(0,12)"), Metric(2, Matrix<ScalarK>::identity(2))),
                  NotNilpotent);
}

TEST_CASE("ricci cross-checked against numeric christoffel oracle") {
  for (auto& g : {alg17f(), ex2()}) {
    Matrix<ScalarK> exact = ricci(g, identity7());
    auto approx = ricci_numeric(g);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        CHECK(std::abs(exact.at(i, j).to_double() - approx[i][j]) < 1e-9);
  }
}

TEST_CASE("trace identity") {
  for (auto& g : {alg17f(), ex2(), LieAlgebra::parse("(0,0,0,0,23,34,36)")}) {
    Matrix<ScalarK> ric = ricci(g, identity7());
    ScalarK tr(0);
    for (int i = 0; i < 7; ++i) tr += ric.at(i, i);
    ScalarK sum(0);
    for (int i = 1; i <= 7; ++i)
      for (int j = 1; j <= 7; ++j) {
        VecK br = g.bracket(VecK::basis(7, i), VecK::basis(7, j));
        for (int k = 0; k < 7; ++k) sum += br.x[k] * br.x[k];
      }
    CHECK(tr == ScalarK(mpq_class(-1, 4)) * sum);
  }
}

TEST_CASE("ricci conjugates under orthogonal frame changes") {
  LieAlgebra g = ex2();
  std::mt19937_64 rng(11);
  Matrix<ScalarK> S(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      ScalarK v(testutil::rand_rational(rng));
      S.at(i, j) = v;
      S.at(j, i) = -v;
    }
  Matrix<ScalarK> I = Matrix<ScalarK>::identity(7);
  Matrix<ScalarK> O = (I - S) * inverse(I + S);
  REQUIRE(O.transpose() * O == I);

  // rewrite the structure equations in the rotated coframe f^k = sum O_jk e^j
  std::vector<FormK> images;
  for (int j = 0; j < 7; ++j) {
    FormK im(7);
    for (int k = 0; k < 7; ++k)
      if (!O.at(j, k).is_zero()) im.add(1u << k, O.at(j, k));
    images.push_back(im);
  }
  std::vector<FormK> diffs;
  for (int k = 0; k < 7; ++k) {
    FormK fk(7);
    for (int j = 0; j < 7; ++j)
      if (!O.at(j, k).is_zero()) fk.add(1u << j, O.at(j, k));
    diffs.push_back(pullback(g.d(fk), images));
  }
  LieAlgebra rotated(7, std::move(diffs));

  Matrix<ScalarK> ric = ricci(g, identity7());
  Matrix<ScalarK> ric2 = ricci(rotated, identity7());
  CHECK(ric2 == O.transpose() * ric * O);
}

TEST_CASE("derivation check") {
  LieAlgebra g = alg17f();
  CHECK(is_derivation(g, Matrix<ScalarK>(7, 7)).ok);
  CHECK(!is_derivation(g, Matrix<ScalarK>::identity(7)).ok);
  mpq_class t(1, 3);
  CHECK(is_derivation(g, diag({t, t, t, t, t, t, mpq_class(2, 3)})).ok);

  auto bad = is_derivation(g, Matrix<ScalarK>::identity(7));
  bool nonzero = false;
  for (int r = 0; r < bad.defect.rows(); ++r)
    for (int c = 0; c < bad.defect.cols(); ++c)
      if (!bad.defect.at(r, c).is_zero()) nonzero = true;
  CHECK(nonzero);
}

TEST_CASE("nilsoliton detection") {
  auto rep = nilsoliton_check(alg17f(), identity7());
  REQUIRE(rep.lambda);
  CHECK(*rep.lambda == ScalarK(mpq_class(-5, 12)));
  mpq_class t(1, 3);
  CHECK(*rep.D == diag({t, t, t, t, t, t, mpq_class(2, 3)}));
  CHECK(rep.residual == Matrix<ScalarK>(21, 7));

  // scaling the metric by t^2 scales lambda by 1/t^2
  auto scaled = nilsoliton_check(alg17f(), Metric(7, ScalarK(4) * Matrix<ScalarK>::identity(7)));
  REQUIRE(scaled.lambda);
  CHECK(*scaled.lambda == ScalarK(mpq_class(-5, 48)));

  auto flat_rep = nilsoliton_check(abelian7(), identity7());
  REQUIRE(flat_rep.lambda);
  CHECK(flat_rep.lambda->is_zero());
}

TEST_CASE("contact metric check") {
  auto r = contact_check(ex2(), identity7(), VecK::basis(7, 7));
  CHECK(r.contact);
  CHECK(r.contact_metric);
  CHECK(r.scale == ScalarK(mpq_class(1, 4)));
  CHECK(r.k_contact);

  auto r17 = contact_check(alg17f(), identity7(), VecK::basis(7, 7));
  CHECK(r17.contact);
  CHECK(r17.contact_metric);
  CHECK(r17.scale == ScalarK(mpq_class(1, 24)));
  CHECK(r17.k_contact);

  auto flat_r = contact_check(abelian7(), identity7(), VecK::basis(7, 7));
  CHECK(!flat_r.contact);
  CHECK(!flat_r.contact_metric);

  VecK two(7);
  two.x[6] = ScalarK(2);
  CHECK_THROWS_AS(contact_check(ex2(), identity7(), two), NotUnit);
}

TEST_CASE("elimination scripts") {
  PolyK x = PolyK::var("x"), y = PolyK::var("y");

  auto solved = elimination_check({x - PolyK(1)},
                                  {EliminationStep::solve(0, "x"), EliminationStep::substitute("x")});
  CHECK(solved.outcome == EliminationOutcome::SolutionFound);
  CHECK(solved.bindings.at("x") == RatFunK(PolyK(1)));

  auto open = elimination_check({x * x + y * y}, {});
  CHECK(open.outcome == EliminationOutcome::Inconclusive);

  auto contra = elimination_check({x * x + PolyK(1)}, {EliminationStep::conclude(0)});
  CHECK(contra.outcome == EliminationOutcome::NoRealSolution);
  REQUIRE(contra.witness);
  CHECK(contra.witness->str() == "1 + x^2");

  // sign-normalized witness, and even-exponent products count as squares
  auto neg = elimination_check({PolyK(-2) * x * x * y * y - PolyK(2)},
                               {EliminationStep::conclude(0)});
  CHECK(neg.outcome == EliminationOutcome::NoRealSolution);
  CHECK(neg.witness->str() == "2 + 2*x^2*y^2");

  // mixed signs are not a contradiction
  auto mixed = elimination_check({x * x - PolyK(1)}, {EliminationStep::conclude(0)});
  CHECK(mixed.outcome == EliminationOutcome::Inconclusive);

  // factored shape: (y + 2)(x^2 + 3), the cofactor is discarded
  auto factored = elimination_check({(y + PolyK(2)) * (x * x + PolyK(3))},
                                    {EliminationStep::conclude(0)});
  CHECK(factored.outcome == EliminationOutcome::NoRealSolution);
  REQUIRE(factored.witness);
  CHECK(factored.witness->str() == "3 + x^2");

  // but not when the quotient of the two layers is nonconstant
  auto uneven = elimination_check({y * x * x + PolyK(3)}, {EliminationStep::conclude(0)});
  CHECK(uneven.outcome == EliminationOutcome::Inconclusive);

  CHECK_THROWS_AS(elimination_check({x * x + y}, {EliminationStep::solve(0, "x")}),
                  StepNotLinear);

  // solving y from x*y - 1 divides by x, which the system forces to vanish
  CHECK_THROWS_AS(elimination_check({x * y - PolyK(1), x}, {EliminationStep::solve(0, "y")}),
                  DenominatorVanishesOnConstraint);

  // a miniature of the real elimination: normalize, solve, substitute, conclude
  PolyK a = PolyK::var("a"), u = PolyK::var("u"), v = PolyK::var("v");
  std::vector<PolyK> sys{PolyK(2) * a - PolyK(1), u - PolyK(2) * a * v,
                         u * v + PolyK(1)};
  auto chain = elimination_check(
      sys, {EliminationStep::normalize("a", ScalarK(mpq_class(1, 2))),
            EliminationStep::solve(1, "u"), EliminationStep::substitute("u"),
            EliminationStep::conclude(2)});
  CHECK(chain.outcome == EliminationOutcome::NoRealSolution);
  CHECK(chain.witness->str() == "1 + v^2");
  CHECK(chain.trail.size() == 5);
}
