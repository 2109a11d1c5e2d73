#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "stableforms/stability.hpp"

using namespace sfc;
using sfc::testutil::rand_form;
using sfc::testutil::rand_rational;

namespace {
FormK phi_standard() {
  return Parser::form("127 + 347 + 567 + 135 - 146 - 236 - 245", 7);
}
FormK phi_split() {
  return Parser::form("-127 + 347 + 567 + 135 - 146 - 236 - 245", 7);
}
}  // namespace

TEST_CASE("six dimensional normal forms") {
  FormK plus = Parser::form("123 + 456", 6);
  auto K = k_matrix(plus);
  ScalarK lam = lambda_invariant(plus);
  CHECK(lam == ScalarK(1));
  CHECK(K.m * K.m == lam * Matrix<ScalarK>::identity(6));
  CHECK(lam.is_positive());

  FormK minus = Parser::form("-246 + 136 + 145 + 235", 6);
  auto Km = k_matrix(minus);
  ScalarK lm = lambda_invariant(minus);
  CHECK(lm == ScalarK(-4));
  CHECK(Km.m * Km.m == lm * Matrix<ScalarK>::identity(6));
  CHECK(lm.is_negative());

  CHECK(k_matrix(Parser::form("123", 6)).m.is_zero());
  CHECK_THROWS_AS(k_matrix(Parser::form("123", 7)), DimMismatch);
  CHECK_THROWS_AS(k_matrix(Parser::form("12", 6)), WrongDegree);
}

TEST_CASE("lambda is even in rho") {
  std::mt19937_64 rng(314);
  for (int i = 0; i < 100; ++i) {
    FormK rho = rand_form(rng, 6, 3, 6);
    CHECK(lambda_invariant(rho) == lambda_invariant(ScalarK(-1) * rho));
  }
}

TEST_CASE("invariant subspaces through K") {
  KMatrix<ScalarK> id{Matrix<ScalarK>::identity(6)};
  std::vector<VecK> W = {VecK::basis(6, 3), VecK::basis(6, 4), VecK::basis(6, 5),
                         VecK::basis(6, 6)};
  CHECK(is_invariant_subspace(id, W));

  // swap e1 <-> e3: span{e3..e6} picks up an e1 component
  KMatrix<ScalarK> swap{Matrix<ScalarK>::identity(6)};
  swap.m.at(0, 0) = ScalarK(0);
  swap.m.at(2, 2) = ScalarK(0);
  swap.m.at(0, 2) = ScalarK(1);
  swap.m.at(2, 0) = ScalarK(1);
  CHECK(!is_invariant_subspace(swap, W));

  // block-triangular zero pattern: rows 1,2 vanish on columns 3..6
  KMatrix<ScalarK> block{Matrix<ScalarK>(6, 6)};
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (!(i < 2 && j >= 2)) block.m.at(i, j) = ScalarK(rand_rational(rng));
  CHECK(is_invariant_subspace(block, W));

  // same criterion over polynomial entries
  KMatrix<PolyK> gen{Matrix<PolyK>(6, 6)};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (!(i < 2 && j >= 2)) gen.m.at(i, j) = PolyK::var("k" + std::to_string(10 * i + j));
  std::vector<VecP> Wp;
  for (int i = 3; i <= 6; ++i) Wp.push_back(VecP::basis(6, i));
  CHECK(is_invariant_subspace(gen, Wp));
  gen.m.at(0, 4) = PolyK::var("bad");
  CHECK(!is_invariant_subspace(gen, Wp));
}

TEST_CASE("seven dimensional bilinear form") {
  auto B = b_matrix(phi_standard());
  CHECK(B.m == Matrix<ScalarK>::identity(7));
  CHECK(B.detb == ScalarK(1));
  CHECK(classify_3form_7d(phi_standard()) == FormClass::Positive);

  CHECK(classify_3form_7d(Parser::form("123", 7)) == FormClass::Degenerate);
  CHECK(b_matrix(Parser::form("123", 7)).detb == ScalarK(0));

  CHECK(classify_3form_7d(phi_split()) == FormClass::Split);
  auto Bs = b_matrix(phi_split());
  CHECK(classify_symmetric(Bs.m) == Definiteness::Indefinite);

  CHECK_THROWS_AS(b_matrix(Parser::form("123", 6)), DimMismatch);
  CHECK_THROWS_AS(b_matrix(Parser::form("1234", 7)), WrongDegree);
}

TEST_CASE("induced metric") {
  Metric m = induced_metric(phi_standard());
  CHECK(m.is_identity());
  CHECK(epsilon_of(phi_standard()) == ScalarK(1));

  // -phi gives the same metric with the opposite orientation
  Metric mneg = induced_metric(ScalarK(-1) * phi_standard());
  CHECK(mneg.g == Matrix<ScalarK>::identity(7));
  CHECK(mneg.orientation == -1);
  CHECK(classify_3form_7d(ScalarK(-1) * phi_standard()) == FormClass::Positive);

  // cubic homogeneity: g_{8 phi} = 4 g_phi
  Metric m8 = induced_metric(ScalarK(8) * phi_standard());
  CHECK(m8.g == ScalarK(4) * Matrix<ScalarK>::identity(7));
  CHECK(epsilon_of(ScalarK(8) * phi_standard()) == ScalarK(128));

  CHECK_THROWS_AS(induced_metric(ScalarK(2) * phi_standard()), IrrationalNinthRoot);
  CHECK_THROWS_AS(induced_metric(phi_split()), NotPositive);
  CHECK_THROWS_AS(induced_metric(Parser::form("123", 7)), NotPositive);
}

TEST_CASE("transformation law of B") {
  std::mt19937_64 rng(1618);
  FormK phi = phi_standard();
  auto B = b_matrix(phi);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<ScalarK> A(7, 7);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) A.at(i, j) = ScalarK(rand_rational(rng, 3));
    std::vector<FormK> images;
    for (int i = 0; i < 7; ++i) {
      FormK im(7);
      for (int j = 0; j < 7; ++j) im = im + A.at(i, j) * FormK::covector(7, j + 1);
      images.push_back(im);
    }
    auto Bp = b_matrix(pullback(phi, images));
    CHECK(Bp.m == det(A) * (A.transpose() * B.m * A));
  }
}
