#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "stableforms/obstructions.hpp"
#include "stableforms/parse.hpp"

using namespace sfc;

namespace {
ObstructionCase pair_case(const std::string& x, const std::string& y,
                          std::vector<std::string> guards = {}) {
  return ObstructionCase{std::move(guards), Parser::vector(x, 7), Parser::vector(y, 7)};
}
}  // namespace

TEST_CASE("single pair certificates") {
  struct Entry {
    const char* eqs;
    const char* x;
    const char* y;
  };
  const Entry entries[] = {
      {"(0,0,0,0,23,34,36)", "5", "7"},       // g2
      {"(0,0,0,12,13,14,0)", "5", "6"},       // g3
      {"(0,0,0,12,14,24,0)", "5", "6"},       // g4
      {"(0,0,12,13,14,23+15,0)", "5", "6"},   // g5
      {"(0,0,0,0,0,12,14+35)", "6", "7"},     // 27A
      {"(0,0,0,0,0,12+34,15+23)", "6", "7"},  // 27B
  };
  for (auto& e : entries) {
    LieAlgebra g = LieAlgebra::parse(e.eqs);
    ObstructionCertificate cert{{pair_case(e.x, e.y)}};
    auto r = check_obs3(g, cert);
    CHECK(r.cases.size() == 1);
    CHECK(r.cases[0].identities == 35);
    CHECK(r.covered);
  }
}

TEST_CASE("case analysis certificates with guards") {
  LieAlgebra g1 = LieAlgebra::parse("(0,0,0,0,12,15,0)");
  ObstructionCertificate c1{{
      pair_case("3", "6", {"c2356"}),
      pair_case("4", "6", {"c2456"}),
      pair_case("c2356*4 - c2456*3", "6"),
  }};
  auto r1 = check_obs3(g1, c1);
  CHECK(r1.cases.size() == 3);
  CHECK(r1.covered);

  LieAlgebra g8 = LieAlgebra::parse("(0,0,12,13,14+23,34-25,0)");
  ObstructionCertificate c8{{
      pair_case("5", "6", {"c1456"}),
      pair_case("4", "6", {"c2346"}),
      pair_case("c2346*5 + c1456*4", "6"),
  }};
  auto r8 = check_obs3(g8, c8);
  CHECK(r8.cases.size() == 3);
  CHECK(r8.covered);
}

TEST_CASE("wrong pair fails with the offending coefficient") {
  // for these two algebras the pair (e5, e7) does not kill the square;
  // replacing e7 by e6 does
  for (const char* eqs : {"(0,0,12,13,14,15,0)", "(0,0,12,13,14,34-25,0)"}) {
    LieAlgebra g = LieAlgebra::parse(eqs);
    CHECK_THROWS_AS(check_obs3(g, ObstructionCertificate{{pair_case("5", "7")}}), IdentityFails);
    CHECK(check_obs3(g, ObstructionCertificate{{pair_case("5", "6")}}).covered);
  }
}

TEST_CASE("certificate validation errors") {
  LieAlgebra g1 = LieAlgebra::parse("(0,0,0,0,12,15,0)");
  CHECK_THROWS_AS(check_obs3(g1, ObstructionCertificate{}), CoverageGap);

  // final case carrying a guard leaves the generic stratum uncovered
  ObstructionCertificate guarded{{pair_case("3", "6", {"c2356"})}};
  CHECK_THROWS_AS(check_obs3(g1, guarded), CoverageGap);

  // fallback coordinates must be earlier guards: with the c2456 case dropped
  // the fallback still kills the square but no longer covers
  ObstructionCertificate stray{{
      pair_case("3", "6", {"c2356"}),
      pair_case("c2356*4 - c2456*3", "6"),
  }};
  CHECK_THROWS_AS(check_obs3(g1, stray), CoverageGap);

  ObstructionCertificate unknown{{pair_case("3", "6", {"c9999"})}};
  CHECK_THROWS_AS(check_obs3(g1, unknown), Error);

  ObstructionCertificate zeroed{{pair_case("c2356*4", "6", {"c2356"})}};
  CHECK_THROWS_AS(check_obs3(g1, zeroed), CoverageGap);
}

TEST_CASE("no basis pair obstructs an algebra with coclosed structures") {
  LieAlgebra a17 = LieAlgebra::parse("(0,0,0,0,0,0,12+34+56)");
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      ObstructionCertificate cert{
          {ObstructionCase{{}, VecP::basis(7, i), VecP::basis(7, j)}}};
      CHECK_THROWS_AS(check_obs3(a17, cert), IdentityFails);
    }
}

TEST_CASE("certificates survive re-echelonization") {
  // parameters are named by pivot word, so a scrambled spanning set of the
  // closed forms echelonizes back to the identical generic form
  LieAlgebra g1 = LieAlgebra::parse("(0,0,0,0,12,15,0)");
  GenericClosedForm k = closed_forms(g1, 4);
  CHECK(k.dimension() == 27);
  // unit-triangular mixing keeps the set a basis for any choice of rationals
  FormP scrambled(7);
  std::mt19937_64 rng(7);
  for (int i = 0; i < k.dimension(); ++i) {
    FormK mix = k.basis[i];
    if (i + 1 < k.dimension())
      mix = mix + testutil::rand_rational(rng) * k.basis[i + 1];
    scrambled = scrambled + (PolyK::var("t" + std::to_string(i)) * to_poly(mix));
  }
  GenericClosedForm again = echelonize_generic(g1, scrambled, 4);
  CHECK(again.render() == k.render());
}

TEST_CASE("block structure pipeline") {
  std::vector<std::pair<int, int>> pattern;
  for (int a = 1; a <= 2; ++a)
    for (int b = 3; b <= 6; ++b) pattern.emplace_back(a, b);
  BlockStructureProof proof{VecK::basis(7, 7), pattern, {3, 4, 5, 6}, "3456"};

  for (const char* eqs :
       {"(0,0,0,12,13-24,14+23,0)", "(0,0,0,12,14,13-24,0)", "(0,0,0,12,13+14,24,0)"}) {
    LieAlgebra g = LieAlgebra::parse(eqs);
    auto r = check_block_structure(g, proof);
    CHECK(r.pattern_entries == 8);
    CHECK(r.invariant);
    CHECK(r.obstructed);
  }

  LieAlgebra l1 = LieAlgebra::parse("(0,0,0,12,13-24,14+23,0)");
  BlockStructureProof bad = proof;
  bad.zero_pattern.emplace_back(3, 4);
  CHECK_THROWS_AS(check_block_structure(l1, bad), PatternFails);
}

TEST_CASE("sampling probe") {
  LieAlgebra ab = LieAlgebra::parse("(0,0,0,0,0,0,0)");
  auto r0 = obs1_probe(ab, VecK::basis(7, 7), 50, 1);
  CHECK(r0.witness_found);

  LieAlgebra a17 = LieAlgebra::parse("(0,0,0,0,0,0,12+34+56)");
  auto r1 = obs1_probe(a17, VecK::basis(7, 7), 200, 1);
  CHECK(r1.witness_found);

  LieAlgebra g2 = LieAlgebra::parse("(0,0,0,0,23,34,36)");
  auto r2 = obs1_probe(g2, VecK::basis(7, 7), 200, 1);
  CHECK(!r2.witness_found);
  CHECK(r2.samples == 200);

  // deterministic under the seed
  auto r3 = obs1_probe(a17, VecK::basis(7, 7), 200, 1);
  CHECK(r3.witness == r1.witness);
}

TEST_CASE("certificate search") {
  LieAlgebra g3 = LieAlgebra::parse("(0,0,0,12,13,14,0)");
  auto found = search_obs3(g3);
  REQUIRE(found);
  CHECK(check_obs3(g3, *found).covered);

  LieAlgebra g1 = LieAlgebra::parse("(0,0,0,0,12,15,0)");
  auto found1 = search_obs3(g1);
  REQUIRE(found1);
  CHECK(check_obs3(g1, *found1).covered);

  LieAlgebra a17 = LieAlgebra::parse("(0,0,0,0,0,0,12+34+56)");
  CHECK(!search_obs3(a17));
}
