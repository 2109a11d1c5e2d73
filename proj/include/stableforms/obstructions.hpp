#pragma once

#include <optional>
#include <random>
#include <set>

#include "stableforms/liealg.hpp"
#include "stableforms/stability.hpp"

namespace sfc {

// A finite case analysis proving that no closed 4-form kappa on g can be the
// dual of a positive 3-form: in every case (i_X i_Y kappa)^2 = 0 identically,
// which is impossible for a metric 4-form with X, Y independent.
struct ObstructionCase {
  std::vector<std::string> guards;  // parameters set to zero in this case
  VecP X, Y;
};

struct ObstructionCertificate {
  std::vector<ObstructionCase> cases;
};

struct ObstructionCaseReport {
  std::vector<std::string> guards;
  int identities = 0;  // monomial coefficients verified zero
};

struct ObstructionReport {
  std::vector<ObstructionCaseReport> cases;
  bool covered = false;
};

namespace detail {

inline FormP zero_guards(const FormP& f, const std::map<std::string, PolyK>& bind) {
  if (bind.empty()) return f;
  return f.map_coeffs<PolyK>([&](const PolyK& p) { return p.substitute_polys(bind); });
}

inline VecP zero_guards(const VecP& v, const std::map<std::string, PolyK>& bind) {
  if (bind.empty()) return v;
  VecP out(v.n);
  for (int i = 0; i < v.n; ++i) out.x[i] = v.x[i].substitute_polys(bind);
  return out;
}

inline bool vector_vanishes(const VecP& v) {
  for (auto& p : v.x)
    if (!p.is_zero()) return false;
  return true;
}

// True when every nonzero coordinate is a nonzero constant (the vector can
// never vanish) or a constant multiple of a single guard variable (the vector
// vanishes only where an earlier case applies).
inline bool vector_covered(const VecP& v, const std::set<std::string>& guard_vars) {
  bool any = false;
  for (auto& p : v.x) {
    if (p.is_zero()) continue;
    any = true;
    if (p.is_constant()) return true;
  }
  if (!any) return false;
  for (auto& p : v.x) {
    if (p.is_zero() || p.is_constant()) continue;
    if (p.terms().size() != 1) return false;
    auto& [mono, coef] = *p.terms().begin();
    (void)coef;
    if (mono.size() != 1 || mono.begin()->second != 1) return false;
    if (!guard_vars.count(mono.begin()->first)) return false;
  }
  return true;
}

}  // namespace detail

// Verify an obstruction certificate against the generic closed 4-form of g.
// Every case must kill (i_X i_Y kappa)^2 exactly; the guard-free fallback case
// must stay nonzero wherever no earlier guard applies.
inline ObstructionReport check_obs3(const LieAlgebra& g, const ObstructionCertificate& cert) {
  if (cert.cases.empty()) throw CoverageGap("certificate has no cases");
  GenericClosedForm kappa = closed_forms(g, 4);
  std::set<std::string> known(kappa.params.begin(), kappa.params.end());
  int n = g.dim();

  ObstructionReport report;
  std::set<std::string> earlier_guards;
  for (int ci = 0; ci < (int)cert.cases.size(); ++ci) {
    const ObstructionCase& c = cert.cases[ci];
    std::map<std::string, PolyK> bind;
    for (auto& guard : c.guards) {
      if (!known.count(guard)) throw Error("unknown closed-form parameter: " + guard);
      bind.emplace(guard, PolyK(0));
    }
    FormP kc = detail::zero_guards(kappa.assembled, bind);
    VecP X = detail::zero_guards(c.X, bind);
    VecP Y = detail::zero_guards(c.Y, bind);
    if (detail::vector_vanishes(X) || detail::vector_vanishes(Y))
      throw CoverageGap("case " + std::to_string(ci) + " uses an identically zero vector");

    FormP two = contract(X, contract(Y, kc));
    FormP square = wedge(two, two);
    for (unsigned w : blades(n, 4)) {
      const PolyK& coef = square.coeff(w);
      if (!coef.is_zero()) throw IdentityFails(ci, mask_word(w), coef.str());
    }
    ObstructionCaseReport cr;
    cr.guards = c.guards;
    cr.identities = (int)blades(n, 4).size();
    report.cases.push_back(cr);

    if (ci + 1 == (int)cert.cases.size()) {
      if (!c.guards.empty())
        throw CoverageGap("final case must be guard-free");
      if (!detail::vector_covered(c.X, earlier_guards) ||
          !detail::vector_covered(c.Y, earlier_guards))
        throw CoverageGap("fallback vanishing locus is not contained in the earlier guards");
      report.covered = true;
    }
    for (auto& guard : c.guards) earlier_guards.insert(guard);
  }
  return report;
}

// The unconditional block-structure argument: contract the generic closed
// 4-form along a central X, show the induced K-matrix on the quotient keeps W
// invariant, and that every admissible decomposition tau = sigma + nu ^ eta
// forces the marked coefficient of sigma to vanish. A metric 4-form cannot do
// that, since the dual of omega restricts nontrivially to any J-invariant W.
struct BlockStructureProof {
  VecK X;
  std::vector<std::pair<int, int>> zero_pattern;  // 1-based entries of K
  std::vector<int> subspace;                      // 1-based quotient basis indices spanning W
  std::string sigma_word;
};

struct BlockStructureReport {
  int pattern_entries = 0;
  bool invariant = false;
  bool obstructed = false;
};

inline BlockStructureReport check_block_structure(const LieAlgebra& g,
                                                  const BlockStructureProof& proof) {
  GenericClosedForm tau = closed_forms(g, 4);
  CentralQuotient q = quotient_by_central(g, proof.X);
  int m = q.h.dim();

  FormP hooked = contract(to_poly(proof.X), tau.assembled);
  FormP nu = PolyK(-1) * q.project(q.to_adapted(hooked));

  KMatrix<PolyK> K = k_matrix(nu);
  BlockStructureReport report;
  for (auto& [a, b] : proof.zero_pattern) {
    const PolyK& entry = K.m.at(a - 1, b - 1);
    if (!entry.is_zero()) throw PatternFails(a, b, entry.str());
    ++report.pattern_entries;
  }
  std::vector<VecP> w;
  for (int idx : proof.subspace) w.push_back(VecP::basis(m, idx));
  report.invariant = is_invariant_subspace(K, w);
  if (!report.invariant) throw PatternFails(0, 0, "W is not K-invariant");

  // eta = e^t + sum C_r e^r over the quotient directions, with eta(X) = 1
  FormP eta(g.dim());
  eta.add(1u << (q.dropped - 1), PolyK(1));
  for (int r = 1; r <= m; ++r) {
    int amb = r < q.dropped ? r : r + 1;
    eta.add(1u << (amb - 1), PolyK::var("C" + std::to_string(r)));
  }
  FormP sigma = q.project(tau.assembled - wedge(q.lift(nu), eta));
  unsigned word = 0;
  for (char ch : proof.sigma_word) word |= 1u << (ch - '1');
  const PolyK& coef = sigma.coeff(word);
  if (!coef.is_zero()) throw SigmaNonzero(coef.str());

  report.obstructed = true;
  return report;
}

// Sampling probe for the weaker contraction obstruction: look for a parameter
// point where the contracted 4-form becomes the dual pair of a negative
// (complex-type) 3-form. Finding one rules the probe out as an obstruction;
// finding none is only evidence, never a proof.
struct Obs1Report {
  int samples = 0;
  bool witness_found = false;
  std::map<std::string, ScalarK> witness;
};

inline Obs1Report obs1_probe(const LieAlgebra& g, const VecK& x, int samples,
                             unsigned long seed = 0) {
  GenericClosedForm kappa = closed_forms(g, 4);
  CentralQuotient q = quotient_by_central(g, x);
  FormP rho = q.project(q.to_adapted(contract(to_poly(x), kappa.assembled)));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  Obs1Report report;
  for (int s = 0; s < samples; ++s) {
    ++report.samples;
    std::map<std::string, ScalarK> point;
    for (auto& p : kappa.params) point.emplace(p, ScalarK(mpq_class(num(rng), den(rng))));
    FormK at = rho.map_coeffs<ScalarK>([&](const PolyK& p) { return p.eval(point); });
    if (lambda_invariant(at).is_negative()) {
      report.witness_found = true;
      report.witness = point;
      return report;
    }
  }
  return report;
}

// Best-effort certificate search following the shape of the known proofs:
// first all basis pairs, then for fixed Y the two-case split whose fallback
// combines each case's guard into X = g_i e_j - g_j e_i.
inline std::optional<ObstructionCertificate> search_obs3(const LieAlgebra& g) {
  GenericClosedForm kappa = closed_forms(g, 4);
  int n = g.dim();
  auto words = blades(n, 4);

  auto vanishes = [&](const FormP& f) {
    for (auto& [mask, coef] : f.coeffs()) {
      (void)mask;
      if (!coef.is_zero()) return false;
    }
    return true;
  };
  auto square = [&](const VecP& X, const VecP& Y, const FormP& k) {
    FormP two = contract(X, contract(Y, k));
    return wedge(two, two);
  };
  auto verified = [&](const ObstructionCertificate& cert) {
    try {
      check_obs3(g, cert);
      return true;
    } catch (const Error&) {
      return false;
    }
  };

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      ObstructionCase c{{}, VecP::basis(n, i), VecP::basis(n, j)};
      if (vanishes(square(c.X, c.Y, kappa.assembled))) {
        ObstructionCertificate cert{{c}};
        if (verified(cert)) return cert;
      }
    }

  // single-parameter guards per basis pair
  auto guard_for = [&](int i, int k) -> std::optional<std::string> {
    FormP base = square(VecP::basis(n, i), VecP::basis(n, k), kappa.assembled);
    if (vanishes(base)) return std::nullopt;
    for (auto& p : kappa.params) {
      std::map<std::string, PolyK> bind{{p, PolyK(0)}};
      if (vanishes(detail::zero_guards(base, bind))) return p;
    }
    return std::nullopt;
  };
  (void)words;

  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i) {
      if (i == k) continue;
      auto gi = guard_for(i, k);
      if (!gi) continue;
      for (int j = i + 1; j <= n; ++j) {
        if (j == k) continue;
        auto gj = guard_for(j, k);
        if (!gj || *gj == *gi) continue;
        VecP X(n);
        X.x[j - 1] = PolyK::var(*gi);
        X.x[i - 1] = PolyK(-1) * PolyK::var(*gj);
        ObstructionCertificate cert{{
            {{*gi}, VecP::basis(n, i), VecP::basis(n, k)},
            {{*gj}, VecP::basis(n, j), VecP::basis(n, k)},
            {{}, X, VecP::basis(n, k)},
        }};
        if (verified(cert)) return cert;
      }
    }
  return std::nullopt;
}

}  // namespace sfc
