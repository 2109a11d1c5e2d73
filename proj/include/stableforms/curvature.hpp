#pragma once

#include <optional>

#include "stableforms/liealg.hpp"
#include "stableforms/ratfun.hpp"

namespace sfc {

namespace detail {

inline ScalarK inner(const std::vector<ScalarK>& x, const std::vector<ScalarK>& y,
                     const Matrix<ScalarK>& g) {
  ScalarK acc(0);
  for (int i = 0; i < (int)x.size(); ++i)
    for (int j = 0; j < (int)y.size(); ++j) acc += x[i] * g.at(i, j) * y[j];
  return acc;
}

}  // namespace detail

// Columns are a g-orthonormal frame produced by Gram-Schmidt on the standard
// basis. All required square roots must lie in the scalar field.
inline Matrix<ScalarK> orthonormal_frame(const Metric& m) {
  int n = m.n;
  if (m.is_identity()) return Matrix<ScalarK>::identity(n);
  std::vector<std::vector<ScalarK>> u;
  for (int i = 0; i < n; ++i) {
    std::vector<ScalarK> v(n, ScalarK(0));
    v[i] = ScalarK(1);
    for (auto& prev : u) {
      ScalarK proj = detail::inner(v, prev, m.g);
      for (int t = 0; t < n; ++t) v[t] = v[t] - proj * prev[t];
    }
    ScalarK norm2 = detail::inner(v, v, m.g);
    auto s = norm2.sqrt_in_field();
    if (!s || s->is_zero()) throw IrrationalGramSchmidt();
    ScalarK inv = s->inverse();
    for (auto& c : v) c = inv * c;
    u.push_back(std::move(v));
  }
  Matrix<ScalarK> frame(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) frame.at(i, j) = u[j][i];
  return frame;
}

namespace detail {

// gamma[a][b][c] = <[u_a, u_b], u_c> over the orthonormal frame
inline std::vector<std::vector<std::vector<ScalarK>>> frame_constants(const LieAlgebra& g,
                                                                      const Metric& m,
                                                                      const Matrix<ScalarK>& u) {
  int n = g.dim();
  std::vector<VecK> frame;
  for (int a = 0; a < n; ++a) {
    VecK v(n);
    for (int i = 0; i < n; ++i) v.x[i] = u.at(i, a);
    frame.push_back(v);
  }
  std::vector<std::vector<std::vector<ScalarK>>> gamma(
      n, std::vector<std::vector<ScalarK>>(n, std::vector<ScalarK>(n, ScalarK(0))));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      VecK br = g.bracket(frame[a], frame[b]);
      for (int c = 0; c < n; ++c) {
        ScalarK v = detail::inner(br.x, frame[c].x, m.g);
        gamma[a][b][c] = v;
        gamma[b][a][c] = -v;
      }
    }
  return gamma;
}

}  // namespace detail

// Ricci tensor of the left-invariant metric, expressed in the orthonormal
// frame. For a nilpotent (hence unimodular) algebra the only contributions are
//   Ric(X,Y) = -1/2 sum <[X,e_i],e_j><[Y,e_i],e_j>
//              +1/4 sum <[e_i,e_j],X><[e_i,e_j],Y>.
inline Matrix<ScalarK> ricci(const LieAlgebra& g, const Metric& m) {
  if (g.dim() != m.n) throw DimMismatch("metric dimension");
  g.nilpotency_step();  // throws NotNilpotent otherwise
  Matrix<ScalarK> u = orthonormal_frame(m);
  auto gamma = detail::frame_constants(g, m, u);
  int n = g.dim();
  Matrix<ScalarK> ric(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      ScalarK acc(0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          acc += ScalarK(mpq_class(-1, 2)) * gamma[a][i][j] * gamma[b][i][j];
          acc += ScalarK(mpq_class(1, 4)) * gamma[i][j][a] * gamma[i][j][b];
        }
      ric.at(a, b) = acc;
      ric.at(b, a) = acc;
    }
  return ric;
}

struct DerivationCheck {
  bool ok = true;
  Matrix<ScalarK> defect;  // one row per basis pair i<j
};

namespace detail {

inline DerivationCheck derivation_defect(
    const std::vector<std::vector<std::vector<ScalarK>>>& gamma, const Matrix<ScalarK>& D) {
  int n = (int)gamma.size();
  DerivationCheck r;
  r.defect = Matrix<ScalarK>(n * (n - 1) / 2, n);
  int row = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++row)
      for (int c = 0; c < n; ++c) {
        ScalarK lhs(0), rhs(0);
        for (int e = 0; e < n; ++e) {
          lhs += D.at(c, e) * gamma[a][b][e];
          rhs += D.at(e, a) * gamma[e][b][c] + D.at(e, b) * gamma[a][e][c];
        }
        ScalarK d = lhs - rhs;
        if (!d.is_zero()) r.ok = false;
        r.defect.at(row, c) = d;
      }
  return r;
}

inline std::vector<std::vector<std::vector<ScalarK>>> basis_constants(const LieAlgebra& g) {
  int n = g.dim();
  std::vector<std::vector<std::vector<ScalarK>>> gamma(
      n, std::vector<std::vector<ScalarK>>(n, std::vector<ScalarK>(n, ScalarK(0))));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      VecK br = g.bracket(VecK::basis(n, a + 1), VecK::basis(n, b + 1));
      for (int c = 0; c < n; ++c) {
        gamma[a][b][c] = br.x[c];
        gamma[b][a][c] = -br.x[c];
      }
    }
  return gamma;
}

}  // namespace detail

inline DerivationCheck is_derivation(const LieAlgebra& g, const Matrix<ScalarK>& D) {
  if (D.rows() != g.dim() || D.cols() != g.dim()) throw DimMismatch("derivation dimension");
  return detail::derivation_defect(detail::basis_constants(g), D);
}

// Ric = lambda I + D with D a derivation. Substituting D = Ric - lambda I
// turns the derivation equations into affine conditions on lambda alone: the
// first equation with a nonzero bracket component fixes lambda, the rest
// verify it.
struct NilsolitonReport {
  Matrix<ScalarK> ric;
  std::optional<ScalarK> lambda;
  std::optional<Matrix<ScalarK>> D;
  Matrix<ScalarK> residual;
};

inline NilsolitonReport nilsoliton_check(const LieAlgebra& g, const Metric& m) {
  int n = g.dim();
  NilsolitonReport report;
  report.ric = ricci(g, m);
  Matrix<ScalarK> u = orthonormal_frame(m);
  auto gamma = detail::frame_constants(g, m, u);

  // lambda * gamma^c_ab = ([Ric u_a, u_b] + [u_a, Ric u_b] - Ric[u_a, u_b])_c
  std::optional<ScalarK> lambda;
  bool consistent = true;
  for (int a = 0; a < n && consistent; ++a)
    for (int b = a + 1; b < n && consistent; ++b)
      for (int c = 0; c < n && consistent; ++c) {
        ScalarK rhs(0);
        for (int e = 0; e < n; ++e) {
          rhs += report.ric.at(e, a) * gamma[e][b][c] + report.ric.at(e, b) * gamma[a][e][c];
          rhs -= report.ric.at(c, e) * gamma[a][b][e];
        }
        const ScalarK& coef = gamma[a][b][c];
        if (coef.is_zero()) {
          if (!rhs.is_zero()) consistent = false;
        } else if (!lambda) {
          lambda = rhs * coef.inverse();
        } else if (!(*lambda * coef == rhs)) {
          consistent = false;
        }
      }
  if (consistent && !lambda) lambda = ScalarK(0);  // abelian: D = Ric = 0
  if (!consistent) {
    report.residual = Matrix<ScalarK>(n * (n - 1) / 2, n);
    return report;
  }
  Matrix<ScalarK> D = report.ric - *lambda * Matrix<ScalarK>::identity(n);
  DerivationCheck check = detail::derivation_defect(gamma, D);
  report.residual = check.defect;
  if (check.ok) {
    report.lambda = lambda;
    report.D = D;
  }
  return report;
}

// Contact-metric data for a unit Reeb candidate: eta = g(xi, .), the
// endomorphism P solving g(P., .) = 1/2 d eta, and the compression constant
// in P^2 = -scale (Id - xi eta^T). scale = 1 is the textbook normalization;
// any positive value is the same structure up to homothety.
struct ContactReport {
  FormK eta;
  VecK xi;
  FormK volume_form;  // eta ^ (d eta)^3
  bool contact = false;
  Matrix<ScalarK> endo;
  bool contact_metric = false;
  ScalarK scale{0};
  bool k_contact = false;
};

inline ContactReport contact_check(const LieAlgebra& g, const Metric& m, const VecK& xi) {
  int n = g.dim();
  if (xi.n != n || m.n != n) throw DimMismatch("contact dimensions");
  if (!(detail::inner(xi.x, xi.x, m.g) == ScalarK(1))) throw NotUnit();

  ContactReport r;
  r.xi = xi;
  r.eta = flat(xi, m);
  FormK deta = g.d(r.eta);
  r.volume_form = wedge(r.eta, wedge(deta, wedge(deta, deta)));
  r.contact = !r.volume_form.is_zero();

  Matrix<ScalarK> A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ScalarK half = ScalarK(mpq_class(1, 2)) * deta.coeff((1u << i) | (1u << j));
      A.at(i, j) = half;
      A.at(j, i) = -half;
    }
  r.endo = inverse(m.g) * A.transpose();

  // P^2 = -scale (Id - xi eta^T)
  Matrix<ScalarK> P2 = r.endo * r.endo;
  Matrix<ScalarK> ref = Matrix<ScalarK>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ref.at(i, j) = ref.at(i, j) - xi.x[i] * r.eta.coeff(1u << j);
  std::optional<ScalarK> scale;
  bool proportional = true;
  for (int i = 0; i < n && proportional; ++i)
    for (int j = 0; j < n && proportional; ++j) {
      if (ref.at(i, j).is_zero()) {
        if (!P2.at(i, j).is_zero()) proportional = false;
      } else if (!scale) {
        scale = ScalarK(-1) * P2.at(i, j) * ref.at(i, j).inverse();
      } else if (!(P2.at(i, j) == ScalarK(-1) * *scale * ref.at(i, j))) {
        proportional = false;
      }
    }
  if (proportional && scale && !scale->is_zero() && !scale->is_negative()) {
    r.contact_metric = true;
    r.scale = *scale;
  }

  // Killing check for xi: (Y,Z) -> g(nabla_Y xi, Z) must be skew, with
  // 2 g(nabla_Y X, Z) = g([Y,X],Z) - g([X,Z],Y) + g([Z,Y],X)
  Matrix<ScalarK> B(n, n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      VecK ea = VecK::basis(n, a + 1), ec = VecK::basis(n, c + 1);
      ScalarK twice = detail::inner(g.bracket(ea, xi).x, ec.x, m.g) -
                      detail::inner(g.bracket(xi, ec).x, ea.x, m.g) +
                      detail::inner(g.bracket(ec, ea).x, xi.x, m.g);
      B.at(a, c) = ScalarK(mpq_class(1, 2)) * twice;
    }
  r.k_contact = B + B.transpose() == Matrix<ScalarK>(n, n);
  return r;
}

// ---------------------------------------------------------------------------
// Scripted elimination for small polynomial systems. The checker replays an
// explicit chain of solve/substitute steps and recognizes two narrow
// contradiction shapes (see no_real_solution_witness); anything else stays
// Inconclusive rather than guessing.

struct EliminationStep {
  enum class Kind { NormalizeVariable, SolveLinear, Substitute, Conclude };
  Kind kind;
  std::string var;
  ScalarK value{0};
  int equation = -1;

  static EliminationStep normalize(std::string v, ScalarK val) {
    return {Kind::NormalizeVariable, std::move(v), std::move(val), -1};
  }
  static EliminationStep solve(int eq, std::string v) {
    return {Kind::SolveLinear, std::move(v), ScalarK(0), eq};
  }
  static EliminationStep substitute(std::string v) {
    return {Kind::Substitute, std::move(v), ScalarK(0), -1};
  }
  static EliminationStep conclude(int eq) { return {Kind::Conclude, "", ScalarK(0), eq}; }
};

enum class EliminationOutcome { NoRealSolution, Inconclusive, SolutionFound };

inline const char* elimination_outcome_name(EliminationOutcome o) {
  switch (o) {
    case EliminationOutcome::NoRealSolution: return "no real solution";
    case EliminationOutcome::Inconclusive: return "inconclusive";
    case EliminationOutcome::SolutionFound: return "solution found";
  }
  return "?";
}

struct EliminationReport {
  EliminationOutcome outcome = EliminationOutcome::Inconclusive;
  std::optional<PolyK> witness;
  std::map<std::string, RatFunK> bindings;
  std::vector<std::vector<PolyK>> trail;
};

namespace detail {

inline PolyK strip_monomial_content(const PolyK& p) {
  if (p.is_zero()) return p;
  Mono content = p.monomial_content();
  if (content.empty()) return p;
  PolyK divisor(1);
  for (auto& [v, e] : content) divisor = divisor * PolyK::var(v, e);
  auto q = PolyK::try_divide(p, divisor);
  if (!q) throw Error("monomial content does not divide");
  return *q;
}

inline bool scalar_proportional(const PolyK& a, const PolyK& b) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  std::optional<ScalarK> ratio;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    ScalarK r = ia->second * ib->second.inverse();
    if (!ratio)
      ratio = r;
    else if (!(*ratio == r))
      return false;
  }
  return true;
}

// Two contradiction shapes are recognized. Direct: every monomial exponent is
// 2, the coefficients share one sign and the constant term is nonzero (the
// whole equation is returned, normalized positive). Factored: the equation is
// C * (v^2 + q) for a single variable v and a positive constant q; the witness
// is v^2 + q and the cofactor C is discarded, exactly as the replayed
// derivation discards it.
inline std::optional<PolyK> no_real_solution_witness(const PolyK& e) {
  bool shaped = true;
  ScalarK constant(0);
  std::optional<bool> negative;
  for (auto& [mono, coef] : e.terms()) {
    for (auto& [v, k] : mono) {
      (void)v;
      if (k != 2) shaped = false;
    }
    if (mono.empty()) constant = coef;
    if (!negative)
      negative = coef.is_negative();
    else if (*negative != coef.is_negative())
      shaped = false;
  }
  if (shaped && !constant.is_zero()) {
    if (constant.is_negative()) return PolyK(-1) * e;
    return e;
  }

  std::set<std::string> vars;
  for (auto& [mono, coef] : e.terms()) {
    (void)coef;
    for (auto& [v, k] : mono) {
      (void)k;
      vars.insert(v);
    }
  }
  for (auto& v : vars) {
    PolyK C0, C2;
    bool eligible = true;
    for (auto& [mono, coef] : e.terms()) {
      auto it = mono.find(v);
      int k = it == mono.end() ? 0 : it->second;
      if (k != 0 && k != 2) {
        eligible = false;
        break;
      }
      Mono rest = mono;
      rest.erase(v);
      PolyK piece(1);
      for (auto& [u, ku] : rest) piece = piece * PolyK::var(u, ku);
      piece = coef * piece;
      if (k == 0)
        C0 = C0 + piece;
      else
        C2 = C2 + piece;
    }
    if (!eligible || C2.is_zero() || C0.is_zero()) continue;
    auto q = PolyK::try_divide(C0, C2);
    if (!q || !q->is_constant()) continue;
    ScalarK c = q->constant_value();
    if (c.is_zero() || c.is_negative()) continue;
    return PolyK::var(v, 2) + PolyK(c);
  }
  return std::nullopt;
}

}  // namespace detail

inline EliminationReport elimination_check(std::vector<PolyK> eqs,
                                           const std::vector<EliminationStep>& script) {
  EliminationReport report;
  report.trail.push_back(eqs);

  auto all_zero = [&] {
    for (auto& e : eqs)
      if (!e.is_zero()) return false;
    return true;
  };

  for (auto& step : script) {
    switch (step.kind) {
      case EliminationStep::Kind::NormalizeVariable: {
        std::map<std::string, ScalarK> bind{{step.var, step.value}};
        for (auto& e : eqs) e = e.substitute_scalars(bind);
        report.bindings[step.var] = RatFunK(PolyK(step.value));
        break;
      }
      case EliminationStep::Kind::SolveLinear: {
        if (step.equation < 0 || step.equation >= (int)eqs.size())
          throw Error("equation index out of range");
        PolyK A, B;
        for (auto& [mono, coef] : eqs[step.equation].terms()) {
          auto it = mono.find(step.var);
          int e = it == mono.end() ? 0 : it->second;
          if (e >= 2) throw StepNotLinear(step.var);
          Mono rest = mono;
          rest.erase(step.var);
          PolyK piece(1);
          for (auto& [v, k] : rest) piece = piece * PolyK::var(v, k);
          piece = coef * piece;
          if (e == 1)
            A = A + piece;
          else
            B = B + piece;
        }
        if (A.is_zero()) throw StepNotLinear(step.var);
        if (!A.is_constant())
          for (auto& e : eqs)
            if (detail::scalar_proportional(e, A))
              throw DenominatorVanishesOnConstraint(A.str());
        report.bindings[step.var] = RatFunK(PolyK(-1) * B, A);
        break;
      }
      case EliminationStep::Kind::Substitute: {
        auto it = report.bindings.find(step.var);
        if (it == report.bindings.end()) throw Error("no binding for " + step.var);
        std::map<std::string, RatFunK> bind{{step.var, it->second}};
        for (auto& e : eqs) e = detail::strip_monomial_content(substitute(e, bind).num());
        break;
      }
      case EliminationStep::Kind::Conclude: {
        if (step.equation < 0 || step.equation >= (int)eqs.size())
          throw Error("equation index out of range");
        PolyK e = detail::strip_monomial_content(eqs[step.equation]);
        if (e.is_zero()) break;
        if (auto w = detail::no_real_solution_witness(e)) {
          report.outcome = EliminationOutcome::NoRealSolution;
          report.witness = *w;
          report.trail.push_back(eqs);
          return report;
        }
        break;
      }
    }
    report.trail.push_back(eqs);
  }
  report.outcome = all_zero() ? EliminationOutcome::SolutionFound : EliminationOutcome::Inconclusive;
  return report;
}

}  // namespace sfc
