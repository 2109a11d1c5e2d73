#pragma once
#include "stability.hpp"

namespace sfc {

// G2-structure on a 7-dim algebra: positive 3-form, its exact induced metric
// and the dual 4-form. Construction fails unless everything stays exact.
struct G2Structure {
  LieAlgebra algebra;
  FormK phi;
  Metric g;
  FormK Phi;  // star_g phi
};

inline G2Structure make_g2(const LieAlgebra& a, const FormK& phi) {
  if (a.dim() != 7) throw DimMismatch("G2 structures live on 7-dim algebras");
  if (phi.dim() != 7) throw DimMismatch("3-form dimension");
  if (classify_3form_7d(phi) != FormClass::Positive) throw NotPositive();
  Metric g = induced_metric(phi);
  FormK Phi = hodge_star(phi, g);
  // dual-pairing sanity: Phi ^ phi = 7 eps(phi) vol
  FormK pair = wedge(Phi, phi);
  if (pair.coeff((1u << 7) - 1) != ScalarK(7) * epsilon_of(phi))
    throw InvariantViolation("Phi ^ phi != 7 eps vol");
  return {a, phi, g, Phi};
}

struct G2Report {
  bool positive = false;
  bool closed = false;
  bool coclosed = false;
  std::optional<Metric> metric;
  std::optional<FormK> Phi;
};

inline G2Report verify_g2(const LieAlgebra& a, const FormK& phi) {
  if (a.dim() != 7 || phi.dim() != 7) throw DimMismatch("verify_g2 needs dimension 7");
  G2Report r;
  r.closed = a.d(phi).is_zero();
  r.positive = classify_3form_7d(phi) == FormClass::Positive;
  if (!r.positive) return r;
  Metric g = induced_metric(phi);
  r.metric = g;
  FormK Phi = hodge_star(phi, g);
  r.coclosed = a.d(Phi).is_zero();
  r.Phi = std::move(Phi);
  return r;
}

// SU(3)-structure data (omega, psi_-) on a 6-dim algebra, with the derived
// pieces. h is the metric omega(., J .); when sqrt(-lambda) lies in the
// coefficient field it is normalized, otherwise the conformal representative
// Omega*K is kept (3-form Hodge duals and definiteness are scale-invariant).
struct SU3Structure {
  LieAlgebra algebra;
  FormK omega;
  FormK psi_minus;
  FormK psi_plus;  // sign fixed so that psi+ ^ psi- = (2/3) omega^3
  Metric h;
  ScalarK lambda;
  FormK sigma;  // 1/2 omega^2
};

inline Matrix<ScalarK> omega_matrix(const FormK& omega) {
  Matrix<ScalarK> m(6, 6);
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      ScalarK v = omega.coeff((1u << (i - 1)) | (1u << (j - 1)));
      m.at(i - 1, j - 1) = v;
      m.at(j - 1, i - 1) = -v;
    }
  return m;
}

inline SU3Structure make_su3(const LieAlgebra& a, const FormK& omega, const FormK& psi_minus) {
  if (a.dim() != 6) throw DimMismatch("SU(3) structures live on 6-dim algebras");
  if (omega.dim() != 6 || psi_minus.dim() != 6) throw DimMismatch("form dimension");
  if (!omega.is_zero() && omega.degree() != 2) throw WrongDegree();
  ScalarK lambda = lambda_invariant(psi_minus);
  if (!lambda.is_negative()) throw NotPositive();
  Matrix<ScalarK> M = omega_matrix(omega) * k_matrix(psi_minus).m;
  auto s = (-lambda).sqrt_in_field();
  Matrix<ScalarK> hm = M;
  if (s) {
    ScalarK inv = s->inverse();
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) hm.at(i, j) = inv * hm.at(i, j);
  }
  Metric h(6, std::move(hm));
  SU3Structure S{a, omega, psi_minus, FormK(6), h, lambda, FormK(6)};
  S.psi_plus = ScalarK(-1) * hodge_star(psi_minus, h);
  S.sigma = ScalarK(mpq_class(1, 2)) * wedge(omega, omega);
  return S;
}

struct SU3Report {
  bool stable_pair = false;    // omega^3 != 0 and lambda(psi_-) < 0
  bool orthogonality = false;  // omega ^ psi_- = 0
  bool normalization = false;  // psi_+ ^ psi_- = (2/3) omega^3
  bool h_definite = false;     // h symmetric positive definite
  bool all() const { return stable_pair && orthogonality && normalization && h_definite; }
};

inline SU3Report verify_su3(const SU3Structure& S) {
  SU3Report r;
  FormK w3 = wedge(wedge(S.omega, S.omega), S.omega);
  r.stable_pair = !w3.is_zero() && lambda_invariant(S.psi_minus).is_negative();
  r.orthogonality = wedge(S.omega, S.psi_minus).is_zero();
  r.normalization = wedge(S.psi_plus, S.psi_minus) == ScalarK(mpq_class(2, 3)) * w3;
  r.h_definite = S.h.g.is_symmetric() &&
                 classify_symmetric(S.h.g) == Definiteness::PositiveDefinite;
  return r;
}

// Reduction along a central direction of unit length; the complement of
// span(X) is identified with the quotient through the g-orthogonal splitting.
inline SU3Structure su3_reduce(const G2Structure& G, const VecK& x_in) {
  int n = 7;
  if (x_in.n != n) throw DimMismatch("vector dimension");
  if (x_in.is_zero()) throw ZeroVector();
  if (!G.algebra.is_central(x_in)) throw NotCentral();
  ScalarK norm2(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm2 += x_in.x[i] * G.g.g.at(i, j) * x_in.x[j];
  auto s = norm2.sqrt_in_field();
  if (!s || s->is_zero()) throw NotUnit();
  VecK x(n);
  ScalarK sinv = s->inverse();
  for (int i = 0; i < n; ++i) x.x[i] = sinv * x_in.x[i];

  // g-orthogonal complement of X (kernel of the covector g(X, .))
  Matrix<ScalarK> row(1, n);
  for (int j = 0; j < n; ++j) {
    ScalarK acc(0);
    for (int i = 0; i < n; ++i) acc += x.x[i] * G.g.g.at(i, j);
    row.at(0, j) = acc;
  }
  auto comp = kernel_basis(row);
  if ((int)comp.size() != n - 1) throw InvariantViolation("orthogonal complement dimension");
  Matrix<ScalarK> w(n, n);
  for (int j = 0; j < n - 1; ++j)
    for (int i = 0; i < n; ++i) w.at(i, j) = comp[j][i];
  for (int i = 0; i < n; ++i) w.at(i, n - 1) = x.x[i];
  // orient the adapted frame [complement..., X] positively; otherwise the
  // induced pair would compute the metric with a flipped sign
  ScalarK orient = ScalarK(G.g.orientation) * det(w);
  if (orient.is_negative())
    for (int i = 0; i < n; ++i) w.at(i, n - 2) = -w.at(i, n - 2);
  CentralQuotient q = quotient_with_frame(G.algebra, w, n);

  FormK omega = q.project(q.to_adapted(contract(x, G.phi)));
  FormK psim = q.project(q.to_adapted(ScalarK(-1) * contract(x, G.Phi)));
  SU3Structure S = make_su3(q.h, omega, psim);

  // the quotient Gram matrix must equal h (when h is normalized)
  if ((-S.lambda).sqrt_in_field()) {
    Matrix<ScalarK> gram(6, 6);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        ScalarK acc(0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) acc += w.at(i, a) * G.g.g.at(i, j) * w.at(j, b);
        gram.at(a, b) = acc;
      }
    if (!(gram == S.h.g)) throw InvariantViolation("quotient metric differs from omega(., J .)");
  }

  if (G.algebra.d(G.Phi).is_zero()) {
    if (!q.h.d(S.psi_minus).is_zero()) throw InvariantViolation("psi_- is not closed");
    FormK lhs = q.adapted.d(q.lift(S.sigma));
    FormK rhs = wedge(q.lift(S.psi_minus), q.adapted.d_generator(q.dropped));
    if (!(lhs == rhs)) throw InvariantViolation("d sigma != psi_- ^ d eta");
  }
  return S;
}

inline bool is_half_flat(const SU3Structure& S) {
  return S.algebra.d(wedge(S.omega, S.omega)).is_zero() && S.algebra.d(S.psi_minus).is_zero();
}

template <class R>
Form<R> embed_in_line_extension(const Form<R>& a) {
  Form<R> r(a.dim() + 1);
  for (auto& [m, v] : a.coeffs()) r.add(m, v);
  return r;
}

// Build the coclosed structure phi = psi_+ + omega ^ e7 on algebra + R,
// whose dual is 1/2 omega^2 + psi_- ^ e7.
inline G2Structure coclosed_from_half_flat(const SU3Structure& S) {
  if (!is_half_flat(S)) throw NotHalfFlat();
  LieAlgebra a7 = direct_sum_with_line(S.algebra);
  FormK e7 = FormK::covector(7, 7);
  FormK phi = embed_in_line_extension(S.psi_plus) + wedge(embed_in_line_extension(S.omega), e7);
  FormK Phi_split = ScalarK(mpq_class(1, 2)) * wedge(embed_in_line_extension(S.omega),
                                                     embed_in_line_extension(S.omega)) +
                    wedge(embed_in_line_extension(S.psi_minus), e7);
  G2Structure G = make_g2(a7, phi);
  if (!(G.Phi == Phi_split)) throw InvariantViolation("star phi != 1/2 omega^2 + psi_- ^ e7");
  if (!a7.d(G.Phi).is_zero()) throw InvariantViolation("lifted structure is not coclosed");
  return G;
}

struct BryantForms {
  FormP phi;
  FormP star;
};

// One-parameter family through phi0 (identity metric): contraction-quadratic
// deformation by a covector alpha and a scale a, together with its dual.
inline BryantForms bryant_family(const G2Structure& G, const PolyK& a, const VecP& alpha) {
  if (!G.g.is_identity()) throw NonIdentityMetric();
  if (alpha.n != 7) throw DimMismatch("alpha must have 7 coordinates");
  FormP phi0 = to_poly(G.phi);
  FormP star0 = to_poly(G.Phi);
  FormP alpha1(7);
  PolyK norm2(0);
  for (int j = 0; j < 7; ++j) {
    alpha1.add(1u << j, alpha.x[j]);
    norm2 += alpha.x[j] * alpha.x[j];
  }
  PolyK scale = a * a - norm2;
  FormP quad(7);  // sum_{j,k} alpha_j alpha_k e^j ^ iota_{e_k} phi0
  for (int j = 1; j <= 7; ++j) {
    if (alpha.x[j - 1].is_zero()) continue;
    for (int k = 1; k <= 7; ++k) {
      if (alpha.x[k - 1].is_zero()) continue;
      PolyK c = alpha.x[j - 1] * alpha.x[k - 1];
      quad = quad + c * wedge(FormP::covector(7, j), contract(VecP::basis(7, k), phi0));
    }
  }
  FormP awedge = wedge(alpha1, phi0);
  BryantForms out;
  out.phi = scale * phi0 + (PolyK(2) * a) * hodge_star(awedge) + quad;
  out.star = scale * star0 + (PolyK(2) * a) * awedge + hodge_star(quad);
  return out;
}

}  // namespace sfc
