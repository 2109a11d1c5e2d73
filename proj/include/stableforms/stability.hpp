#pragma once
#include <optional>

#include "liealg.hpp"

namespace sfc {

// Invariants of stable 3-forms in dimensions 6 and 7, all kept inside the
// exact coefficient domain.  The 6-dim endomorphism K is used wherever the
// literature phrases things through J = K/sqrt(|lambda|): scalar multiples
// have the same invariant subspaces and K^2 = lambda*Id already certifies
// J^2 = -Id (or +Id), so the square root never has to be taken.

template <class R>
struct KMatrix {
  Matrix<R> m;  // 6x6; the implicit volume factor is e^{1..6}
};

template <class R>
struct BMatrix {
  Matrix<R> m;  // 7x7 symmetric; b(e_i,e_j) = m[i][j] * e^{1..7}
  R detb;
};

enum class FormClass { Positive, Split, Degenerate };

inline const char* form_class_name(FormClass c) {
  switch (c) {
    case FormClass::Positive: return "Positive";
    case FormClass::Split: return "Split";
    default: return "Degenerate";
  }
}

// K[a][b] e^{1..6} = (iota_{e_b} rho) ^ rho ^ e^a.
template <class R>
KMatrix<R> k_matrix(const Form<R>& rho) {
  if (rho.dim() != 6) throw DimMismatch("k_matrix needs a form on 6 generators");
  if (!rho.is_zero() && (!rho.is_homogeneous() || rho.degree() != 3)) throw WrongDegree();
  unsigned full = (1u << 6) - 1;
  KMatrix<R> K{Matrix<R>(6, 6)};
  for (int b = 1; b <= 6; ++b) {
    Form<R> five = wedge(contract(Vector<R>::basis(6, b), rho), rho);
    for (int a = 1; a <= 6; ++a)
      K.m.at(a - 1, b - 1) = wedge(five, Form<R>::covector(6, a)).coeff(full);
  }
  return K;
}

// 6 lambda(rho) = trace(K^2).
template <class R>
R lambda_invariant(const Form<R>& rho) {
  Matrix<R> K = k_matrix(rho).m;
  Matrix<R> K2 = K * K;
  R tr(0);
  for (int i = 0; i < 6; ++i) tr = tr + K2.at(i, i);
  return exact_div(tr, R(6));
}

namespace detail {
template <class R>
struct FieldOf {
  using type = R;
};
template <>
struct FieldOf<PolyK> {
  using type = RatFunK;
};
}  // namespace detail

// True iff K maps span(W) into itself (equivalently: the J-endomorphism does).
template <class R>
bool is_invariant_subspace(const KMatrix<R>& K, const std::vector<Vector<R>>& W) {
  using F = typename detail::FieldOf<R>::type;
  int n = K.m.rows();
  int k = (int)W.size();
  Matrix<F> span(n, k), aug(n, 2 * k);
  for (int j = 0; j < k; ++j) {
    if (W[j].n != n) throw DimMismatch("subspace vectors have the wrong dimension");
    Vector<R> img(n);
    for (int i = 0; i < n; ++i) {
      R acc(0);
      for (int t = 0; t < n; ++t) acc = acc + K.m.at(i, t) * W[j].x[t];
      img.x[i] = acc;
    }
    for (int i = 0; i < n; ++i) {
      span.at(i, j) = F(W[j].x[i]);
      aug.at(i, j) = F(W[j].x[i]);
      aug.at(i, k + j) = F(img.x[i]);
    }
  }
  return rank(span) == rank(aug);
}

// 6 b(x,y) e^{1..7} = iota_x phi ^ iota_y phi ^ phi.
template <class R>
BMatrix<R> b_matrix(const Form<R>& phi) {
  if (phi.dim() != 7) throw DimMismatch("b_matrix needs a form on 7 generators");
  if (!phi.is_zero() && (!phi.is_homogeneous() || phi.degree() != 3)) throw WrongDegree();
  unsigned full = (1u << 7) - 1;
  std::vector<Form<R>> hooks;
  for (int i = 1; i <= 7; ++i) hooks.push_back(contract(Vector<R>::basis(7, i), phi));
  BMatrix<R> B{Matrix<R>(7, 7), R(0)};
  R sixth(exact_div(R(1), R(6)));
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      R v = sixth * wedge(wedge(hooks[i], hooks[j]), phi).coeff(full);
      B.m.at(i, j) = v;
      B.m.at(j, i) = v;
    }
  B.detb = det(B.m);
  return B;
}

inline FormClass classify_3form_7d(const FormK& phi) {
  BMatrix<ScalarK> B = b_matrix(phi);
  switch (classify_symmetric(B.m)) {
    case Definiteness::PositiveDefinite:
    case Definiteness::NegativeDefinite: return FormClass::Positive;
    case Definiteness::Indefinite: return FormClass::Split;
    default: return FormClass::Degenerate;
  }
}

// Exact rational 9th root, sign-preserving; nullopt when not a perfect power.
inline std::optional<mpq_class> rational_ninth_root(const mpq_class& q) {
  if (q == 0) return mpq_class(0);
  mpz_class num = abs(q.get_num()), den = q.get_den();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), 9)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), 9)) return std::nullopt;
  mpq_class r(rn, rd);
  r.canonicalize();
  return q < 0 ? mpq_class(-r) : r;
}

// epsilon(phi) = (det B)^{1/9}; defined here only for rational det B.
inline ScalarK epsilon_of(const FormK& phi) {
  BMatrix<ScalarK> B = b_matrix(phi);
  if (!B.detb.is_rational()) throw IrrationalNinthRoot(B.detb.str());
  auto r = rational_ninth_root(B.detb.rational_part());
  if (!r) throw IrrationalNinthRoot(B.detb.str());
  return ScalarK(*r);
}

// g = B / epsilon; orientation chosen so that the volume constant is positive.
inline Metric induced_metric(const FormK& phi) {
  BMatrix<ScalarK> B = b_matrix(phi);
  switch (classify_symmetric(B.m)) {
    case Definiteness::PositiveDefinite:
    case Definiteness::NegativeDefinite: break;
    default: throw NotPositive();
  }
  if (!B.detb.is_rational()) throw IrrationalNinthRoot(B.detb.str());
  auto r = rational_ninth_root(B.detb.rational_part());
  if (!r) throw IrrationalNinthRoot(B.detb.str());
  ScalarK eps(*r);
  ScalarK inv = eps.inverse();
  Matrix<ScalarK> g(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) g.at(i, j) = inv * B.m.at(i, j);
  return Metric(7, std::move(g), eps.is_positive() ? 1 : -1);
}

}  // namespace sfc
