#pragma once
#include <optional>
#include <string>
#include <vector>

#include "parse.hpp"

namespace sfc {

template <class R>
Form<R> embed_scalar_form(const FormK& f) {
  return f.template map_coeffs<R>([](const ScalarK& s) { return R(s); });
}

// Lie algebra presented by its Chevalley-Eilenberg structure equations:
// diff[i] is the 2-form d e^{i+1}. Sign convention: the printed notation
// (..., 23, ...) means d e^k = e^23 literally; structure constants then
// satisfy d e^k = -sum_{i<j} c^k_{ij} e^{ij} and [e_i,e_j] = sum_k c^k_{ij} e_k.
class LieAlgebra {
 public:
  LieAlgebra() : n_(0) {}
  LieAlgebra(int n, std::vector<FormK> diffs) : n_(n), diff_(std::move(diffs)) {
    if ((int)diff_.size() != n_) throw DimMismatch("one differential per generator");
    for (auto& f : diff_)
      if (!f.is_zero() && f.degree() != 2) throw WrongDegree("structure equations must be 2-forms");
  }
  static LieAlgebra parse(std::string_view text) {
    auto d = Parser::structure_equations(text);
    int n = (int)d.size();
    return LieAlgebra(n, std::move(d));
  }

  int dim() const { return n_; }
  const FormK& d_generator(int i) const { return diff_[i - 1]; }
  const std::vector<FormK>& diffs() const { return diff_; }
  std::string str() const { return print_structure_equations(diff_); }

  // Structure constant c^k_{ij} for i < j (antisymmetric in i,j).
  ScalarK c(int k, int i, int j) const {
    if (i == j) return ScalarK(0);
    int s = 1;
    if (i > j) {
      std::swap(i, j);
      s = -1;
    }
    ScalarK v = -diff_[k - 1].coeff((1u << (i - 1)) | (1u << (j - 1)));
    return s > 0 ? v : -v;
  }

  VecK bracket(int i, int j) const {
    VecK v(n_);
    for (int k = 1; k <= n_; ++k) v.x[k - 1] = c(k, i, j);
    return v;
  }
  VecK bracket(const VecK& a, const VecK& b) const {
    VecK v(n_);
    for (int i = 1; i <= n_; ++i) {
      if (a.x[i - 1].is_zero()) continue;
      for (int j = 1; j <= n_; ++j) {
        if (b.x[j - 1].is_zero() || i == j) continue;
        ScalarK f = a.x[i - 1] * b.x[j - 1];
        for (int k = 1; k <= n_; ++k) v.x[k - 1] += f * c(k, i, j);
      }
    }
    return v;
  }

  // Chevalley-Eilenberg differential, extended as a degree +1 antiderivation:
  // d e^I = sum over positions j of (-1)^{j-1} (d e^{i_j}) ^ e^{I minus i_j}.
  template <class R>
  Form<R> d(const Form<R>& a) const {
    if (a.dim() != n_) throw DimMismatch("form does not live on this algebra");
    Form<R> r(n_);
    for (auto& [mask, v] : a.coeffs()) {
      int pos = 0;
      for (unsigned t = mask; t; t &= t - 1) {
        int i = __builtin_ctz(t) + 1;
        if (!diff_[i - 1].is_zero()) {
          Form<R> piece = wedge(embed_scalar_form<R>(diff_[i - 1]),
                                Form<R>::blade(n_, mask & ~(1u << (i - 1))));
          R f = pos % 2 ? R(0) - v : v;
          r = r + (f * piece);
        }
        ++pos;
      }
    }
    return r;
  }

  // d^2 = 0 on generators (equivalent to Jacobi). Returns offending indices.
  std::vector<int> jacobi_defects() const {
    std::vector<int> bad;
    for (int i = 1; i <= n_; ++i)
      if (!d(diff_[i - 1]).is_zero()) bad.push_back(i);
    return bad;
  }
  bool jacobi_ok() const { return jacobi_defects().empty(); }

  // Basis of the center: kernel of x -> ad_x.
  std::vector<VecK> center() const {
    Matrix<ScalarK> m(n_ * n_, n_);
    for (int j = 1; j <= n_; ++j)
      for (int k = 1; k <= n_; ++k)
        for (int i = 1; i <= n_; ++i) m.at((j - 1) * n_ + (k - 1), i - 1) = c(k, i, j);
    auto rows = kernel_basis(m);
    std::vector<VecK> out;
    for (auto& r : rows) {
      VecK v(n_);
      v.x = r;
      out.push_back(std::move(v));
    }
    return out;
  }
  bool is_central(const VecK& x) const {
    for (int i = 1; i <= n_; ++i)
      if (!bracket(VecK::basis(n_, i), x).is_zero()) return false;
    return true;
  }

  // Smallest s with C^s = 0 for the lower central series C^1 = [g,g],
  // C^{m+1} = [g, C^m]; the abelian algebra has step 1.
  int nilpotency_step() const {
    std::vector<VecK> current;
    for (int i = 1; i <= n_; ++i) current.push_back(VecK::basis(n_, i));
    for (int s = 1; s <= n_ + 1; ++s) {
      std::vector<VecK> next;
      for (int i = 1; i <= n_; ++i)
        for (auto& v : current) {
          VecK b = bracket(VecK::basis(n_, i), v);
          if (!b.is_zero()) next.push_back(b);
        }
      if (next.empty()) return s;
      Matrix<ScalarK> m(next.size(), n_);
      for (int r = 0; r < (int)next.size(); ++r)
        for (int j = 0; j < n_; ++j) m.at(r, j) = next[r].x[j];
      int rk = (int)rref(m).size();
      std::vector<VecK> reduced;
      for (int r = 0; r < rk; ++r) {
        VecK v(n_);
        for (int j = 0; j < n_; ++j) v.x[j] = m.at(r, j);
        reduced.push_back(std::move(v));
      }
      current = std::move(reduced);
    }
    throw NotNilpotent();
  }

  // Index of a basis vector spanning a direct abelian factor: d e^t = 0 and
  // e^t absent from every structure equation. Sufficient witness for
  // decomposability of the basis-aligned catalog presentations.
  std::optional<int> direct_abelian_factor() const {
    for (int t = 1; t <= n_; ++t) {
      if (!diff_[t - 1].is_zero()) continue;
      bool used = false;
      for (auto& f : diff_)
        for (auto& [m, v] : f.coeffs())
          if (m & (1u << (t - 1))) used = true;
      if (!used) return t;
    }
    return std::nullopt;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.n_ == b.n_ && a.diff_ == b.diff_;
  }

 private:
  int n_;
  std::vector<FormK> diff_;
};

// Quotient by a central vector, with the projection data needed to move forms
// between the algebra and the quotient. The dropped coordinate is the last
// nonzero coordinate of X; for non-basis X the frame is first adapted so that
// X becomes a frame vector.
struct CentralQuotient {
  LieAlgebra h;            // dimension n-1
  int dropped;             // 1-based index of the killed coordinate (post-adaptation)
  LieAlgebra adapted;      // the ambient algebra written in the adapted frame
  Matrix<ScalarK> frame;   // rows = adapted coframe in the original coordinates
  Matrix<ScalarK> vectors; // columns = adapted frame vectors in original coordinates

  // Rewrites a form given in the original coordinates in the adapted frame
  // (substituting e^j = sum_k W_{jk} w^k).
  template <class R>
  Form<R> to_adapted(const Form<R>& a) const {
    int n = adapted.dim();
    if (vectors == Matrix<ScalarK>::identity(n)) return a;
    std::vector<Form<R>> images;
    for (int j = 0; j < n; ++j) {
      Form<R> im(n);
      for (int k = 0; k < n; ++k)
        if (!vectors.at(j, k).is_zero()) im.add(1u << k, R(vectors.at(j, k)));
      images.push_back(im);
    }
    return pullback(a, images);
  }

  // Pushforward: defined on forms (in adapted coordinates) without the
  // dropped index; relabels indices above it downwards.
  template <class R>
  Form<R> project(const Form<R>& a) const {
    unsigned bit = 1u << (dropped - 1);
    Form<R> r(h.dim());
    for (auto& [m, v] : a.coeffs()) {
      if (m & bit) throw Error("form is not basic: contains the dropped covector");
      r.add(squeeze(m, bit), v);
    }
    return r;
  }
  // Pullback: relabels quotient indices into the ambient adapted frame.
  template <class R>
  Form<R> lift(const Form<R>& a) const {
    unsigned bit = 1u << (dropped - 1);
    Form<R> r(h.dim() + 1);
    for (auto& [m, v] : a.coeffs()) r.add(unsqueeze(m, bit), v);
    return r;
  }

  static unsigned squeeze(unsigned m, unsigned bit) {
    unsigned low = m & (bit - 1);
    unsigned high = m & ~((bit << 1) - 1);
    return low | (high >> 1);
  }
  static unsigned unsqueeze(unsigned m, unsigned bit) {
    unsigned low = m & (bit - 1);
    unsigned high = m & ~(bit - 1);
    return low | (high << 1);
  }
};

// Quotient with an explicitly chosen adapted frame: the columns of w are the
// frame vectors, column t-1 is the central direction being collapsed.
inline CentralQuotient quotient_with_frame(const LieAlgebra& g, const Matrix<ScalarK>& w, int t) {
  int n = g.dim();
  if (w.rows() != n || w.cols() != n) throw DimMismatch("frame must be square of the algebra dim");
  VecK x(n);
  for (int i = 0; i < n; ++i) x.x[i] = w.at(i, t - 1);
  if (x.is_zero()) throw ZeroVector();
  if (!g.is_central(x)) throw NotCentral();

  CentralQuotient q;
  q.vectors = w;
  if (w == Matrix<ScalarK>::identity(n)) {
    q.adapted = g;
    q.frame = w;
  } else {
    Matrix<ScalarK> winv = inverse(w);
    q.frame = winv;
    // Old covectors in terms of the adapted ones: e^j = sum_k W_{jk} f^k.
    std::vector<FormK> images;
    for (int j = 0; j < n; ++j) {
      FormK im(n);
      for (int k = 0; k < n; ++k) im.add(1u << k, w.at(j, k));
      images.push_back(im);
    }
    std::vector<FormK> new_diff;
    for (int k = 0; k < n; ++k) {
      FormK df(n);  // d f^k in old coordinates
      for (int j = 0; j < n; ++j) {
        if (winv.at(k, j).is_zero()) continue;
        df = df + (winv.at(k, j) * g.diffs()[j]);
      }
      new_diff.push_back(pullback(df, images));
    }
    q.adapted = LieAlgebra(n, std::move(new_diff));
  }
  q.dropped = t;
  unsigned bit = 1u << (t - 1);
  std::vector<FormK> hd;
  for (int k = 1; k <= n; ++k) {
    if (k == t) continue;
    const FormK& dk = q.adapted.d_generator(k);
    for (auto& [m, v] : dk.coeffs())
      if (m & bit) throw Error("internal: quotient differential not basic");
    FormK f(n - 1);
    for (auto& [m, v] : dk.coeffs()) f.add(CentralQuotient::squeeze(m, bit), v);
    hd.push_back(f);
  }
  q.h = LieAlgebra(n - 1, std::move(hd));
  return q;
}

inline CentralQuotient quotient_by_central(const LieAlgebra& g, const VecK& x) {
  if (x.is_zero()) throw ZeroVector();
  if (x.n != g.dim()) throw DimMismatch("vector dimension");
  int n = g.dim();
  int t = 0;
  for (int i = 1; i <= n; ++i)
    if (!x.x[i - 1].is_zero()) t = i;
  bool basis_aligned = true;
  for (int i = 1; i <= n; ++i)
    if (i != t && !x.x[i - 1].is_zero()) basis_aligned = false;
  Matrix<ScalarK> w = Matrix<ScalarK>::identity(n);
  if (!basis_aligned)
    for (int i = 0; i < n; ++i) w.at(i, t - 1) = x.x[i];
  return quotient_with_frame(g, w, t);
}

inline LieAlgebra direct_sum_with_line(const LieAlgebra& h) {
  int n = h.dim();
  std::vector<FormK> d;
  for (auto& f : h.diffs()) {
    FormK g(n + 1);
    for (auto& [m, v] : f.coeffs()) g.add(m, v);
    d.push_back(g);
  }
  d.push_back(FormK(n + 1));
  return LieAlgebra(n + 1, std::move(d));
}

// A basis of closed k-forms together with one named parameter per basis
// element. The basis is the reduced row echelon form of ker(d) over the
// ascending-lex blade order; each parameter is named after its pivot word.
struct GenericClosedForm {
  LieAlgebra algebra;
  int degree = 0;
  std::vector<FormK> basis;
  std::vector<std::string> params;
  FormP assembled;

  int dimension() const { return (int)basis.size(); }
  std::string render() const { return assembled.str(); }
};

inline GenericClosedForm closed_forms(const LieAlgebra& g, int k) {
  int n = g.dim();
  auto cols = blades(n, k);
  auto rows = blades(n, k + 1);
  Matrix<ScalarK> m(rows.size(), cols.size());
  for (int j = 0; j < (int)cols.size(); ++j) {
    FormK df = g.d(FormK::blade(n, cols[j]));
    for (int i = 0; i < (int)rows.size(); ++i) m.at(i, j) = df.coeff(rows[i]);
  }
  auto ker = kernel_basis(m);
  Matrix<ScalarK> kb(ker.size(), cols.size());
  for (int i = 0; i < (int)ker.size(); ++i)
    for (int j = 0; j < (int)cols.size(); ++j) kb.at(i, j) = ker[i][j];
  auto pivots = rref(kb);

  GenericClosedForm out;
  out.algebra = g;
  out.degree = k;
  out.assembled = FormP(n);
  for (int i = 0; i < (int)pivots.size(); ++i) {
    FormK b(n);
    for (int j = 0; j < (int)cols.size(); ++j) b.add(cols[j], kb.at(i, j));
    std::string pname = "c" + mask_word(cols[pivots[i]]);
    out.basis.push_back(b);
    out.params.push_back(pname);
    out.assembled = out.assembled + (PolyK::var(pname) * to_poly(b));
  }
  return out;
}

// Re-echelonize the span of an already-parsed generic form (linear in its
// parameters) into the same canonical basis; used for byte-comparison against
// independently computed closed-form spaces.
inline GenericClosedForm echelonize_generic(const LieAlgebra& g, const FormP& f, int k) {
  int n = g.dim();
  if (!f.is_zero() && (!f.is_homogeneous() || f.degree() != k)) throw WrongDegree();
  auto cols = blades(n, k);
  std::set<std::string> vars;
  for (auto& [m, v] : f.coeffs())
    for (auto& vn : v.vars()) vars.insert(vn);
  std::vector<std::string> vlist(vars.begin(), vars.end());
  Matrix<ScalarK> m((int)vlist.size(), (int)cols.size());
  for (int j = 0; j < (int)cols.size(); ++j) {
    PolyK rebuilt(0);
    for (int i = 0; i < (int)vlist.size(); ++i) {
      PolyK c = f.coeff(cols[j]).coeff_of(vlist[i], 1);
      if (!c.is_constant()) throw Error("generic form is not linear in its parameters");
      m.at(i, j) = c.constant_value();
      rebuilt += m.at(i, j) * PolyK::var(vlist[i]);
    }
    if (rebuilt != f.coeff(cols[j]))
      throw Error("generic form is not homogeneous-linear in its parameters");
  }
  auto pivots = rref(m);
  GenericClosedForm out;
  out.algebra = g;
  out.degree = k;
  out.assembled = FormP(n);
  for (int i = 0; i < (int)pivots.size(); ++i) {
    FormK b(n);
    for (int j = 0; j < (int)cols.size(); ++j) b.add(cols[j], m.at(i, j));
    std::string pname = "c" + mask_word(cols[pivots[i]]);
    out.basis.push_back(b);
    out.params.push_back(pname);
    out.assembled = out.assembled + (PolyK::var(pname) * to_poly(b));
  }
  return out;
}

}  // namespace sfc
