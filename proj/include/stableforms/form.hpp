#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace sfc {

// Basis blades are n-bit masks: bit i set <=> covector e^{i+1} present.
// Coefficients are stored against the strictly increasing index word.

inline int popcount(unsigned m) { return __builtin_popcount(m); }

// Koszul sign for merging two disjoint increasing words (inversion parity).
inline int merge_sign(unsigned a, unsigned b) {
  int inv = 0;
  for (unsigned t = b; t; t &= t - 1) {
    int i = __builtin_ctz(t);
    inv += popcount(a >> (i + 1));
  }
  return inv % 2 ? -1 : 1;
}

inline std::vector<int> mask_indices(unsigned m) {
  std::vector<int> idx;
  for (unsigned t = m; t; t &= t - 1) idx.push_back(__builtin_ctz(t) + 1);
  return idx;
}
inline std::string mask_word(unsigned m) {
  std::string w;
  for (int i : mask_indices(m)) w += char('0' + i);
  return w;
}

// Ascending lexicographic order on index words ("12" < "123" < "13"); this is
// the column/pivot order used everywhere (echelonization, rendering).
struct WordLess {
  bool operator()(unsigned a, unsigned b) const {
    while (a && b) {
      int ia = __builtin_ctz(a), ib = __builtin_ctz(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  }
};

// All degree-k masks in dimension n, in word order.
inline std::vector<unsigned> blades(int n, int k) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (popcount(m) == k) out.push_back(m);
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

template <class R>
struct Vector {
  int n = 0;
  std::vector<R> x;

  Vector() = default;
  explicit Vector(int dim) : n(dim), x(dim, R(0)) {}
  static Vector basis(int dim, int i) {
    Vector v(dim);
    v.x[i - 1] = R(1);
    return v;
  }
  bool is_zero() const {
    for (auto& c : x)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const Vector& a, const Vector& b) { return a.n == b.n && a.x == b.x; }
};

template <class R>
class Form {
 public:
  Form() : n_(0) {}
  explicit Form(int n) : n_(n) {}
  static Form blade(int n, unsigned mask, R coef = R(1)) {
    Form f(n);
    f.add(mask, std::move(coef));
    return f;
  }
  static Form covector(int n, int i) { return blade(n, 1u << (i - 1)); }
  static Form volume(int n) { return blade(n, (1u << n) - 1); }

  int dim() const { return n_; }
  const std::map<unsigned, R, WordLess>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  R coeff(unsigned mask) const {
    auto it = c_.find(mask);
    return it == c_.end() ? R(0) : it->second;
  }

  void add(unsigned mask, const R& v) {
    if (v.is_zero()) return;
    auto it = c_.find(mask);
    if (it == c_.end()) {
      c_[mask] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  bool is_homogeneous() const {
    if (c_.empty()) return true;
    int k = popcount(c_.begin()->first);
    for (auto& [m, v] : c_)
      if (popcount(m) != k) return false;
    return true;
  }
  // Degree of a homogeneous form; the zero form reports -1.
  int degree() const {
    if (c_.empty()) return -1;
    return popcount(c_.begin()->first);
  }

  friend Form operator+(const Form& a, const Form& b) {
    check_dims(a, b);
    Form r = a;
    for (auto& [m, v] : b.c_) r.add(m, v);
    return r;
  }
  friend Form operator-(const Form& a, const Form& b) {
    check_dims(a, b);
    Form r = a;
    for (auto& [m, v] : b.c_) r.add(m, R(0) - v);
    return r;
  }
  Form operator-() const {
    Form r(n_);
    for (auto& [m, v] : c_) r.c_[m] = R(0) - v;
    return r;
  }
  friend Form operator*(const R& s, const Form& f) {
    Form r(f.n_);
    for (auto& [m, v] : f.c_) r.add(m, s * v);
    return r;
  }
  friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.c_ == b.c_; }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  friend Form wedge(const Form& a, const Form& b) {
    check_dims(a, b);
    Form r(a.n_);
    for (auto& [ma, va] : a.c_)
      for (auto& [mb, vb] : b.c_) {
        if (ma & mb) continue;
        int s = merge_sign(ma, mb);
        R p = va * vb;
        r.add(ma | mb, s > 0 ? p : R(0) - p);
      }
    return r;
  }

  // Interior product: degree -1 antiderivation.
  friend Form contract(const Vector<R>& x, const Form& a) {
    if (x.n != a.n_) throw DimMismatch("contraction dimensions");
    Form r(a.n_);
    for (auto& [m, v] : a.c_) {
      int pos = 0;
      for (unsigned t = m; t; t &= t - 1) {
        int i = __builtin_ctz(t);
        if (!x.x[i].is_zero()) {
          R p = x.x[i] * v;
          r.add(m & ~(1u << i), pos % 2 ? R(0) - p : p);
        }
        ++pos;
      }
    }
    return r;
  }

  // Pullback along a linear map described by the images of the covectors:
  // images[i] is the 1-form the covector e^{i+1} maps to.
  friend Form pullback(const Form& a, const std::vector<Form>& images) {
    if ((int)images.size() != a.n_) throw DimMismatch("pullback needs one image per covector");
    int m = images.empty() ? a.n_ : images[0].dim();
    Form r(m);
    for (auto& [mask, v] : a.c_) {
      Form t = blade(m, 0u, v);
      for (int i : mask_indices(mask)) t = wedge(t, images[i - 1]);
      r = r + t;
    }
    return r;
  }

  template <class S, class F>
  Form<S> map_coeffs(F&& fn) const {
    Form<S> r(n_);
    for (auto& [m, v] : c_) r.add(m, fn(v));
    return r;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, v] : c_) {
      auto [neg, body] = coef_term(v, mask_word(m));
      if (first) {
        if (neg) out += '-';
      } else {
        out += neg ? " - " : " + ";
      }
      out += body;
      first = false;
    }
    return out;
  }

  // Renders |coef|*word, reporting the display sign separately.
  static std::pair<bool, std::string> coef_term(const R& v, const std::string& word);

 private:
  static void check_dims(const Form& a, const Form& b) {
    if (a.n_ != b.n_) throw DimMismatch("forms live in different dimensions");
  }

  int n_;
  std::map<unsigned, R, WordLess> c_;
};

template <>
inline std::pair<bool, std::string> Form<ScalarK>::coef_term(const ScalarK& v,
                                                             const std::string& word) {
  bool neg = false;
  for (int i = 0; i < 8; ++i)
    if (v.coord(i) != 0) {
      neg = v.coord(i) < 0;
      break;
    }
  ScalarK a = neg ? -v : v;
  if (a == ScalarK(1)) return {neg, word};
  std::string c = a.is_single_term() ? a.str() : "(" + a.str() + ")";
  return {neg, c + "*" + word};
}

template <>
inline std::pair<bool, std::string> Form<PolyK>::coef_term(const PolyK& v,
                                                           const std::string& word) {
  bool neg = v.display_negative();
  PolyK a = neg ? -v : v;
  if (a == PolyK(1)) return {neg, word};
  bool simple = a.terms().size() == 1 && a.leading_term().second.is_single_term();
  std::string c = simple ? a.str() : "(" + a.str() + ")";
  return {neg, c + "*" + word};
}

template <>
inline std::pair<bool, std::string> Form<RatFunK>::coef_term(const RatFunK& v,
                                                             const std::string& word) {
  if (v.is_poly()) {
    auto [neg, body] = Form<PolyK>::coef_term(v.num(), word);
    return {neg, body};
  }
  return {false, "(" + v.str() + ")*" + word};
}

struct Metric {
  int n = 0;
  Matrix<ScalarK> g;
  int orientation = 1;

  Metric() = default;
  Metric(int dim, Matrix<ScalarK> entries, int orient = 1)
      : n(dim), g(std::move(entries)), orientation(orient) {}
  static Metric identity(int dim) { return Metric(dim, Matrix<ScalarK>::identity(dim)); }
  bool is_identity() const { return g == Matrix<ScalarK>::identity(n) && orientation == 1; }
  friend bool operator==(const Metric& a, const Metric& b) {
    return a.n == b.n && a.g == b.g && a.orientation == b.orientation;
  }
};

// Hodge star w.r.t. an exact metric. For the identity metric this is the
// signed complement of index sets; otherwise <e^I,e^J>_g = det of the inverse
// metric's (I,J) submatrix, and sqrt(det g) must lie in the field.
template <class R>
Form<R> hodge_star(const Form<R>& a, const Metric& g) {
  if (a.dim() != g.n) throw DimMismatch("hodge star dimensions");
  int n = g.n;
  unsigned full = (1u << n) - 1;
  Form<R> r(n);
  if (g.is_identity()) {
    for (auto& [m, v] : a.coeffs()) {
      unsigned mc = full & ~m;
      int s = merge_sign(m, mc);
      r.add(mc, s > 0 ? v : R(0) - v);
    }
    return r;
  }
  ScalarK dg = det(g.g);
  if (dg.is_zero()) throw Error("degenerate metric");
  auto sq = dg.sqrt_in_field();
  if (!sq) throw IrrationalVolume();
  ScalarK vol_scale = g.orientation > 0 ? *sq : -*sq;
  Matrix<ScalarK> ginv = inverse(g.g);
  // Group input terms by degree, then expand against all blades of the same
  // degree via the Gram pairing.
  for (auto& [m, v] : a.coeffs()) {
    int k = popcount(m);
    auto idx_m = mask_indices(m);
    for (unsigned i_mask : blades(n, k)) {
      auto idx_i = mask_indices(i_mask);
      std::vector<int> rws(idx_i.size()), cls(idx_m.size());
      for (size_t t = 0; t < idx_i.size(); ++t) rws[t] = idx_i[t] - 1;
      for (size_t t = 0; t < idx_m.size(); ++t) cls[t] = idx_m[t] - 1;
      ScalarK gram = det(ginv.submatrix(rws, cls));
      if (gram.is_zero()) continue;
      unsigned ic = full & ~i_mask;
      int s = merge_sign(i_mask, ic);
      ScalarK f = gram * vol_scale;
      R p = (s > 0 ? f : -f) * v;
      r.add(ic, p);
    }
  }
  return r;
}

template <class R>
Form<R> hodge_star(const Form<R>& a) {
  return hodge_star(a, Metric::identity(a.dim()));
}

// Musical isomorphism: the 1-form g(x, .).
template <class R>
Form<R> flat(const Vector<R>& x, const Metric& g) {
  if (x.n != g.n) throw DimMismatch("flat dimensions");
  Form<R> r(x.n);
  for (int j = 0; j < x.n; ++j) {
    R s(0);
    for (int i = 0; i < x.n; ++i) s += g.g.at(i, j) * x.x[i];
    r.add(1u << j, s);
  }
  return r;
}

using FormK = Form<ScalarK>;
using FormP = Form<PolyK>;
using FormR = Form<RatFunK>;
using VecK = Vector<ScalarK>;
using VecP = Vector<PolyK>;

inline FormP to_poly(const FormK& f) {
  return f.map_coeffs<PolyK>([](const ScalarK& s) { return PolyK(s); });
}
inline VecP to_poly(const VecK& v) {
  VecP out(v.n);
  for (int i = 0; i < v.n; ++i) out.x[i] = PolyK(v.x[i]);
  return out;
}
inline FormR to_ratfun(const FormP& f) {
  return f.map_coeffs<RatFunK>([](const PolyK& p) { return RatFunK(p); });
}

}  // namespace sfc
