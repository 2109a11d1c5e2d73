#pragma once
#include <gmpxx.h>

#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace sfc {

// Element of the real field Q(sqrt2, sqrt3, sqrt5), stored as 8 rational
// coordinates over the basis {1, r2, r3, r5, r6, r10, r15, r30} where
// rm = sqrt(m). Closed under +,-,*,/ ; sign is decidable exactly.
class ScalarK {
 public:
  static constexpr std::array<int, 8> radicands{1, 2, 3, 5, 6, 10, 15, 30};

  ScalarK() = default;
  ScalarK(long v) { c_[0] = v; }                        // NOLINT(google-explicit-constructor)
  ScalarK(const mpq_class& q) { c_[0] = q; }            // NOLINT(google-explicit-constructor)

  // q * sqrt(rad); rad must be one of the 8 admissible radicands.
  static ScalarK radical(const mpq_class& q, int rad) {
    ScalarK s;
    s.c_[index_of(rad)] = q;
    return s;
  }
  static ScalarK sqrt2() { return radical(1, 2); }
  static ScalarK sqrt3() { return radical(1, 3); }
  static ScalarK sqrt5() { return radical(1, 5); }

  const mpq_class& coord(int i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (int i = 1; i < 8; ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  // Rational part; exact value only when is_rational().
  const mpq_class& rational_part() const { return c_[0]; }

  friend ScalarK operator+(const ScalarK& a, const ScalarK& b) {
    ScalarK r;
    for (int i = 0; i < 8; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend ScalarK operator-(const ScalarK& a, const ScalarK& b) {
    ScalarK r;
    for (int i = 0; i < 8; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  ScalarK operator-() const {
    ScalarK r;
    for (int i = 0; i < 8; ++i) r.c_[i] = -c_[i];
    return r;
  }
  friend ScalarK operator*(const ScalarK& a, const ScalarK& b) {
    ScalarK r;
    for (int i = 0; i < 8; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < 8; ++j) {
        if (b.c_[j] == 0) continue;
        auto [k, f] = mul_table(i, j);
        r.c_[k] += a.c_[i] * b.c_[j] * f;
      }
    }
    return r;
  }
  ScalarK& operator+=(const ScalarK& o) { return *this = *this + o; }
  ScalarK& operator-=(const ScalarK& o) { return *this = *this - o; }
  ScalarK& operator*=(const ScalarK& o) { return *this = *this * o; }

  friend bool operator==(const ScalarK& a, const ScalarK& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ScalarK& a, const ScalarK& b) { return !(a == b); }

  // Multiplicative inverse via the product of the seven nontrivial Galois
  // conjugates: a * conj_product is rational.
  ScalarK inverse() const {
    if (is_zero()) throw DivisionByZero();
    ScalarK p = ScalarK(1);
    for (int mask = 1; mask < 8; ++mask) p *= conjugate(mask);
    ScalarK n = *this * p;  // rational by Galois theory
    if (!n.is_rational()) throw Error("internal: conjugate norm not rational");
    mpq_class inv_n = 1 / n.c_[0];
    ScalarK r;
    for (int i = 0; i < 8; ++i) r.c_[i] = p.c_[i] * inv_n;
    return r;
  }
  friend ScalarK operator/(const ScalarK& a, const ScalarK& b) { return a * b.inverse(); }

  // Galois conjugate: mask bits 0,1,2 flip the signs of sqrt2, sqrt3, sqrt5.
  ScalarK conjugate(int mask) const {
    ScalarK r;
    for (int i = 0; i < 8; ++i) {
      int m = radicands[i];
      int sign = 1;
      if ((mask & 1) && m % 2 == 0) sign = -sign;
      if ((mask & 2) && m % 3 == 0) sign = -sign;
      if ((mask & 4) && m % 5 == 0) sign = -sign;
      r.c_[i] = sign > 0 ? c_[i] : mpq_class(-c_[i]);
    }
    return r;
  }

  // Exact sign (-1, 0, +1) via rational interval enclosures of the radicals,
  // refined until the enclosure of the sum excludes zero.
  int sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);
    for (unsigned prec = 16;; prec *= 2) {
      mpq_class lo = 0, hi = 0;
      for (int i = 0; i < 8; ++i) {
        if (c_[i] == 0) continue;
        auto [rlo, rhi] = radical_interval(radicands[i], prec);
        if (c_[i] > 0) {
          lo += c_[i] * rlo;
          hi += c_[i] * rhi;
        } else {
          lo += c_[i] * rhi;
          hi += c_[i] * rlo;
        }
      }
      if (lo > 0) return 1;
      if (hi < 0) return -1;
      if (prec > 1u << 20) throw Error("internal: sign refinement did not terminate");
    }
  }
  bool is_positive() const { return sign() > 0; }
  bool is_negative() const { return sign() < 0; }

  // Square root within the field, if one exists. Handles nonnegative
  // rationals whose squarefree part is an admissible radicand, and products
  // q*sqrt(m) whose square root again lies in K (e.g. 3/2*r6 -> none).
  std::optional<ScalarK> sqrt_in_field() const {
    if (is_zero()) return ScalarK(0);
    if (is_rational()) {
      if (c_[0] < 0) return std::nullopt;
      mpz_class n = c_[0].get_num() * c_[0].get_den();
      auto sf = squarefree_split(n);
      if (!sf) return std::nullopt;
      auto [s, m] = *sf;
      int idx = -1;
      for (int i = 0; i < 8; ++i)
        if (radicands[i] == m) idx = i;
      if (idx < 0) return std::nullopt;
      mpq_class q(s, c_[0].get_den());
      q.canonicalize();
      return radical(q, radicands[idx]);
    }
    // Single-term radical q*sqrt(m): sqrt = sqrt(q)*m^{1/4}... not in K unless
    // the element is a perfect square of a single-term radical: (t*sqrt(u))^2
    // = t^2*u is rational, so a non-rational element has no single-term root.
    // General nested cases are not needed; report absence.
    return std::nullopt;
  }

  double to_double() const {
    static const double rads[8] = {1.0,
                                   1.4142135623730951,
                                   1.7320508075688772,
                                   2.23606797749979,
                                   2.449489742783178,
                                   3.1622776601683795,
                                   3.872983346207417,
                                   5.477225575051661};
    double s = 0;
    for (int i = 0; i < 8; ++i) s += c_[i].get_d() * rads[i];
    return s;
  }

  // Canonical literal: `num[rM][/den]` per radical term, terms joined with
  // " + " / " - " in radicand order, e.g. "1r5/5", "-1/2 + 1r2".
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 8; ++i) {
      if (c_[i] == 0) continue;
      mpq_class q = c_[i];
      if (first) {
        if (q < 0) os << '-';
      } else {
        os << (q < 0 ? " - " : " + ");
      }
      os << term_str(abs(q), radicands[i]);
      first = false;
    }
    return os.str();
  }
  // True when str() needs no parentheses inside a product context.
  bool is_single_term() const {
    int nonzero = 0;
    for (const auto& q : c_)
      if (q != 0) ++nonzero;
    return nonzero <= 1;
  }

  static int index_of(int rad) {
    for (int i = 0; i < 8; ++i)
      if (radicands[i] == rad) return i;
    throw Error("inadmissible radicand " + std::to_string(rad));
  }

  // n = s^2 * m with m squarefree; fails if a large unfactored part remains.
  static std::optional<std::pair<mpz_class, mpz_class>> squarefree_split(mpz_class n) {
    if (n < 0) return std::nullopt;
    mpz_class s = 1, m = 1;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      for (int k = 0; k < e / 2; ++k) s *= p;
      if (e % 2) m *= p;
    }
    if (n != 1) {
      if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        s *= r;
      } else {
        return std::nullopt;
      }
    }
    return std::make_pair(s, m);
  }

 private:
  static std::string term_str(const mpq_class& q, int rad) {
    std::ostringstream os;
    os << q.get_num();
    if (rad != 1) os << 'r' << rad;
    if (q.get_den() != 1) os << '/' << q.get_den();
    return os.str();
  }

  static std::pair<int, int> mul_table(int i, int j) {
    // sqrt(a)*sqrt(b) = g*sqrt(ab/g^2) with g = gcd(a,b); a,b squarefree.
    static const auto table = [] {
      std::array<std::array<std::pair<int, int>, 8>, 8> t{};
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          int a = radicands[i], b = radicands[j];
          int g = std::gcd(a, b);
          t[i][j] = {index_of(a / g * (b / g)), g};
        }
      return t;
    }();
    return table[i][j];
  }

  // [lo, hi] enclosing sqrt(m) with denominator 2^prec.
  static std::pair<mpq_class, mpq_class> radical_interval(int m, unsigned prec) {
    mpz_class scaled = mpz_class(m) << (2 * prec);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    mpz_class den = mpz_class(1) << prec;
    mpq_class lo(root, den), hi(root + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
  }

  std::array<mpq_class, 8> c_{};
};

inline ScalarK operator*(const mpq_class& q, const ScalarK& s) { return ScalarK(q) * s; }

}  // namespace sfc
