#pragma once
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "scalar.hpp"

namespace sfc {

// Monomial: variable name -> positive exponent. std::map keeps a canonical
// (name-lexicographic) variable order, so Mono comparison is deterministic.
using Mono = std::map<std::string, int>;

inline int total_degree(const Mono& m) {
  int d = 0;
  for (auto& [v, e] : m) d += e;
  return d;
}

// Graded-lex order used for division leading terms: higher total degree wins,
// ties broken by the exponent of the alphabetically first differing variable.
inline bool grlex_less(const Mono& a, const Mono& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first != ib->first) return ia->first > ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia, ++ib;
  }
  return ia == a.end() && ib != b.end();
}

// Sparse multivariate polynomial over ScalarK.
class PolyK {
 public:
  PolyK() = default;
  PolyK(long v) : PolyK(ScalarK(v)) {}               // NOLINT(google-explicit-constructor)
  PolyK(const ScalarK& s) {                          // NOLINT(google-explicit-constructor)
    if (!s.is_zero()) terms_[Mono{}] = s;
  }
  static PolyK var(const std::string& name, int exp = 1) {
    PolyK p;
    if (exp < 0) throw Error("negative exponent");
    if (exp == 0) return PolyK(1);
    p.terms_[Mono{{name, exp}}] = ScalarK(1);
    return p;
  }

  const std::map<Mono, ScalarK>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  ScalarK constant_value() const {
    if (terms_.empty()) return ScalarK(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_.begin()->second;
  }

  std::set<std::string> vars() const {
    std::set<std::string> vs;
    for (auto& [m, c] : terms_)
      for (auto& [v, e] : m) vs.insert(v);
    return vs;
  }

  friend PolyK operator+(const PolyK& a, const PolyK& b) {
    PolyK r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend PolyK operator-(const PolyK& a, const PolyK& b) {
    PolyK r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  PolyK operator-() const {
    PolyK r;
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  friend PolyK operator*(const PolyK& a, const PolyK& b) {
    PolyK r;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        Mono m = ma;
        for (auto& [v, e] : mb) m[v] += e;
        r.add_term(m, ca * cb);
      }
    return r;
  }
  PolyK& operator+=(const PolyK& o) { return *this = *this + o; }
  PolyK& operator-=(const PolyK& o) { return *this = *this - o; }
  PolyK& operator*=(const PolyK& o) { return *this = *this * o; }
  friend PolyK operator*(const ScalarK& s, const PolyK& p) { return PolyK(s) * p; }
  friend bool operator==(const PolyK& a, const PolyK& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PolyK& a, const PolyK& b) { return !(a == b); }

  PolyK pow(int e) const {
    if (e < 0) throw Error("negative exponent");
    PolyK r(1);
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }

  int degree_in(const std::string& v) const {
    int d = 0;
    for (auto& [m, c] : terms_) {
      auto it = m.find(v);
      if (it != m.end() && it->second > d) d = it->second;
    }
    return d;
  }

  // Coefficient of v^k, with v removed from the monomials.
  PolyK coeff_of(const std::string& v, int k) const {
    PolyK r;
    for (auto& [m, c] : terms_) {
      auto it = m.find(v);
      int e = it == m.end() ? 0 : it->second;
      if (e != k) continue;
      Mono m2 = m;
      m2.erase(v);
      r.add_term(m2, c);
    }
    return r;
  }

  // Full evaluation; every variable must be assigned.
  ScalarK eval(const std::map<std::string, ScalarK>& point) const {
    ScalarK r(0);
    for (auto& [m, c] : terms_) {
      ScalarK t = c;
      for (auto& [v, e] : m) {
        auto it = point.find(v);
        if (it == point.end()) throw Error("unassigned variable " + v);
        for (int i = 0; i < e; ++i) t *= it->second;
      }
      r += t;
    }
    return r;
  }

  // Partial substitution by scalars; unbound variables pass through.
  PolyK substitute_scalars(const std::map<std::string, ScalarK>& bind) const {
    PolyK r;
    for (auto& [m, c] : terms_) {
      ScalarK cc = c;
      Mono m2;
      for (auto& [v, e] : m) {
        auto it = bind.find(v);
        if (it == bind.end())
          m2[v] = e;
        else
          for (int i = 0; i < e; ++i) cc *= it->second;
      }
      r.add_term(m2, cc);
    }
    return r;
  }

  // Polynomial substitution; unbound variables pass through.
  PolyK substitute_polys(const std::map<std::string, PolyK>& bind) const {
    PolyK r;
    for (auto& [m, c] : terms_) {
      PolyK t = PolyK(c);
      for (auto& [v, e] : m) {
        auto it = bind.find(v);
        if (it == bind.end())
          t *= var(v, e);
        else
          t *= it->second.pow(e);
      }
      r += t;
    }
    return r;
  }

  std::pair<Mono, ScalarK> leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (grlex_less(best->first, it->first)) best = it;
    return {best->first, best->second};
  }

  // Exact multivariate division; nullopt when den does not divide exactly.
  static std::optional<PolyK> try_divide(const PolyK& num, const PolyK& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (den.is_constant()) {
      ScalarK inv = den.constant_value().inverse();
      PolyK q;
      for (auto& [m, c] : num.terms_) q.terms_[m] = c * inv;
      return q;
    }
    PolyK r = num, q;
    auto [dm, dc] = den.leading_term();
    ScalarK dinv = dc.inverse();
    while (!r.is_zero()) {
      auto [rm, rc] = r.leading_term();
      Mono t;
      for (auto& [v, e] : dm) {
        auto it = rm.find(v);
        if (it == rm.end() || it->second < e) return std::nullopt;
      }
      t = rm;
      for (auto& [v, e] : dm) {
        t[v] -= e;
        if (t[v] == 0) t.erase(v);
      }
      PolyK piece;
      piece.terms_[t] = rc * dinv;
      q += piece;
      r -= piece * den;
    }
    return q;
  }

  // Per-variable minimum exponent over all terms (monomial content).
  Mono monomial_content() const {
    if (terms_.empty()) return {};
    Mono m = terms_.begin()->first;
    for (auto& [tm, c] : terms_) {
      for (auto it = m.begin(); it != m.end();) {
        auto jt = tm.find(it->first);
        int e = jt == tm.end() ? 0 : jt->second;
        if (e == 0) {
          it = m.erase(it);
        } else {
          it->second = std::min(it->second, e);
          ++it;
        }
      }
    }
    return m;
  }
  PolyK divide_monomial(const Mono& m) const {
    PolyK r;
    for (auto& [tm, c] : terms_) {
      Mono t = tm;
      for (auto& [v, e] : m) {
        t[v] -= e;
        if (t[v] < 0) throw Error("monomial does not divide");
        if (t[v] == 0) t.erase(v);
      }
      r.terms_[t] = c;
    }
    return r;
  }

  // Display sign: negative when the first nonzero coordinate of the
  // grlex-leading coefficient is negative (used to place " - " in sums).
  bool display_negative() const {
    if (terms_.empty()) return false;
    const ScalarK& c = leading_term().second;
    for (int i = 0; i < 8; ++i)
      if (c.coord(i) != 0) return c.coord(i) < 0;
    return false;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
      ScalarK cc = c;
      bool neg = false;
      for (int i = 0; i < 8; ++i)
        if (c.coord(i) != 0) {
          neg = c.coord(i) < 0;
          break;
        }
      if (neg) cc = -cc;
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      std::string ms = mono_str(m);
      if (ms.empty()) {
        os << (cc.is_single_term() ? cc.str() : "(" + cc.str() + ")");
      } else if (cc == ScalarK(1)) {
        os << ms;
      } else {
        os << (cc.is_single_term() ? cc.str() : "(" + cc.str() + ")") << '*' << ms;
      }
    }
    return os.str();
  }
  static std::string mono_str(const Mono& m) {
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : m) {
      if (!first) os << '*';
      os << v;
      if (e > 1) os << '^' << e;
      first = false;
    }
    return os.str();
  }

 private:
  void add_term(const Mono& m, const ScalarK& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<Mono, ScalarK> terms_;
};

}  // namespace sfc
