#pragma once
#include <map>
#include <string>

#include "poly.hpp"

namespace sfc {

// Rational function num/den over ScalarK. Normalization: common monomial
// content cancelled, exact trial division attempted, and the denominator made
// monic w.r.t. its grlex-leading term so each value has one representative.
class RatFunK {
 public:
  RatFunK() : num_(0), den_(1) {}
  RatFunK(long v) : num_(v), den_(1) {}                    // NOLINT(google-explicit-constructor)
  RatFunK(const ScalarK& s) : num_(s), den_(1) {}          // NOLINT(google-explicit-constructor)
  RatFunK(const PolyK& p) : num_(p), den_(1) {}            // NOLINT(google-explicit-constructor)
  RatFunK(PolyK num, PolyK den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const PolyK& num() const { return num_; }
  const PolyK& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_ == PolyK(1); }

  friend RatFunK operator+(const RatFunK& a, const RatFunK& b) {
    return RatFunK(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunK operator-(const RatFunK& a, const RatFunK& b) {
    return RatFunK(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunK operator-() const {
    RatFunK r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunK operator*(const RatFunK& a, const RatFunK& b) {
    return RatFunK(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunK operator/(const RatFunK& a, const RatFunK& b) {
    if (b.num_.is_zero()) throw DivisionByZero();
    return RatFunK(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunK& operator+=(const RatFunK& o) { return *this = *this + o; }
  RatFunK& operator-=(const RatFunK& o) { return *this = *this - o; }
  RatFunK& operator*=(const RatFunK& o) { return *this = *this * o; }

  friend bool operator==(const RatFunK& a, const RatFunK& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RatFunK& a, const RatFunK& b) { return !(a == b); }

  RatFunK inverse() const {
    if (num_.is_zero()) throw DivisionByZero();
    return RatFunK(den_, num_);
  }

  std::string str() const {
    if (is_poly()) return num_.str();
    std::string n = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
    std::string d = den_.terms().size() > 1 ? "(" + den_.str() + ")" : den_.str();
    return n + " / " + d;
  }

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero("denominator is the zero polynomial");
    if (num_.is_zero()) {
      den_ = PolyK(1);
      return;
    }
    Mono cn = num_.monomial_content(), cd = den_.monomial_content();
    Mono common;
    for (auto& [v, e] : cn) {
      auto it = cd.find(v);
      if (it != cd.end()) common[v] = std::min(e, it->second);
    }
    if (!common.empty()) {
      num_ = num_.divide_monomial(common);
      den_ = den_.divide_monomial(common);
    }
    if (auto q = PolyK::try_divide(num_, den_)) {
      num_ = *q;
      den_ = PolyK(1);
      return;
    }
    ScalarK lead = den_.leading_term().second;
    if (lead != ScalarK(1)) {
      ScalarK inv = lead.inverse();
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

 private:
  PolyK num_, den_;
};

// Substitution of rational functions for variables; unbound variables pass
// through. Used by the elimination replay.
inline RatFunK substitute(const PolyK& p, const std::map<std::string, RatFunK>& bind) {
  RatFunK r(0);
  for (auto& [m, c] : p.terms()) {
    RatFunK t{PolyK(c)};
    for (auto& [v, e] : m) {
      auto it = bind.find(v);
      RatFunK base = it == bind.end() ? RatFunK(PolyK::var(v)) : it->second;
      for (int i = 0; i < e; ++i) t *= base;
    }
    r += t;
  }
  return r;
}

}  // namespace sfc
