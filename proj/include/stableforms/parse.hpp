#pragma once
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "form.hpp"

namespace sfc {

// Recursive-descent parser for the shared textual grammar.
//
//   coefficient  := int ["r" uint] ["/" uint ["r" uint]]   (one radical part)
//   word         := 1..7 distinct digits, each within the ambient dimension
//   term         := factor ("*" factor)* ; the last factor is the word,
//                   earlier ones multiply into the coefficient
//   factor       := coefficient | identifier | "(" sum ")"
//   sum          := ["-"] term (("+"|"-") term)*
//   algebra      := "(" entry ("," entry)* ")" ; entry := "0" | sum of
//                   2-letter words ; dimension = number of entries
//
// `1/5r5` and `1r5/5` both denote sqrt(5)/5; identifiers are only admitted in
// the generic-coefficient modes (closed-form parameters, certificate vectors).
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  static ScalarK scalar(std::string_view text) {
    Parser p(text);
    ScalarK v = p.scalar_sum();
    p.expect_eof();
    return v;
  }

  static FormK form(std::string_view text, int dim) {
    Parser p(text);
    if (p.lone_zero()) return FormK(dim);
    FormK f = p.form_sum(dim);
    p.expect_eof();
    return f;
  }

  static FormP generic_form(std::string_view text, int dim) {
    Parser p(text);
    if (p.lone_zero()) return FormP(dim);
    FormP f = p.generic_sum(dim);
    p.expect_eof();
    return f;
  }

  static VecP vector(std::string_view text, int dim) {
    Parser p(text);
    if (p.lone_zero()) return VecP(dim);
    VecP v = p.vector_sum(dim);
    p.expect_eof();
    return v;
  }

  static std::vector<FormK> structure_equations(std::string_view text) {
    Parser p(text);
    auto d = p.algebra();
    p.expect_eof();
    return d;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw SyntaxError(pos_, what);
  }
  void expect_eof() {
    if (!eof()) throw SyntaxError(pos_, "end of input");
  }
  // A bare "0" denotes the zero form/vector.
  bool lone_zero() {
    if (peek() != '0') return false;
    std::size_t save = pos_;
    ++pos_;
    if (eof()) return true;
    pos_ = save;
    return false;
  }

  std::string digits() {
    skip_ws();
    std::string d;
    while (pos_ < s_.size() && isdigit((unsigned char)s_[pos_])) d += s_[pos_++];
    if (d.empty()) throw SyntaxError(pos_, "a digit");
    return d;
  }
  std::string ident() {
    skip_ws();
    std::string id;
    while (pos_ < s_.size() && (isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
      id += s_[pos_++];
    return id;
  }

  struct Factor {
    enum Kind { Number, Ident, Paren } kind;
    ScalarK num;        // Number
    std::string name;   // Ident
    PolyK poly;         // Paren (scalar-only parens use the constant part)
    bool pure_digits = false;
    std::string word;
  };

  // int ["r" uint] ["/" uint ["r" uint]] with at most one radical part.
  Factor number_factor() {
    Factor f{Factor::Number, ScalarK(0), "", PolyK(0)};
    std::string nums = digits();
    f.word = nums;
    mpz_class num(nums), den(1);
    int rad = 1;
    bool pure = true;
    if (peek() == 'r') {
      ++pos_;
      rad = std::stoi(digits());
      pure = false;
    }
    if (peek() == '/') {
      ++pos_;
      den = mpz_class(digits());
      pure = false;
      if (peek() == 'r') {
        ++pos_;
        if (rad != 1) throw SyntaxError(pos_, "at most one radical part");
        rad = std::stoi(digits());
      }
    }
    if (rad != 1) ScalarK::index_of(rad);  // validates the radicand
    mpq_class q(num, den);
    q.canonicalize();
    f.num = rad == 1 ? ScalarK(q) : ScalarK::radical(q, rad);
    f.pure_digits = pure;
    return f;
  }

  Factor factor(bool generic) {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Factor f{Factor::Paren, ScalarK(0), "", PolyK(0)};
      if (generic) {
        f.poly = poly_sum();
      } else {
        f.num = scalar_sum();
      }
      expect(')', "')'");
      return f;
    }
    if (isalpha((unsigned char)c)) {
      Factor f{Factor::Ident, ScalarK(0), ident(), PolyK(0)};
      if (!generic) throw SyntaxError(pos_, "a number (identifiers not allowed here)");
      return f;
    }
    if (isdigit((unsigned char)c)) return number_factor();
    throw SyntaxError(pos_, "a coefficient or index word");
  }

  // One signed term: returns (coefficient, word string).
  std::pair<PolyK, std::string> term(bool generic) {
    std::vector<Factor> fs;
    fs.push_back(factor(generic));
    while (true) {
      skip_ws();
      if (accept('*')) {
        fs.push_back(factor(generic));
        continue;
      }
      // whitespace-separated word after an explicit fraction/radical
      if (pos_ < s_.size() && isdigit((unsigned char)s_[pos_]) && !fs.back().pure_digits &&
          fs.back().kind == Factor::Number)
        fs.push_back(number_factor());
      break;
    }
    Factor& last = fs.back();
    if (last.kind != Factor::Number || !last.pure_digits)
      throw SyntaxError(pos_, "an index word to end the term");
    PolyK coef(1);
    for (size_t i = 0; i + 1 < fs.size(); ++i) {
      switch (fs[i].kind) {
        case Factor::Number: coef *= PolyK(fs[i].num); break;
        case Factor::Ident: coef *= PolyK::var(fs[i].name); break;
        case Factor::Paren: coef *= generic ? fs[i].poly : PolyK(fs[i].num); break;
      }
    }
    return {coef, last.word};
  }

  static unsigned word_mask(const std::string& w, int dim) {
    unsigned mask = 0;
    for (char ch : w) {
      int d = ch - '0';
      if (d < 1 || d > dim) throw IndexOutOfRange(d, dim);
      unsigned bit = 1u << (d - 1);
      if (mask & bit) throw DuplicateIndex(d);
      mask |= bit;
    }
    return mask;
  }

  ScalarK scalar_sum() {
    ScalarK total(0);
    bool neg = accept('-');
    if (!neg) accept('+');
    while (true) {
      Factor f = number_factor();
      total += neg ? -f.num : f.num;
      if (accept('+')) {
        neg = false;
      } else if (accept('-')) {
        neg = true;
      } else {
        break;
      }
    }
    return total;
  }

  PolyK poly_sum() {
    PolyK total(0);
    bool neg = accept('-');
    if (!neg) accept('+');
    while (true) {
      PolyK t(1);
      while (true) {
        Factor f = factor(true);
        switch (f.kind) {
          case Factor::Number: t *= PolyK(f.num); break;
          case Factor::Ident: t *= PolyK::var(f.name); break;
          case Factor::Paren: t *= f.poly; break;
        }
        if (!accept('*')) break;
      }
      total += neg ? -t : t;
      if (accept('+')) {
        neg = false;
      } else if (accept('-')) {
        neg = true;
      } else {
        break;
      }
    }
    return total;
  }

  template <class AddTerm>
  void sum_of_terms(bool generic, AddTerm&& add) {
    bool neg = accept('-');
    if (!neg) accept('+');
    while (true) {
      auto [coef, word] = term(generic);
      add(neg ? -coef : coef, word);
      if (accept('+')) {
        neg = false;
      } else if (accept('-')) {
        neg = true;
      } else {
        break;
      }
    }
  }

  FormK form_sum(int dim) {
    FormK f(dim);
    sum_of_terms(false, [&](const PolyK& c, const std::string& w) {
      f.add(word_mask(w, dim), c.constant_value());
    });
    return f;
  }

  FormP generic_sum(int dim) {
    FormP f(dim);
    sum_of_terms(true, [&](const PolyK& c, const std::string& w) { f.add(word_mask(w, dim), c); });
    return f;
  }

  VecP vector_sum(int dim) {
    VecP v(dim);
    sum_of_terms(true, [&](const PolyK& c, const std::string& w) {
      if (w.size() != 1) throw SyntaxError(pos_, "a single basis-vector index");
      int d = w[0] - '0';
      if (d < 1 || d > dim) throw IndexOutOfRange(d, dim);
      v.x[d - 1] += c;
    });
    return v;
  }

  std::vector<FormK> algebra() {
    expect('(', "'('");
    std::vector<std::string> entries;
    std::string cur;
    int depth = 0;
    while (true) {
      if (pos_ >= s_.size()) throw SyntaxError(pos_, "')'");
      char c = s_[pos_];
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) {
        ++pos_;
        break;
      }
      if (c == ',' && depth == 0) {
        entries.push_back(cur);
        cur.clear();
        ++pos_;
        continue;
      }
      cur += c;
      ++pos_;
    }
    entries.push_back(cur);
    int dim = (int)entries.size();
    std::vector<FormK> diffs;
    for (auto& e : entries) {
      Parser p(e);
      if (p.peek() == '0') {
        ++p.pos_;
        p.expect_eof();
        diffs.push_back(FormK(dim));
        continue;
      }
      FormK f(dim);
      p.sum_of_terms(false, [&](const PolyK& c, const std::string& w) {
        if (w.size() != 2) throw SyntaxError(p.pos_, "a two-digit word");
        f.add(word_mask(w, dim), c.constant_value());
      });
      p.expect_eof();
      diffs.push_back(f);
    }
    return diffs;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string print_structure_equations(const std::vector<FormK>& diffs) {
  std::string out = "(";
  for (size_t i = 0; i < diffs.size(); ++i) {
    if (i) out += ",";
    out += diffs[i].str();
  }
  return out + ")";
}

}  // namespace sfc
