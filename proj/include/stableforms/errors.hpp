#pragma once
#include <stdexcept>
#include <string>

namespace sfc {

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};
struct DenominatorVanishes : Error {
  DenominatorVanishes() : Error("denominator is the zero polynomial") {}
};
struct DimMismatch : Error {
  explicit DimMismatch(const std::string& m = "dimension mismatch") : Error(m) {}
};
struct WrongDegree : Error {
  explicit WrongDegree(const std::string& m = "form has the wrong degree") : Error(m) {}
};

// Parsing
struct SyntaxError : Error {
  std::size_t pos;
  SyntaxError(std::size_t p, const std::string& expected)
      : Error("syntax error at position " + std::to_string(p) + ": expected " + expected), pos(p) {}
};
struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(int idx, int dim)
      : Error("index " + std::to_string(idx) + " out of range for dimension " + std::to_string(dim)) {}
};
struct DuplicateIndex : Error {
  explicit DuplicateIndex(int idx)
      : Error("duplicate index " + std::to_string(idx) + " in word") {}
};

// Exterior / metric
struct IrrationalVolume : Error {
  IrrationalVolume() : Error("sqrt(det g) does not lie in the scalar field") {}
};
struct IrrationalNinthRoot : Error {
  explicit IrrationalNinthRoot(const std::string& detb)
      : Error("det B = " + detb + " has no rational ninth root") {}
};
struct IrrationalGramSchmidt : Error {
  IrrationalGramSchmidt() : Error("Gram-Schmidt leaves the scalar field") {}
};
struct NotPositive : Error {
  NotPositive() : Error("3-form is not positive") {}
};
struct NonIdentityMetric : Error {
  NonIdentityMetric() : Error("operation requires the identity metric") {}
};

// Lie algebra / structures
struct NotNilpotent : Error {
  NotNilpotent() : Error("Lie algebra is not nilpotent") {}
};
struct NotCentral : Error {
  NotCentral() : Error("vector is not central") {}
};
struct NotUnit : Error {
  NotUnit() : Error("vector does not have unit length") {}
};
struct ZeroVector : Error {
  ZeroVector() : Error("vector is zero") {}
};
struct NotHalfFlat : Error {
  NotHalfFlat() : Error("structure is not half-flat") {}
};

// Obstruction proofs
struct IdentityFails : Error {
  IdentityFails(int case_index, const std::string& word, const std::string& coefficient)
      : Error("case " + std::to_string(case_index) + ": (i_X i_Y kappa)^2 has nonzero " + word +
              " coefficient " + coefficient) {}
};
struct CoverageGap : Error {
  explicit CoverageGap(const std::string& m) : Error("certificate cases do not cover: " + m) {}
};
struct PatternFails : Error {
  PatternFails(int a, int b, const std::string& entry)
      : Error("K[" + std::to_string(a) + "][" + std::to_string(b) +
              "] is not identically zero: " + entry) {}
};
struct SigmaNonzero : Error {
  explicit SigmaNonzero(const std::string& coefficient)
      : Error("sigma has nonzero coefficient on the marked word: " + coefficient) {}
};

// Elimination
struct StepNotLinear : Error {
  explicit StepNotLinear(const std::string& var)
      : Error("variable " + var + " does not appear linearly") {}
};
struct DenominatorVanishesOnConstraint : Error {
  explicit DenominatorVanishesOnConstraint(const std::string& den)
      : Error("division by a polynomial the system forces to vanish: " + den) {}
};

// Catalog
struct ParseError : Error {
  ParseError(const std::string& file, int line, const std::string& m)
      : Error(file + ":" + std::to_string(line) + ": " + m) {}
};
struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& m) : Error("catalog invariant violated: " + m) {}
};

}  // namespace sfc
