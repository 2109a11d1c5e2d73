#pragma once
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "curvature.hpp"
#include "obstructions.hpp"
#include "parse.hpp"
#include "report.hpp"
#include "structures.hpp"

namespace sfc {

// Elimination step addressed by the monomial word of the target equation; the
// word is resolved to an index once the coefficient system is extracted.
struct ScriptStep {
  EliminationStep::Kind kind;
  std::string var;
  ScalarK value{0};
  std::string word;
};

// One catalog entry: a nilpotent algebra together with every recorded artifact
// about it (forms, coframes, certificates, scripts) and the expected outcome
// of each check that applies to it.
struct CatalogEntry {
  std::string id;
  int dim = 7;
  std::vector<std::string> tags;
  std::string equations;
  std::string nil_equations;  // orthonormalized presentation, when one is recorded
  LieAlgebra algebra;
  std::optional<LieAlgebra> nil_algebra;
  std::map<std::string, FormK> forms;
  std::map<std::string, std::vector<FormK>> coframes;
  std::map<std::string, FormP> generics;
  std::map<std::string, ObstructionCertificate> certs;
  std::optional<BlockStructureProof> block;
  std::vector<ScriptStep> script;
  std::optional<int> contact_xi;
  std::map<std::string, std::string> expected;
  std::string source_file;

  bool has_tag(const std::string& t) const {
    for (auto& x : tags)
      if (x == t) return true;
    return false;
  }
  const LieAlgebra& soliton_algebra() const { return nil_algebra ? *nil_algebra : algebra; }
};

namespace detail {

inline std::string trim(std::string s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// first whitespace-delimited token and the trimmed remainder
inline std::pair<std::string, std::string> cut(const std::string& s) {
  std::size_t sp = s.find_first_of(" \t");
  if (sp == std::string::npos) return {s, ""};
  return {s.substr(0, sp), trim(s.substr(sp))};
}

inline VecK constant_vector(const VecP& v) {
  VecK out(v.n);
  for (int i = 0; i < v.n; ++i) out.x[i] = v.x[i].constant_value();
  return out;
}

inline void check_word(const std::string& w, int dim) {
  if (w.empty()) throw SyntaxError(0, "an index word");
  unsigned seen = 0;
  for (char c : w) {
    int d = c - '0';
    if (d < 1 || d > dim) throw IndexOutOfRange(d, dim);
    if (seen & (1u << d)) throw DuplicateIndex(d);
    seen |= 1u << d;
  }
}

}  // namespace detail

inline CatalogEntry parse_entry_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());
  CatalogEntry e;
  e.source_file = file.string();
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(file.filename().string(), lineno, msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto [key, rest] = detail::cut(s);
    try {
      if (key == "id") {
        if (!e.id.empty()) throw fail("duplicate id directive");
        if (rest.empty()) throw fail("id needs a value");
        e.id = rest;
        continue;
      }
      if (e.id.empty()) throw fail("id must be the first directive");
      if (key == "dim") {
        e.dim = std::stoi(rest);
        if (e.dim < 1 || e.dim > 9) throw fail("dimension out of range");
      } else if (key == "tags") {
        for (auto& t : detail::split(rest, ' '))
          if (!t.empty()) e.tags.push_back(t);
      } else if (key == "equations") {
        e.equations = rest;
        e.algebra = LieAlgebra::parse(rest);
      } else if (key == "nil_equations") {
        e.nil_equations = rest;
        e.nil_algebra = LieAlgebra::parse(rest);
      } else if (key == "form") {
        auto [name, lit] = detail::cut(rest);
        if (name.empty() || lit.empty()) throw fail("form needs a name and a literal");
        if (!e.forms.emplace(name, Parser::form(lit, e.dim)).second)
          throw fail("duplicate form " + name);
      } else if (key == "coframe") {
        auto [name, lits] = detail::cut(rest);
        auto parts = detail::split(lits, '|');
        if ((int)parts.size() != e.dim) throw fail("coframe needs one covector per dimension");
        std::vector<FormK> rows;
        for (auto& p : parts) {
          FormK f = Parser::form(p, e.dim);
          if (!f.is_zero() && f.degree() != 1) throw fail("coframe rows must be 1-forms");
          rows.push_back(std::move(f));
        }
        if (!e.coframes.emplace(name, std::move(rows)).second)
          throw fail("duplicate coframe " + name);
      } else if (key == "generic") {
        auto [name, lit] = detail::cut(rest);
        if (name.empty() || lit.empty()) throw fail("generic needs a name and a literal");
        FormP piece = Parser::generic_form(lit, e.dim);
        auto it = e.generics.find(name);
        if (it == e.generics.end())
          e.generics.emplace(name, std::move(piece));
        else
          it->second = it->second + piece;
      } else if (key == "cert") {
        auto [name, spec] = detail::cut(rest);
        auto fields = detail::split(spec, '|');
        if (fields.size() != 4 || !fields[0].empty())
          throw fail("cert wants: cert <name> | <guards> | <X> | <Y>");
        ObstructionCase c;
        if (fields[1] != "-")
          for (auto& g : detail::split(fields[1], ','))
            if (!g.empty()) c.guards.push_back(g);
        c.X = Parser::vector(fields[2], e.dim);
        c.Y = Parser::vector(fields[3], e.dim);
        e.certs[name].cases.push_back(std::move(c));
      } else if (key == "block") {
        if (!e.block) e.block = BlockStructureProof{VecK(e.dim), {}, {}, ""};
        auto [what, val] = detail::cut(rest);
        if (what == "x") {
          e.block->X = detail::constant_vector(Parser::vector(val, e.dim));
        } else if (what == "zeros") {
          for (auto& pr : detail::split(val, ' ')) {
            if (pr.empty()) continue;
            auto ab = detail::split(pr, ':');
            if (ab.size() != 2) throw fail("zeros entries look like a:b");
            e.block->zero_pattern.emplace_back(std::stoi(ab[0]), std::stoi(ab[1]));
          }
        } else if (what == "subspace") {
          for (auto& ix : detail::split(val, ','))
            e.block->subspace.push_back(std::stoi(ix));
        } else if (what == "sigma") {
          detail::check_word(val, e.dim);
          e.block->sigma_word = val;
        } else {
          throw fail("unknown block field " + what);
        }
      } else if (key == "elim") {
        auto [what, val] = detail::cut(rest);
        ScriptStep st{EliminationStep::Kind::Conclude, "", ScalarK(0), ""};
        if (what == "normalize") {
          auto [var, lit] = detail::cut(val);
          st.kind = EliminationStep::Kind::NormalizeVariable;
          st.var = var;
          st.value = Parser::scalar(lit);
        } else if (what == "solve") {
          auto [word, var] = detail::cut(val);
          detail::check_word(word, e.dim);
          st.kind = EliminationStep::Kind::SolveLinear;
          st.word = word;
          st.var = var;
        } else if (what == "substitute") {
          st.kind = EliminationStep::Kind::Substitute;
          st.var = val;
        } else if (what == "conclude") {
          detail::check_word(val, e.dim);
          st.kind = EliminationStep::Kind::Conclude;
          st.word = val;
        } else {
          throw fail("unknown elimination step " + what);
        }
        if ((st.kind == EliminationStep::Kind::NormalizeVariable ||
             st.kind == EliminationStep::Kind::SolveLinear ||
             st.kind == EliminationStep::Kind::Substitute) &&
            st.var.empty())
          throw fail("elimination step needs a variable");
        e.script.push_back(std::move(st));
      } else if (key == "contact") {
        int ix = std::stoi(rest);
        if (ix < 1 || ix > e.dim) throw fail("contact index out of range");
        e.contact_xi = ix;
      } else if (key == "expected") {
        auto [name, val] = detail::cut(rest);
        if (name.empty() || val.empty()) throw fail("expected needs a key and a value");
        if (!e.expected.emplace(name, val).second) throw fail("duplicate expected key " + name);
      } else {
        throw fail("unknown directive " + key);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw fail(err.what());
    } catch (const std::invalid_argument&) {
      throw fail("malformed number");
    } catch (const std::out_of_range&) {
      throw fail("malformed number");
    }
  }

  if (e.id.empty()) return e;  // blank file: reported as no entry by the caller
  if (e.equations.empty()) throw ParseError(file.filename().string(), lineno, "missing equations");
  if (!e.algebra.jacobi_ok())
    throw InvariantViolation("catalog entry " + e.id + ": d^2 != 0 (Jacobi fails)");
  if (e.nil_algebra && !e.nil_algebra->jacobi_ok())
    throw InvariantViolation("catalog entry " + e.id + ": nil_equations fail Jacobi");
  if (e.block &&
      (e.block->X.is_zero() || e.block->zero_pattern.empty() || e.block->subspace.empty() ||
       e.block->sigma_word.empty()))
    throw InvariantViolation("catalog entry " + e.id + ": incomplete block proof");
  return e;
}

inline std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a catalog directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (auto& de : std::filesystem::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".entry") files.push_back(de.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> entries;
  std::set<std::string> ids;
  for (auto& f : files) {
    CatalogEntry e = parse_entry_file(f);
    if (e.id.empty()) continue;
    if (!ids.insert(e.id).second) throw InvariantViolation("duplicate catalog id " + e.id);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return natural_less(a.id, b.id); });
  return entries;
}

inline const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries,
                                      const std::string& id) {
  for (auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

}  // namespace sfc
