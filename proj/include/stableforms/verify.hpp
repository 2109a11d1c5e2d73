#pragma once

// Check runner: executes every verification a catalog entry carries data for
// and reconciles the outcome with the entry's recorded expectations.  A check
// that disagrees with its recorded status is a hard failure — expectations in
// the catalog are pinned, not advisory.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "curvature.hpp"
#include "obstructions.hpp"
#include "parse.hpp"
#include "report.hpp"
#include "structures.hpp"

namespace sfc {

// The reference positive 3-form and its dual on an orthonormal frame.  Every
// coframe stored in the catalog is interpreted as a pullback of these.
inline const FormK& standard_phi3() {
  static const FormK phi = Parser::form(
      "127 + 347 + 567 + 135 - 146 - 236 - 245", 7);
  return phi;
}

inline const FormK& standard_phi4() {
  static const FormK Phi = Parser::form(
      "1234 + 1256 + 1367 + 1457 + 2357 - 2467 + 3456", 7);
  return Phi;
}

struct EntryRun {
  std::vector<CheckResult> results;
  std::set<std::string> consumed;  // expectation keys that some check read
};

namespace detail {

class EntryChecker {
 public:
  explicit EntryChecker(const CatalogEntry& e) : e_(e) {}

  EntryRun run() {
    check_algebra();
    check_closed_forms();
    check_certificate();
    check_block();
    check_dual4();
    check_soliton_form();
    check_nilsoliton();
    check_reduction();
    check_bryant();
    check_contact();
    check_g2_verify();
    check_dual_render();
    return std::move(out_);
  }

 private:
  const CatalogEntry& e_;
  EntryRun out_;

  void add(const std::string& check, const std::string& status,
           const std::string& detail) {
    out_.results.push_back({e_.id, check, status, detail});
  }

  // Reads (and consumes) a recorded expectation.
  std::optional<std::string> expect(const std::string& key) {
    auto it = e_.expected.find(key);
    if (it == e_.expected.end()) return std::nullopt;
    out_.consumed.insert(key);
    return it->second;
  }

  // Emits the computed status unless it contradicts the recorded one.
  void conclude(const std::string& check, const std::string& key,
                const std::string& status, const std::string& detail) {
    auto want = expect(key);
    if (want && *want != status) {
      add(check, "fail",
          "computed status '" + status + "' but catalog records '" + *want +
              "'; " + detail);
      return;
    }
    add(check, status, detail);
  }

  template <class F>
  void guarded(const std::string& check, F&& body) {
    try {
      body();
    } catch (const Error& ex) {
      add(check, "fail", ex.what());
    }
  }

  static std::string join(const std::vector<int>& xs) {
    std::string s;
    for (int x : xs) {
      if (!s.empty()) s += ",";
      s += std::to_string(x);
    }
    return s.empty() ? "none" : s;
  }

  static std::string first_difference(const std::string& a,
                                      const std::string& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    auto window = [&](const std::string& s) {
      std::size_t from = i < 12 ? 0 : i - 12;
      return s.substr(from, 32);
    };
    return "'..." + window(a) + "...' vs '..." + window(b) + "...'";
  }

  // --- individual checks -------------------------------------------------

  // Nilpotency step and the set of closed central directions.  Runs on every
  // entry; both values are pinned in the catalog.
  void check_algebra() {
    guarded("algebra", [&] {
      int step = e_.algebra.nilpotency_step();
      std::vector<int> witness;
      for (int i = 1; i <= e_.algebra.dim(); ++i) {
        if (e_.algebra.is_central(VecK::basis(e_.algebra.dim(), i)) &&
            e_.algebra.d_generator(i).is_zero())
          witness.push_back(i);
      }
      if (auto want = expect("step")) {
        if (std::stoi(*want) != step) {
          add("algebra", "fail",
              "nilpotency step " + std::to_string(step) + " but catalog records " +
                  *want);
          return;
        }
      }
      std::string wjoin = join(witness);
      if (auto want = expect("witness")) {
        if (*want != wjoin) {
          add("algebra", "fail",
              "closed central directions {" + wjoin + "} but catalog records {" +
                  *want + "}");
          return;
        }
      }
      std::string detail =
          std::to_string(e_.algebra.dim()) + "d, step " + std::to_string(step) +
          ", closed central directions {" + wjoin + "}";
      if (e_.nil_algebra) {
        detail += "; adapted-basis presentation is step " +
                  std::to_string(e_.nil_algebra->nilpotency_step());
      }
      add("algebra", "pass", detail);
    });
  }

  // Dimension of the closed 4-forms and, when the entry records a general
  // closed 4-form, byte comparison of the echelonized renderings.
  void check_closed_forms() {
    auto want_dim = expect("closed4_dim");
    bool have_gen = e_.generics.count("closed4") != 0;
    if (!want_dim && !have_gen) return;
    guarded("closed-forms", [&] {
      GenericClosedForm mine = closed_forms(e_.algebra, 4);
      if (want_dim && std::stoi(*want_dim) != mine.dimension()) {
        add("closed-forms", "fail",
            "closed 4-form space has dim " + std::to_string(mine.dimension()) +
                " but catalog records " + *want_dim);
        return;
      }
      std::string detail = "dim " + std::to_string(mine.dimension());
      if (!have_gen) {
        add("closed-forms", "pass", detail);
        return;
      }
      GenericClosedForm theirs =
          echelonize_generic(e_.algebra, e_.generics.at("closed4"), 4);
      std::string a = mine.render(), b = theirs.render();
      if (a == b) {
        conclude("closed-forms", "closed4", "pass",
                 detail + "; recorded general closed 4-form matches");
      } else {
        conclude("closed-forms", "closed4", "flag",
                 detail + "; recorded general 4-form echelonizes to dim " +
                     std::to_string(theirs.dimension()) +
                     " and differs from the computed one at " +
                     first_difference(a, b));
      }
    });
  }

  void check_certificate() {
    if (e_.certs.empty()) return;
    guarded("certificate", [&] {
      auto primary = e_.certs.find("printed");
      if (primary == e_.certs.end()) primary = e_.certs.begin();
      std::string status = "pass", detail;
      try {
        ObstructionReport rep = check_obs3(e_.algebra, primary->second);
        detail = std::to_string(rep.cases.size()) +
                 " case(s); every squared contraction vanishes; coverage ok";
      } catch (const Error& ex) {
        auto fixed = e_.certs.find("corrected");
        if (fixed == e_.certs.end()) throw;
        ObstructionReport rep = check_obs3(e_.algebra, fixed->second);
        status = "flag";
        detail = std::string("recorded vectors fail (") + ex.what() +
                 "); corrected vectors verify with " +
                 std::to_string(rep.cases.size()) + " case(s)";
      }
      conclude("certificate", "certificate", status, detail);
    });
  }

  void check_block() {
    if (!e_.block) return;
    guarded("block", [&] {
      BlockStructureReport rep = check_block_structure(e_.algebra, *e_.block);
      std::string detail =
          std::to_string(rep.pattern_entries) +
          " zero entries; subspace invariant; sigma coefficient forced to 0";
      conclude("block", "block", rep.obstructed ? "pass" : "fail", detail);
    });
  }

  // A closed 4-form recorded together with the orthonormal coframe whose
  // pulled-back reference 3-form has it as Hodge dual.
  void check_dual4() {
    auto it = e_.forms.find("dual4");
    if (it == e_.forms.end()) return;
    guarded("dual4", [&] {
      const FormK& Phi = it->second;
      auto cf = e_.coframes.find("dual4");
      if (cf == e_.coframes.end()) {
        add("dual4", "fail", "recorded dual 4-form has no coframe");
        return;
      }
      if (!e_.algebra.d(Phi).is_zero()) {
        add("dual4", "fail", "recorded 4-form is not closed");
        return;
      }
      FormK phi = pullback(standard_phi3(), cf->second);
      G2Report rep = verify_g2(e_.algebra, phi);
      if (!rep.positive) {
        add("dual4", "fail", "coframe 3-form is not positive");
        return;
      }
      if (!(rep.metric->g == Matrix<ScalarK>::identity(7))) {
        add("dual4", "fail", "coframe is not orthonormal for the induced metric");
        return;
      }
      if (!(*rep.Phi == Phi)) {
        add("dual4", "fail",
            "Hodge dual of the coframe 3-form differs from the recorded 4-form by " +
                (*rep.Phi - Phi).str());
        return;
      }
      std::string status = "pass";
      std::string detail =
          "closed; equals the dual of a positive coframe 3-form; metric identity";
      auto printed = e_.forms.find("dual4_printed");
      if (printed != e_.forms.end()) {
        status = "flag";
        detail += "; recorded variant differs by " +
                  (printed->second - Phi).str();
      }
      conclude("dual4", "dual4", status, detail);
    });
  }

  // The coclosed 3-form of a soliton entry, plus its coframe presentation and
  // any printed variants that disagree with it.
  void check_soliton_form() {
    auto it = e_.forms.find("soliton3");
    if (it == e_.forms.end()) return;
    guarded("soliton-form", [&] {
      const LieAlgebra& g = e_.soliton_algebra();
      const FormK& phi = it->second;
      G2Report rep = verify_g2(g, phi);
      if (!rep.positive) {
        add("soliton-form", "fail", "recorded 3-form is not positive");
        return;
      }
      if (!(rep.metric->g == Matrix<ScalarK>::identity(7))) {
        add("soliton-form", "fail", "induced metric is not the identity");
        return;
      }
      if (!rep.coclosed) {
        add("soliton-form", "fail", "recorded 3-form is not coclosed");
        return;
      }
      std::string status = "pass";
      std::string detail = "positive, coclosed, metric identity";
      auto cf = e_.coframes.find("soliton3");
      if (cf != e_.coframes.end()) {
        bool match = pullback(standard_phi3(), cf->second) == phi;
        std::string got = match ? "match" : "mismatch";
        if (auto want = expect("coframe_pullback"); want && *want != got) {
          add("soliton-form", "fail",
              "coframe pullback " + got + " but catalog records " + *want);
          return;
        }
        if (match) {
          detail += "; coframe reproduces the 3-form";
        } else {
          status = "flag";
          detail += "; recorded coframe does not reproduce the recorded 3-form";
        }
      }
      auto pf = e_.forms.find("soliton3_printed");
      if (pf != e_.forms.end()) {
        status = "flag";
        detail += "; recorded variant differs by " + (pf->second - phi).str();
        try {
          G2Report prep = verify_g2(g, pf->second);
          if (!prep.positive)
            detail += " and is not positive";
          else if (!prep.coclosed)
            detail += " and is not coclosed";
          else if (!(prep.metric->g == Matrix<ScalarK>::identity(7)))
            detail += " and has non-identity metric";
          else
            detail += " yet passes in isolation";
        } catch (const Error& ex) {
          detail += std::string(" and fails verification (") + ex.what() + ")";
        }
      }
      conclude("soliton-form", "soliton3", status, detail);
    });
  }

  void check_nilsoliton() {
    auto want_lambda = expect("lambda");
    if (!want_lambda) return;
    guarded("nilsoliton", [&] {
      const LieAlgebra& g = e_.soliton_algebra();
      int n = g.dim();
      NilsolitonReport rep = nilsoliton_check(g, Metric::identity(n));
      if (!rep.lambda) {
        add("nilsoliton", "fail", "Ric - lambda*Id is not a derivation for any lambda");
        return;
      }
      ScalarK want = Parser::scalar(*want_lambda);
      if (!(*rep.lambda == want)) {
        add("nilsoliton", "fail",
            "soliton constant " + rep.lambda->str() + " but catalog records " +
                *want_lambda);
        return;
      }
      if (!(rep.residual == Matrix<ScalarK>(n * (n - 1) / 2, n))) {
        add("nilsoliton", "fail", "derivation defect of Ric - lambda*Id is nonzero");
        return;
      }
      std::string detail = "Ric = lambda*Id + D with lambda = " +
                           rep.lambda->str() + " and D a derivation";
      if (auto rd = expect("ricci_diag")) {
        std::vector<std::string> parts = sfc::detail::split(*rd, ',');
        if ((int)parts.size() != n) {
          add("nilsoliton", "fail", "recorded Ricci diagonal has wrong length");
          return;
        }
        Matrix<ScalarK> diag(n, n);
        for (int i = 0; i < n; ++i) diag.at(i, i) = Parser::scalar(parts[i]);
        if (!(rep.ric == diag)) {
          add("nilsoliton", "fail", "Ricci operator differs from the recorded diagonal");
          return;
        }
        detail += "; Ricci diagonal as recorded";
      }
      add("nilsoliton", "pass", detail);
    });
  }

  // Reduction along the last basis direction, the split of the Hodge dual,
  // half-flatness, and (when half-flat) the lift back to a coclosed 3-form.
  void check_reduction() {
    auto want_hf = expect("halfflat");
    if (!want_hf) return;
    guarded("reduction", [&] {
      const LieAlgebra& g = e_.soliton_algebra();
      G2Structure G = make_g2(g, e_.forms.at("soliton3"));
      SU3Structure S = su3_reduce(G, VecK::basis(7, 7));
      SU3Report rep = verify_su3(S);
      if (!rep.all()) {
        add("reduction", "fail", "reduced pair fails the stable-pair checks");
        return;
      }
      if (!(S.h.g == Matrix<ScalarK>::identity(6))) {
        add("reduction", "fail", "reduced metric is not the identity");
        return;
      }
      if (!(S.lambda == ScalarK(-4))) {
        add("reduction", "fail",
            "stability invariant is " + S.lambda.str() + ", expected -4");
        return;
      }
      FormK split = embed_in_line_extension(S.sigma) +
                    wedge(embed_in_line_extension(S.psi_minus), FormK::covector(7, 7));
      if (!(split == G.Phi)) {
        add("reduction", "fail",
            "Hodge dual does not split as sigma + psi_minus ^ e7");
        return;
      }
      bool hf = is_half_flat(S);
      bool want = (*want_hf == "true");
      if (hf != want) {
        add("reduction", "fail",
            std::string("half-flat is ") + (hf ? "true" : "false") +
                " but catalog records " + *want_hf);
        return;
      }
      std::string detail = "dual splits; reduced metric identity; invariant -4";
      if (hf) {
        G2Structure L = coclosed_from_half_flat(S);
        if (!(L.phi == G.phi)) {
          add("reduction", "fail", "line-extension lift does not recover the 3-form");
          return;
        }
        detail += "; half-flat, lift recovers the coclosed 3-form";
      } else {
        detail += "; not half-flat";
      }
      add("reduction", "pass", detail);
    });
  }

  // One-parameter closed-form family: expand d(star) of the recorded family,
  // compare coefficientwise against the recorded expansion, then replay the
  // recorded elimination to the no-real-solution witness.
  void check_bryant() {
    if (e_.script.empty()) return;
    guarded("bryant", [&] {
      auto gen = e_.generics.find("dstar");
      if (gen == e_.generics.end()) {
        add("bryant", "fail", "elimination script without a recorded expansion");
        return;
      }
      const LieAlgebra& g = e_.soliton_algebra();
      G2Structure G = make_g2(g, standard_phi3());
      VecP alpha(7);
      for (int j = 0; j < 7; ++j)
        alpha.x[j] = PolyK::var("al" + std::to_string(j + 1));
      BryantForms fam = bryant_family(G, PolyK::var("a"), alpha);
      FormP dstar = g.d(fam.star);

      // Support and per-coefficient comparison against the recorded expansion.
      const FormP& printed = gen->second;
      std::vector<int> flagged;
      std::vector<unsigned long> masks;
      for (unsigned long m : blades(7, 5)) {
        PolyK mine = dstar.coeff(m), theirs = printed.coeff(m);
        if (mine.is_zero() && theirs.is_zero()) continue;
        if (mine.is_zero() != theirs.is_zero()) {
          add("bryant", "fail",
              "support mismatch at " + FormP::blade(7, m).str() +
                  " between computed and recorded expansions");
          return;
        }
        masks.push_back(m);
        if (!(mine == theirs)) flagged.push_back((int)masks.size());
      }
      std::string flags;
      for (unsigned long m : masks) {
        PolyK diff = dstar.coeff(m) - printed.coeff(m);
        if (diff.is_zero()) continue;
        if (!flags.empty()) flags += ",";
        std::string word;
        for (int b = 0; b < 7; ++b)
          if (m & (1ul << b)) word += std::to_string(b + 1);
        flags += word;
      }
      if (auto want = expect("dstar_flags")) {
        std::string got = flags.empty() ? "none" : flags;
        if (got != *want) {
          add("bryant", "fail",
              "coefficient mismatches at {" + got + "} but catalog records {" +
                  *want + "}");
          return;
        }
      }

      // Replay the elimination on the computed coefficients.
      std::vector<PolyK> eqs;
      std::map<std::string, int> index;
      for (unsigned long m : masks) {
        std::string word;
        for (int b = 0; b < 7; ++b)
          if (m & (1ul << b)) word += std::to_string(b + 1);
        index[word] = (int)eqs.size();
        eqs.push_back(dstar.coeff(m));
      }
      std::vector<EliminationStep> steps;
      for (const ScriptStep& s : e_.script) {
        int eq = 0;
        if (!s.word.empty()) {
          auto at = index.find(s.word);
          if (at == index.end()) {
            add("bryant", "fail", "script refers to absent word " + s.word);
            return;
          }
          eq = at->second;
        }
        switch (s.kind) {
          case EliminationStep::Kind::NormalizeVariable:
            steps.push_back(EliminationStep::normalize(s.var, s.value));
            break;
          case EliminationStep::Kind::SolveLinear:
            steps.push_back(EliminationStep::solve(eq, s.var));
            break;
          case EliminationStep::Kind::Substitute:
            steps.push_back(EliminationStep::substitute(s.var));
            break;
          case EliminationStep::Kind::Conclude:
            steps.push_back(EliminationStep::conclude(eq));
            break;
        }
      }
      EliminationReport erep = elimination_check(eqs, steps);
      if (erep.outcome != EliminationOutcome::NoRealSolution) {
        add("bryant", "fail",
            std::string("elimination ends ") +
                elimination_outcome_name(erep.outcome) +
                ", expected no-real-solution");
        return;
      }
      std::string wit = erep.witness ? erep.witness->str() : "";
      if (auto want = expect("elim_witness"); want && *want != wit) {
        add("bryant", "fail",
            "witness '" + wit + "' but catalog records '" + *want + "'");
        return;
      }
      std::string status = flags.empty() ? "pass" : "flag";
      std::string detail = std::to_string(masks.size()) +
                           " equations; elimination forces " + wit +
                           " = 0, impossible over the reals";
      if (!flags.empty())
        detail += "; recorded coefficients differ at {" + flags + "}";
      conclude("bryant", "bryant", status, detail);
    });
  }

  void check_contact() {
    if (!e_.contact_xi) return;
    guarded("contact", [&] {
      const LieAlgebra& g = e_.soliton_algebra();
      int n = g.dim();
      ContactReport rep =
          contact_check(g, Metric::identity(n), VecK::basis(n, *e_.contact_xi));
      auto check_bool = [&](const char* key, bool got) -> bool {
        if (auto want = expect(key)) {
          bool w = (*want == "true");
          if (w != got) {
            add("contact", "fail",
                std::string(key) + " is " + (got ? "true" : "false") +
                    " but catalog records " + *want);
            return false;
          }
        }
        return true;
      };
      if (!check_bool("contact", rep.contact)) return;
      if (!rep.contact_metric) {
        add("contact", "fail", "metric is not an associated contact metric");
        return;
      }
      if (auto want = expect("contact_scale")) {
        ScalarK w = Parser::scalar(*want);
        if (!(rep.scale == w)) {
          add("contact", "fail",
              "squared-endomorphism scale " + rep.scale.str() +
                  " but catalog records " + *want);
          return;
        }
      }
      if (!check_bool("kcontact", rep.k_contact)) return;
      add("contact", "pass",
          "eta ^ (d eta)^k is a volume form; contact metric with scale " +
              rep.scale.str() +
              (rep.k_contact ? "; Reeb field Killing (K-contact)"
                             : "; Reeb field not Killing"));
    });
  }

  void check_g2_verify() {
    auto it = e_.forms.find("phi");
    if (it == e_.forms.end()) return;
    guarded("g2-verify", [&] {
      G2Report rep = verify_g2(e_.algebra, it->second);
      if (!rep.positive) {
        add("g2-verify", "fail", "recorded 3-form is not positive");
        return;
      }
      if (!(rep.metric->g == Matrix<ScalarK>::identity(7))) {
        add("g2-verify", "fail", "induced metric is not the identity");
        return;
      }
      if (!rep.coclosed) {
        add("g2-verify", "fail", "recorded 3-form is not coclosed");
        return;
      }
      conclude("g2-verify", "phi", "pass",
               std::string("positive, metric identity, coclosed") +
                   (rep.closed ? ", closed" : ", not closed"));
    });
  }

  void check_dual_render() {
    auto it = e_.forms.find("star_printed");
    if (it == e_.forms.end()) return;
    guarded("dual-render", [&] {
      auto phi = e_.forms.find("phi");
      if (phi == e_.forms.end()) {
        add("dual-render", "fail", "recorded dual without a recorded 3-form");
        return;
      }
      G2Structure G = make_g2(e_.algebra, phi->second);
      if (G.Phi == it->second) {
        conclude("dual-render", "star_printed", "pass", "recorded dual matches");
        return;
      }
      FormK diff = it->second - G.Phi;
      std::string detail =
          "recorded dual differs from the computed one by " + diff.str();
      detail += e_.algebra.d(it->second).is_zero()
                    ? "; recorded variant is closed"
                    : "; recorded variant is not even closed";
      conclude("dual-render", "star_printed", "flag", detail);
    });
  }
};

}  // namespace detail

inline EntryRun run_entry_checks(const CatalogEntry& e) {
  detail::EntryChecker checker(e);
  EntryRun run = checker.run();
  // Expectations no check consumed are stale catalog data: fail loudly.
  std::string leftover;
  for (const auto& [key, value] : e.expected) {
    if (run.consumed.count(key)) continue;
    if (!leftover.empty()) leftover += ", ";
    leftover += key;
  }
  if (!leftover.empty())
    run.results.push_back(
        {e.id, "expectations", "fail", "unconsumed expected keys: " + leftover});
  return run;
}

inline std::vector<CheckResult> run_catalog(
    const std::vector<CatalogEntry>& entries,
    const std::optional<std::string>& only = std::nullopt) {
  std::vector<CheckResult> all;
  for (const CatalogEntry& e : entries) {
    if (only && e.id != *only) continue;
    EntryRun run = run_entry_checks(e);
    all.insert(all.end(), run.results.begin(), run.results.end());
  }
  sort_results(all);
  return all;
}

}  // namespace sfc
