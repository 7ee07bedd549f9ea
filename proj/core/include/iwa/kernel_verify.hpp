#pragma once

#include <random>
#include <string>
#include <vector>

#include "iwa/lazseries.hpp"

namespace iwa {

// The four commutator shapes between Lazard generators.
enum class CaseTag { NonAdjacent, SumIsRoot, RootVsTorus, Opposite };

std::string case_tag_name(CaseTag t);

struct CommutatorCase {
  CaseTag tag;
  int r = 0, s = 0;
  int a1 = -1;     // root index (first argument)
  int a2 = -1;     // root index (second argument; cases 1, 2, 4)
  int delta = -1;  // simple-root number (case 3)
};

// Predicted lowest-degree part of a generator commutator.
struct LeadingTermFormula {
  enum class Kind { Zero, Exact, SupportOnly };
  Kind kind = Kind::Zero;
  std::string provenance;         // generic | p5-E8 | p3-opposite | p3-c11=3 | p3-cartan3
  long long degree = 0;           // p^{r+s+1} or p^{r+s+2}
  std::map<int, int> coeffs;      // Exact: variable -> coefficient of y_var^degree
  std::vector<int> support_vars;  // SupportOnly: allowed variables at y^degree
  int required_var = -1;          // SupportOnly: coefficient that must not vanish
};

struct BetaDigits {
  std::vector<int> digits;  // beta_0 ... beta_{K-1}
};

// Digits of beta with (1+p)^beta = (1+p^{r+s+2})^{-1}, matched level by level.
BetaDigits beta_digits(long long p, int r, int s, int K);

LeadingTermFormula expected_leading_term(const RootSystem& rs, long long p,
                                         const CommutatorCase& c);

enum class Verdict { Pass, Fail, Vacuous, Inconclusive, Skipped };
std::string verdict_name(Verdict v);

struct VerificationReport {
  std::string kind;  // "prop31" or "pde"
  std::string case_desc;
  std::string expected_desc;
  std::string observed_desc;
  Verdict verdict = Verdict::Pass;
  std::string note;
};

// Oracle leading term of [y_a^{p^r}, y_b^{p^s}] straight from the matrix
// model (ordered-product expansion of the two group products).
struct PairLeadingTerm {
  bool zero = false;  // the two group elements commute exactly
  HomPoly lt;
};
PairLeadingTerm pair_leading_term(const Ctx& ctx, int var_a, int var_b, int r, int s);

VerificationReport verify_prop31(const Ctx& ctx, const CommutatorCase& c);

// Lemma check: leading term of [y_gamma^{p^r}, w] against the derivative
// expansion over the verified pair table. w must live in F_p[y^{p^s}].
VerificationReport verify_pde(const Ctx& ctx, const Series& w, int gamma_var, int r, int s);

std::vector<CommutatorCase> enumerate_cases(const RootSystem& rs, CaseTag tag, int r, int s);

// Full sweep of one (type, p, r, s) cell over all four cases; emits a
// Vacuous report for a case with no qualifying pair.
std::vector<VerificationReport> sweep_prop31(std::shared_ptr<const RootSystem> rs,
                                             long long p, int r, int s,
                                             int trunc_override = -1,
                                             int prec_override = -1);

// Seeded random Lemma-4.1 sweep; instances with identically-zero derivative
// expansion are resampled (the resample count is recorded in the notes).
std::vector<VerificationReport> sweep_pde(std::shared_ptr<const RootSystem> rs, long long p,
                                          int r, int s, int samples, unsigned seed,
                                          int trunc_override = -1,
                                          int prec_override = -1);

std::string hom_to_string(const HomPoly& h, const RootSystem& rs);

}  // namespace iwa
