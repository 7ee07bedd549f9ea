#pragma once

#include <string>
#include <vector>

#include "iwa/kernel_verify.hpp"
#include "iwa/lazseries.hpp"

namespace iwa {

// Exact division in the associated graded (commutative) polynomial ring.
struct DivisionResult {
  bool divisible = false;
  HomPoly quotient;
};
DivisionResult graded_divides(const HomPoly& wm, const HomPoly& f);

// Homogeneous decomposition of a candidate together with the p-power
// levels s_d of its exponent supports.
struct NormalCandidate {
  int m = 0;                     // lowest degree
  int s = 0;                     // min over the s_d
  bool case_one = false;         // s == s_m
  std::map<int, HomPoly> parts;  // degree -> homogeneous part
  std::map<int, int> s_d;        // degree -> level (degrees >= 1 only)
};
NormalCandidate decompose_candidate(const Series& W);

// Outcome of the truncated principal-right-ideal membership test
// [y_gamma^{p^r}, W] = W * D_gamma(r) up to the degree budget.
struct MembershipWitness {
  enum class Status { Member, Obstructed, Inconclusive };
  Status status = Status::Member;
  Series quotient;          // D_gamma(r), valid to the budget on success
  Series residual;          // first non-divisible slice when obstructed
  int obstruction_degree = -1;
  int budget = 0;
};
MembershipWitness ideal_membership(const Series& W, int gamma_var, int r, int budget);

struct ObstructionReport {
  enum class Verdict { Obstructed, Unit, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  int gamma_var = -1;
  int degree = -1;
  int budget = 0;
};
ObstructionReport normal_obstruction(const Series& W, int budget);

// Some gamma-derivative of w_m at level s is nonzero (precondition:
// w_m in F_p[y^{p^s}] \ F_p[y^{p^{s+1}}]).
bool claim52_check(const HomPoly& wm, int s);

// w_d = w_m * u + v with u in F_p[y^{p^s}] and v in F_p[y^{p^{s+1}}].
struct Claim54Decomposition {
  HomPoly u, v;
};
Claim54Decomposition claim54_decompose(const HomPoly& wm, const HomPoly& wd, int s);

// Divisibility chase over the Dynkin diagram. Premises are the linear
// combinations delivered by the membership analysis; every conclusion is
// re-checked by graded_divides independently of the elimination path.
struct ChaseCertificate {
  struct Premise {
    std::string name;
    std::string desc;
    bool holds = false;
  };
  struct Step {
    int target_var = -1;
    std::vector<std::pair<int, int>> combo;  // (premise index, F_p coefficient)
    std::string desc;
  };
  struct Flag {
    int target_var = -1;
    std::string reason;
  };
  struct Conclusion {
    int var = -1;
    bool derived = false;   // reachable from the premises by F_p elimination
    bool verified = false;  // graded_divides holds on this instance
  };

  std::vector<Premise> premises;
  std::vector<Step> steps;
  std::vector<Flag> flags;
  std::vector<Conclusion> conclusions;
  std::string failed_premise;  // first premise that failed, empty if none

  bool premises_ok() const { return failed_premise.empty(); }
  bool conclusions_ok() const;
  bool ok() const { return premises_ok() && conclusions_ok(); }
};
ChaseCertificate diagram_chase(const RootSystem& rs, int p, const HomPoly& wm,
                               const HomPoly& wd, int s);

// Random w_d = w_m * u + v instance for chase sweeps.
struct ChaseInstance {
  HomPoly wm, wd, u, v;
};
ChaseInstance random_chase_instance(const RootSystem& rs, int p, int s, std::mt19937& rng);

}  // namespace iwa
