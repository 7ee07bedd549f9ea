#include "iwa/normality.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "iwa/errors.hpp"
#include "iwa/fp.hpp"

namespace iwa {

DivisionResult graded_divides(const HomPoly& wm, const HomPoly& f) {
  if (wm.zero()) throw DomainError("graded_divides: zero divisor");
  DivisionResult out;
  out.quotient = hom_zero(wm.p, wm.nvars);
  out.quotient.degree = std::max(0, f.degree - wm.degree);
  if (f.zero()) {
    out.divisible = true;
    return out;
  }
  if (f.degree < wm.degree) return out;
  const auto& lead_w = *wm.terms.rbegin();  // largest in lex, degree is uniform
  HomPoly rem = f;
  while (!rem.zero()) {
    const auto& lead_r = *rem.terms.rbegin();
    std::vector<int> q(wm.nvars);
    bool fits = true;
    for (int v = 0; v < wm.nvars; ++v) {
      q[v] = lead_r.first[v] - lead_w.first[v];
      if (q[v] < 0) {
        fits = false;
        break;
      }
    }
    if (!fits) return out;  // leading monomial not divisible; f not a multiple
    int qc = fp::mul(lead_r.second, fp::inv(lead_w.second, wm.p), wm.p);
    HomPoly qmono = hom_monomial(wm.p, wm.nvars, q, qc);
    out.quotient = hom_add(out.quotient, qmono);
    rem = hom_sub(rem, hom_mul(qmono, wm));
  }
  out.divisible = true;
  if (out.quotient.zero()) out.quotient.degree = std::max(0, f.degree - wm.degree);
  return out;
}

NormalCandidate decompose_candidate(const Series& W) {
  if (is_zero(W)) throw DomainError("decompose_candidate: zero series");
  NormalCandidate out;
  int p = W.ctx->p();
  out.m = min_degree(W);
  for (const auto& [mono, c] : W.terms) {
    auto it = out.parts.find(mono.deg);
    if (it == out.parts.end()) {
      HomPoly h = hom_zero(p, W.ctx->nvars());
      h.degree = mono.deg;
      it = out.parts.emplace(mono.deg, std::move(h)).first;
    }
    it->second.terms[mono.e] = c;
  }
  out.s = -1;
  for (const auto& [deg, part] : out.parts) {
    if (deg == 0) continue;
    int sd = common_exponent_level(part, p);
    out.s_d[deg] = sd;
    if (out.s < 0 || sd < out.s) out.s = sd;
  }
  if (out.s < 0) out.s = 0;  // constant-only candidate
  auto it = out.s_d.find(out.m);
  out.case_one = (it != out.s_d.end() && it->second == out.s);
  return out;
}

MembershipWitness ideal_membership(const Series& W, int gamma_var, int r, int budget) {
  if (is_zero(W)) throw DomainError("ideal_membership: zero candidate");
  if (budget > W.trunc)
    throw ConfigError("ideal_membership: budget exceeds the candidate's truncation");
  const Ctx& ctx = W.ctx;
  const Model& M = ctx->model();
  int p = ctx->p();

  MembershipWitness out;
  out.budget = budget;
  out.quotient = series_zero(ctx, budget);
  out.residual = series_zero(ctx, budget);

  int m = min_degree(W);
  HomPoly wm = hom_slice(W, m);

  Series Wb = series_zero(ctx, budget);
  for (const auto& [mono, c] : W.terms)
    if (mono.deg <= budget) Wb.terms.emplace(mono, c);

  GroupElement A = M.power(M.basis_element(gamma_var), ipow(p, r));
  Series aser = element_to_series(ctx, A, budget);
  Series comm = sub(multiply(aser, Wb), multiply(Wb, aser));
  bool comm_zero = is_zero(comm);

  Series S = comm;
  for (int t = m; t <= budget; ++t) {
    HomPoly Rt = hom_slice(S, t);
    if (Rt.zero()) continue;
    DivisionResult div = graded_divides(wm, Rt);
    if (!div.divisible) {
      out.status = MembershipWitness::Status::Obstructed;
      out.obstruction_degree = t;
      out.residual = lift(ctx, Rt, budget);
      return out;
    }
    Series q = lift(ctx, div.quotient, budget);
    out.quotient = add(out.quotient, q);
    S = sub(S, multiply(Wb, q));
  }
  assert(is_zero(S));
  // a commutator invisible below m + p - 1 says nothing about membership
  if (comm_zero && budget < m + p - 1)
    out.status = MembershipWitness::Status::Inconclusive;
  return out;
}

ObstructionReport normal_obstruction(const Series& W, int budget) {
  if (is_zero(W)) throw DomainError("normal_obstruction: zero candidate");
  ObstructionReport rep;
  rep.budget = budget;
  if (W.terms.begin()->first.is_unit()) {
    rep.verdict = ObstructionReport::Verdict::Unit;
    return rep;
  }
  for (int gamma = 0; gamma < W.ctx->nvars(); ++gamma) {
    MembershipWitness w = ideal_membership(W, gamma, 0, budget);
    if (w.status == MembershipWitness::Status::Obstructed) {
      rep.verdict = ObstructionReport::Verdict::Obstructed;
      rep.gamma_var = gamma;
      rep.degree = w.obstruction_degree;
      return rep;
    }
  }
  rep.verdict = ObstructionReport::Verdict::Inconclusive;
  return rep;
}

bool claim52_check(const HomPoly& wm, int s) {
  long long ps = ipow(wm.p, s);
  if (!hom_in_power_ring(wm, ps) || hom_in_power_ring(wm, ps * wm.p))
    throw DomainError("claim52_check: w_m must be in F_p[y^{p^s}] \\ F_p[y^{p^{s+1}}]");
  for (int v = 0; v < wm.nvars; ++v)
    if (!hom_partial(wm, v, ps).zero()) return true;
  return false;
}

Claim54Decomposition claim54_decompose(const HomPoly& wm, const HomPoly& wd, int s) {
  int p = wm.p;
  long long ps = ipow(p, s);
  if (!hom_in_power_ring(wd, ps))
    throw DomainError("claim54_decompose: w_d must be a polynomial in y^{p^s}");
  // split each monomial by the digit vector of its exponents at level p^s
  std::map<std::vector<int>, HomPoly> groups;  // digit vector -> h_{n}(y^{p^{s+1}})
  for (const auto& [e, c] : wd.terms) {
    std::vector<int> digits(wd.nvars), base(wd.nvars);
    int digit_deg = 0;
    for (int v = 0; v < wd.nvars; ++v) {
      int n = int((e[v] / ps) % p);
      digits[v] = n;
      base[v] = e[v] - int(ps) * n;
      digit_deg += int(ps) * n;
    }
    auto it = groups.find(digits);
    if (it == groups.end()) {
      HomPoly h = hom_zero(p, wd.nvars);
      h.degree = wd.degree - digit_deg;
      it = groups.emplace(std::move(digits), std::move(h)).first;
    }
    it->second.terms[base] = c;
  }
  Claim54Decomposition out;
  out.u = hom_zero(p, wd.nvars);
  out.u.degree = wd.degree - wm.degree;
  out.v = hom_zero(p, wd.nvars);
  out.v.degree = wd.degree;
  for (const auto& [digits, h] : groups) {
    bool zero_digits =
        std::all_of(digits.begin(), digits.end(), [](int v) { return v == 0; });
    if (zero_digits) {
      out.v = h;
      continue;
    }
    std::vector<int> shift(wd.nvars);
    for (int v = 0; v < wd.nvars; ++v) shift[v] = int(ps) * digits[v];
    HomPoly shift_mono = hom_monomial(p, wd.nvars, shift, 1);
    DivisionResult div = graded_divides(wm, h);
    if (div.divisible) {
      out.u = hom_add(out.u, hom_mul(shift_mono, div.quotient));
      continue;
    }
    // h itself need not be a multiple when w_m leaves F_p[y^{p^{s+1}}];
    // the whole digit block can still divide as a plain polynomial.
    DivisionResult whole = graded_divides(wm, hom_mul(shift_mono, h));
    if (!whole.divisible || !hom_in_power_ring(whole.quotient, ps))
      throw DomainError("claim54_decompose: divisibility certification missing");
    out.u = hom_add(out.u, whole.quotient);
  }
  // fold a divisible tail of v into u when the quotient stays in F_p[y^{p^s}],
  // so that w_d = w_m recovers (u, v) = (1, 0)
  if (!out.v.zero()) {
    DivisionResult div = graded_divides(wm, out.v);
    if (div.divisible && hom_in_power_ring(div.quotient, ps)) {
      out.u = hom_add(out.u, div.quotient);
      out.v = hom_zero(p, wd.nvars);
      out.v.degree = wd.degree;
    }
  }
  HomPoly check = hom_add(hom_mul(wm, out.u), out.v);
  if (!hom_equal(check, wd))
    throw DomainError("claim54_decompose: reconstruction failed");
  return out;
}

bool ChaseCertificate::conclusions_ok() const {
  for (const auto& c : conclusions)
    if (!c.verified) return false;
  return true;
}

namespace {

std::vector<long long> coroot_coeffs_of(const RootSystem& rs, const Root& alpha) {
  std::vector<long long> c(rs.rank());
  long long na = rs.norm2(alpha);
  for (int i = 0; i < rs.rank(); ++i) {
    long long num = (long long)alpha.coeffs[i] * rs.norm2(rs.simple_root(i));
    assert(num % na == 0);
    c[i] = num / na;
  }
  return c;
}

}  // namespace

ChaseCertificate diagram_chase(const RootSystem& rs, int p, const HomPoly& wm,
                               const HomPoly& wd, int s) {
  long long ps = ipow(p, s);
  if (wm.zero()) throw DomainError("diagram_chase: zero w_m");
  if (!hom_in_power_ring(wd, ps))
    throw DomainError("diagram_chase: w_d must be a polynomial in y^{p^s}");

  ChaseCertificate cert;
  int l = rs.rank();

  // torus derivatives x_j and root-variable derivatives
  std::vector<HomPoly> xt;
  for (int j = 0; j < l; ++j) xt.push_back(hom_partial(wd, rs.var_of_torus(j), ps));

  auto note_premise = [&](std::string name, std::string desc, bool holds) {
    if (!holds && cert.failed_premise.empty()) cert.failed_premise = name;
    cert.premises.push_back({std::move(name), std::move(desc), holds});
    return int(cert.premises.size()) - 1;
  };

  // Probe rows: alpha_max first, then the simple roots. Each probe gamma
  // contributes the pair +-gamma, which strips the appended y_gamma power
  // and leaves the Cartan-weighted combination of torus derivatives.
  std::vector<int> probe_roots;
  probe_roots.push_back(rs.root_index(rs.highest_root()));
  for (int i = 0; i < l; ++i) probe_roots.push_back(rs.simple_root_index(i));

  std::vector<std::vector<int>> rows;  // F_p rows over the torus targets
  std::vector<int> row_premise;
  for (int pr : probe_roots) {
    const Root& g = rs.root(pr);
    HomPoly comb = hom_zero(p, wd.nvars);
    std::vector<int> row(l, 0);
    for (int j = 0; j < l; ++j) {
      int ci = rs.cartan_integer(g, j);
      row[j] = fp::norm(ci, p);
      if (ci != 0) comb = hom_add(comb, hom_scale(xt[j], ci));
    }
    bool holds = graded_divides(wm, comb).divisible;
    std::ostringstream desc;
    desc << "w_m | sum_j <" << rs.root_name(pr) << ",d_j>*dw_d/dy[d_j]^"
         << ps << "  (pair +-" << rs.root_name(pr) << ")";
    int idx = note_premise("torus[" + rs.root_name(pr) + "]", desc.str(), holds);
    rows.push_back(std::move(row));
    row_premise.push_back(idx);
  }

  // Root-variable conclusions via the +-gamma cofactor pairing.
  for (int g = 0; g < rs.num_roots(); ++g) {
    int var = rs.var_of_root(g);
    HomPoly xg = hom_partial(wd, var, ps);
    if (xg.zero()) {
      cert.conclusions.push_back({var, true, true});
      continue;
    }
    auto cr = coroot_coeffs_of(rs, rs.root(g));
    int anchor = -1;
    for (int i = 0; i < l; ++i)
      if (fp::norm(cr[i], p) != 0) {
        anchor = i;
        break;
      }
    long long e_torus = ps * p - 1;  // p^{r+s+1} - p^r at r = 0
    long long e_self = ps * p;       // p^{r+s+1} at r = 0
    bool h1 = true, h2 = true;
    {
      std::vector<int> mult(wd.nvars, 0);
      mult[rs.var_of_torus(anchor)] = int(e_torus);
      h1 = graded_divides(wm, hom_mul(xg, hom_monomial(p, wd.nvars, mult, 1))).divisible;
      std::ostringstream desc;
      desc << "w_m | dw_d/dy[" << rs.var_name(var) << "]^" << ps << " * y[d"
           << (anchor + 1) << "]^" << e_torus;
      note_premise("rootvar[" + rs.var_name(var) + "]*torus", desc.str(), h1);
    }
    {
      std::vector<int> mult(wd.nvars, 0);
      mult[var] = int(e_self);
      h2 = graded_divides(wm, hom_mul(xg, hom_monomial(p, wd.nvars, mult, 1))).divisible;
      std::ostringstream desc;
      desc << "w_m | dw_d/dy[" << rs.var_name(var) << "]^" << ps << " * y["
           << rs.var_name(var) << "]^" << e_self;
      note_premise("rootvar[" + rs.var_name(var) + "]*self", desc.str(), h2);
    }
    bool verified = graded_divides(wm, xg).divisible;
    cert.conclusions.push_back({var, h1 && h2, verified});
  }

  // F_p elimination for the torus targets, tracked against the probe rows.
  int nrows = int(rows.size());
  for (int j = 0; j < l; ++j) {
    fp::Mat At(l, nrows, p);  // transpose: solve rows^T c = e_j
    for (int rr = 0; rr < nrows; ++rr)
      for (int cc = 0; cc < l; ++cc) At.at(cc, rr) = rows[rr][cc];
    std::vector<int> e(l, 0);
    e[j] = 1;
    auto sol = fp::solve(At, e);
    int var = rs.var_of_torus(j);
    bool verified = graded_divides(wm, xt[j]).divisible;
    if (!sol) {
      cert.flags.push_back(
          {var, "not derivable from the probe premises over F_" + std::to_string(p) +
                    " (the integer elimination divides by a multiple of p)"});
      cert.conclusions.push_back({var, false, verified});
      continue;
    }
    ChaseCertificate::Step step;
    step.target_var = var;
    std::ostringstream desc;
    desc << "dw_d/dy[d" << (j + 1) << "]^" << ps << " = ";
    bool first = true;
    for (int rr = 0; rr < nrows; ++rr) {
      if ((*sol)[rr] == 0) continue;
      step.combo.emplace_back(row_premise[rr], (*sol)[rr]);
      if (!first) desc << " + ";
      first = false;
      desc << (*sol)[rr] << "*C[" << rs.root_name(probe_roots[rr]) << "]";
    }
    step.desc = desc.str();
    cert.steps.push_back(std::move(step));
    cert.conclusions.push_back({var, true, verified});
  }

  return cert;
}

ChaseInstance random_chase_instance(const RootSystem& rs, int p, int s, std::mt19937& rng) {
  int d = rs.lazard_dim();
  long long ps = ipow(p, s), ps1 = ps * p;
  auto rand_var = [&]() { return int(rng() % d); };
  auto rand_coeff = [&]() { return 1 + int(rng() % (p - 1)); };

  ChaseInstance inst;
  // w_m: one or two monomials in y^{p^{s+1}}, degree p^{s+1}
  inst.wm = hom_zero(p, d);
  inst.wm.degree = int(ps1);
  {
    std::vector<int> e(d, 0);
    e[rand_var()] = int(ps1);
    inst.wm.terms[e] = rand_coeff();
    if (rng() % 2) {
      std::vector<int> e2(d, 0);
      e2[rand_var()] = int(ps1);
      if (!inst.wm.terms.count(e2)) inst.wm.terms[e2] = rand_coeff();
    }
  }
  // u: polynomial in y^{p^s} of degree p^{s+1} (so that v can live in y^{p^{s+1}})
  inst.u = hom_zero(p, d);
  inst.u.degree = int(ps1);
  for (int t = 0, nt = 1 + int(rng() % 2); t < nt; ++t) {
    std::vector<int> e(d, 0);
    for (int k = 0; k < p; ++k) e[rand_var()] += int(ps);
    HomPoly mono = hom_monomial(p, d, e, rand_coeff());
    inst.u = hom_add(inst.u, mono);
  }
  if (inst.u.zero()) {
    std::vector<int> e(d, 0);
    e[rand_var()] = int(ps1);
    inst.u.terms[e] = 1;
  }
  // v: zero or a monomial in y^{p^{s+1}} of matching degree
  inst.v = hom_zero(p, d);
  inst.v.degree = inst.wm.degree + inst.u.degree;
  if (rng() % 2) {
    std::vector<int> e(d, 0);
    int a = inst.v.degree / int(ps1);
    e[rand_var()] = int(ps1) * a;
    inst.v.terms[e] = rand_coeff();
  }
  inst.wd = hom_add(hom_mul(inst.wm, inst.u), inst.v);
  if (inst.wd.zero()) {
    // v cancelled the product; drop it
    inst.v = hom_zero(p, d);
    inst.v.degree = inst.wm.degree + inst.u.degree;
    inst.wd = hom_mul(inst.wm, inst.u);
  }
  return inst;
}

}  // namespace iwa
