#include "iwa/json_io.hpp"

#include "iwa/errors.hpp"

namespace iwa {

json root_system_to_json(const RootSystem& rs) {
  json roots = json::array();
  for (const Root& r : rs.roots())
    roots.push_back({{"coeffs", r.coeffs}, {"height", r.height}});
  return json{{"type", lie_type_name(rs.type())},
              {"rank", rs.rank()},
              {"roots", roots},
              {"cartan", rs.cartan_matrix()}};
}

json series_to_json(const Series& s) {
  json terms = json::array();
  for (const auto& [m, c] : s.terms) terms.push_back({{"e", m.e}, {"c", c}});
  return json{{"p", s.ctx->p()},
              {"trunc", s.trunc},
              {"vars", s.ctx->var_names()},
              {"terms", terms}};
}

Series series_from_json(const Ctx& ctx, const json& j) {
  if (j.at("p").get<int>() != ctx->p())
    throw ContextError("series p does not match the context");
  if (j.contains("vars")) {
    auto names = ctx->var_names();
    auto given = j.at("vars").get<std::vector<std::string>>();
    if (given != names) throw ContextError("series variable list does not match");
  }
  int trunc = j.at("trunc").get<int>();
  if (trunc > ctx->dmax()) trunc = ctx->dmax();
  Series out = series_zero(ctx, trunc);
  for (const auto& t : j.at("terms")) {
    auto e = t.at("e").get<std::vector<int>>();
    if (int(e.size()) != ctx->nvars())
      throw ContextError("series term has the wrong variable count");
    int c = t.at("c").get<int>();
    Monomial m = make_monomial(std::move(e));
    if (m.deg > out.trunc) continue;
    c = ((c % ctx->p()) + ctx->p()) % ctx->p();
    if (c != 0) out.terms[m] = c;
  }
  return out;
}

json group_element_to_json(const GroupElement& g) {
  json rows = json::array();
  for (int i = 0; i < g.m.n; ++i) {
    json row = json::array();
    for (int j = 0; j < g.m.n; ++j) row.push_back(g.m.at(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"p", g.model->p()}, {"precision", g.model->precision()},
              {"matrix", rows}};
}

json report_to_json(const VerificationReport& r) {
  return json{{"kind", r.kind},
              {"case", r.case_desc},
              {"expected", r.expected_desc},
              {"observed", r.observed_desc},
              {"verdict", verdict_name(r.verdict)},
              {"note", r.note}};
}

json hom_to_json(const HomPoly& h) {
  json terms = json::array();
  for (const auto& [e, c] : h.terms) terms.push_back({{"e", e}, {"c", c}});
  return json{{"p", h.p}, {"degree", h.degree}, {"terms", terms}};
}

json obstruction_to_json(const RootSystem& rs, const ObstructionReport& r) {
  json j{{"budget", r.budget}};
  switch (r.verdict) {
    case ObstructionReport::Verdict::Obstructed:
      j["verdict"] = "OBSTRUCTED";
      j["gamma"] = rs.var_name(r.gamma_var);
      j["degree"] = r.degree;
      break;
    case ObstructionReport::Verdict::Unit:
      j["verdict"] = "UNIT";
      break;
    case ObstructionReport::Verdict::Inconclusive:
      j["verdict"] = "INCONCLUSIVE";
      break;
  }
  return j;
}

json witness_to_json(const MembershipWitness& w) {
  json j{{"budget", w.budget}};
  switch (w.status) {
    case MembershipWitness::Status::Member:
      j["status"] = "MEMBER";
      j["quotient"] = series_to_json(w.quotient);
      break;
    case MembershipWitness::Status::Obstructed:
      j["status"] = "OBSTRUCTED";
      j["degree"] = w.obstruction_degree;
      j["residual"] = series_to_json(w.residual);
      break;
    case MembershipWitness::Status::Inconclusive:
      j["status"] = "INCONCLUSIVE";
      break;
  }
  return j;
}

json chase_to_json(const RootSystem& rs, const ChaseCertificate& c) {
  json premises = json::array();
  for (const auto& p : c.premises)
    premises.push_back({{"name", p.name}, {"desc", p.desc}, {"holds", p.holds}});
  json steps = json::array();
  for (const auto& s : c.steps) {
    json combo = json::array();
    for (auto [idx, coef] : s.combo) combo.push_back({{"premise", idx}, {"coeff", coef}});
    steps.push_back(
        {{"target", rs.var_name(s.target_var)}, {"combo", combo}, {"desc", s.desc}});
  }
  json flags = json::array();
  for (const auto& f : c.flags)
    flags.push_back({{"target", rs.var_name(f.target_var)}, {"reason", f.reason}});
  json conclusions = json::array();
  for (const auto& con : c.conclusions)
    conclusions.push_back({{"var", rs.var_name(con.var)},
                           {"derived", con.derived},
                           {"verified", con.verified}});
  return json{{"premises", premises},
              {"steps", steps},
              {"flags", flags},
              {"conclusions", conclusions},
              {"failed_premise", c.failed_premise},
              {"ok", c.ok()}};
}

}  // namespace iwa
