#include <doctest.h>

#include <random>

#include "iwa/errors.hpp"
#include "iwa/normality.hpp"

using namespace iwa;

namespace {

Ctx make_ctx(const char* label, long long p, int prec, int dmax) {
  return SeriesContext::make(Model::build(RootSystem::build(label), p, prec), dmax);
}

HomPoly mono(int p, int nvars, std::initializer_list<std::pair<int, int>> ve, int c) {
  std::vector<int> e(nvars, 0);
  for (auto [v, k] : ve) e[v] += k;
  return hom_monomial(p, nvars, e, c);
}

}  // namespace

TEST_CASE("graded division basics") {
  int p = 5, n = 3;
  HomPoly wm = hom_add(mono(p, n, {{0, 1}}, 1), mono(p, n, {{1, 1}}, 1));  // y0+y1
  SUBCASE("everything divides zero") {
    DivisionResult d = graded_divides(wm, hom_zero(p, n));
    CHECK(d.divisible);
    CHECK(d.quotient.zero());
  }
  SUBCASE("y0^3 does not divide y0^2 y1") {
    HomPoly a = mono(p, n, {{0, 3}}, 1);
    HomPoly f = mono(p, n, {{0, 2}, {1, 1}}, 1);
    CHECK_FALSE(graded_divides(a, f).divisible);
  }
  SUBCASE("y0+y1 divides y0^2-y1^2 with quotient y0-y1") {
    HomPoly f = hom_add(mono(p, n, {{0, 2}}, 1), mono(p, n, {{1, 2}}, p - 1));
    DivisionResult d = graded_divides(wm, f);
    REQUIRE(d.divisible);
    HomPoly expect = hom_add(mono(p, n, {{0, 1}}, 1), mono(p, n, {{1, 1}}, p - 1));
    CHECK(hom_equal(d.quotient, expect));
    CHECK(hom_equal(hom_mul(wm, d.quotient), f));
  }
  SUBCASE("division by zero raises") {
    CHECK_THROWS_AS(graded_divides(hom_zero(p, n), wm), DomainError);
  }
}

TEST_CASE("random multiply-then-divide round trips") {
  std::mt19937 rng(31);
  int p = 3, n = 5;
  for (int trial = 0; trial < 40; ++trial) {
    auto rand_poly = [&](int deg, int terms) {
      HomPoly h = hom_zero(p, n);
      h.degree = deg;
      for (int t = 0; t < terms; ++t) {
        std::vector<int> e(n, 0);
        for (int k = 0; k < deg; ++k) e[rng() % n] += 1;
        int c = 1 + int(rng() % (p - 1));
        auto [it, fresh] = h.terms.try_emplace(e, c);
        if (!fresh) {
          it->second = (it->second + c) % p;
          if (it->second == 0) h.terms.erase(it);
        }
      }
      return h;
    };
    HomPoly a = rand_poly(1 + int(rng() % 3), 2);
    HomPoly b = rand_poly(1 + int(rng() % 3), 2);
    if (a.zero() || b.zero()) continue;
    DivisionResult d = graded_divides(a, hom_mul(a, b));
    REQUIRE(d.divisible);
    CHECK(hom_equal(d.quotient, b));
  }
}

TEST_CASE("decompose_candidate level bookkeeping") {
  Ctx ctx = make_ctx("A2", 3, 3, 8);
  int n = ctx->nvars();
  SUBCASE("single variable") {
    NormalCandidate c = decompose_candidate(series_variable(ctx, 0, 8));
    CHECK(c.m == 1);
    CHECK(c.s == 0);
    CHECK(c.case_one);
    CHECK(c.parts.size() == 1);
  }
  SUBCASE("y0^p + y1: the degree-1 part carries s = 0") {
    std::vector<int> e1(n, 0), e2(n, 0);
    e1[0] = 3;
    e2[1] = 1;
    Series W = add(series_monomial(ctx, make_monomial(e1), 1, 8),
                   series_monomial(ctx, make_monomial(e2), 1, 8));
    NormalCandidate c = decompose_candidate(W);
    CHECK(c.m == 1);
    CHECK(c.s_d.at(1) == 0);
    CHECK(c.s_d.at(3) == 1);
    CHECK(c.s == 0);
    CHECK(c.case_one);
  }
  SUBCASE("y0^p + y0 y1: m = 2 with s = s_m = 0") {
    std::vector<int> e1(n, 0), e2(n, 0);
    e1[0] = 3;
    e2[0] = 1;
    e2[1] = 1;
    Series W = add(series_monomial(ctx, make_monomial(e1), 1, 8),
                   series_monomial(ctx, make_monomial(e2), 1, 8));
    NormalCandidate c = decompose_candidate(W);
    CHECK(c.m == 2);
    CHECK(c.s_d.at(2) == 0);
    CHECK(c.s_d.at(3) == 1);
    CHECK(c.case_one);
  }
  SUBCASE("a case-2 shape: s < s_m") {
    std::vector<int> e1(n, 0), e2(n, 0);
    e1[0] = 3;           // degree 3, level 1
    e2[1] = 2;
    e2[2] = 2;           // degree 4, level 0
    Series W = add(series_monomial(ctx, make_monomial(e1), 1, 8),
                   series_monomial(ctx, make_monomial(e2), 1, 8));
    NormalCandidate c = decompose_candidate(W);
    CHECK(c.m == 3);
    CHECK(c.s_d.at(3) == 1);
    CHECK(c.s_d.at(4) == 0);
    CHECK(c.s == 0);
    CHECK_FALSE(c.case_one);
  }
  SUBCASE("zero input rejected") {
    CHECK_THROWS_AS(decompose_candidate(series_zero(ctx, 8)), DomainError);
  }
}

TEST_CASE("ideal membership: units pass, bare variables obstruct") {
  Ctx ctx = make_ctx("A1", 3, 4, 7);
  const RootSystem& rs = ctx->rs();
  SUBCASE("W = 1 + y0 is a member for every probe") {
    Series W = add(series_const(ctx, 1, 7), series_variable(ctx, 0, 7));
    for (int g = 0; g < ctx->nvars(); ++g) {
      MembershipWitness w = ideal_membership(W, g, 0, 7);
      CHECK(w.status == MembershipWitness::Status::Member);
      // soundness: W * quotient reproduces the commutator to the budget
      GroupElement A = ctx->model().power(ctx->model().basis_element(g), 1);
      Series aser = element_to_series(ctx, A, 7);
      Series comm = sub(multiply(aser, W), multiply(W, aser));
      CHECK(same_terms(multiply(W, w.quotient), comm));
    }
  }
  SUBCASE("W = y_alpha is obstructed against the opposite generator") {
    int va = rs.var_of_root(rs.simple_root_index(0));
    int vm = rs.var_of_root(rs.negation_index(rs.simple_root_index(0)));
    Series W = series_variable(ctx, va, 7);
    MembershipWitness w = ideal_membership(W, vm, 0, 7);
    CHECK(w.status == MembershipWitness::Status::Obstructed);
    CHECK(!is_zero(w.residual));
    CHECK(w.obstruction_degree >= 1);
  }
  SUBCASE("tiny budgets are inconclusive") {
    Series W = series_variable(ctx, 0, 7);
    MembershipWitness w = ideal_membership(W, 0, 0, 2);
    CHECK(w.status == MembershipWitness::Status::Inconclusive);
  }
  SUBCASE("zero candidate rejected") {
    CHECK_THROWS_AS(ideal_membership(series_zero(ctx, 7), 0, 0, 7), DomainError);
  }
}

TEST_CASE("normal_obstruction over A1 at p = 3") {
  Ctx ctx = make_ctx("A1", 3, 4, 8);
  const RootSystem& rs = ctx->rs();
  int va = rs.var_of_root(rs.simple_root_index(0));
  int vm = rs.var_of_root(rs.negation_index(rs.simple_root_index(0)));
  int vd = rs.var_of_torus(0);
  SUBCASE("torus variable is obstructed at low degree") {
    ObstructionReport r = normal_obstruction(series_variable(ctx, vd, 8), 8);
    CHECK(r.verdict == ObstructionReport::Verdict::Obstructed);
    CHECK(r.degree <= 4);  // p + 1
  }
  SUBCASE("sum of opposite root variables is obstructed") {
    Series W = add(series_variable(ctx, va, 8), series_variable(ctx, vm, 8));
    ObstructionReport r = normal_obstruction(W, 8);
    CHECK(r.verdict == ObstructionReport::Verdict::Obstructed);
  }
  SUBCASE("constant terms short-circuit to UNIT") {
    Series W = add(series_const(ctx, 2, 8), series_variable(ctx, va, 8));
    ObstructionReport r = normal_obstruction(W, 8);
    CHECK(r.verdict == ObstructionReport::Verdict::Unit);
  }
}

TEST_CASE("claim 5.2: some derivative survives") {
  int p = 3, n = 8;
  SUBCASE("single power has derivative 1") {
    for (int s : {0, 1}) {
      HomPoly wm = mono(p, n, {{2, int(ipow(p, s))}}, 1);
      CHECK(claim52_check(wm, s));
    }
  }
  SUBCASE("a p^{s+1} power violates the precondition") {
    HomPoly wm = mono(p, n, {{2, 9}}, 1);
    CHECK_THROWS_AS(claim52_check(wm, 1), DomainError);  // lives in F_p[y^{p^2}]
    CHECK(claim52_check(wm, 2));
  }
  SUBCASE("random valid candidates always pass") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      int s = int(rng() % 2);
      long long ps = ipow(p, s);
      HomPoly wm = hom_zero(p, n);
      int deg = (1 + int(rng() % 3)) * int(ps);
      wm.degree = deg;
      for (int t = 0; t < 3; ++t) {
        std::vector<int> e(n, 0);
        for (int k = 0; k * ps < deg; ++k) e[rng() % n] += int(ps);
        auto [it, fresh] = wm.terms.try_emplace(e, 1 + int(rng() % (p - 1)));
        (void)it;
        (void)fresh;
      }
      bool valid_level = !wm.zero() && hom_in_power_ring(wm, ps) &&
                         !hom_in_power_ring(wm, ps * p);
      if (!valid_level) continue;
      CHECK(claim52_check(wm, s));
    }
  }
}

TEST_CASE("claim 5.4 decompositions") {
  int p = 3, n = 8, s = 0;
  long long ps = 1, ps1 = 3;
  HomPoly wm = hom_add(mono(p, n, {{0, 3}}, 1), mono(p, n, {{1, 3}}, 2));
  SUBCASE("w_d = w_m gives u = 1, v = 0") {
    Claim54Decomposition d = claim54_decompose(wm, wm, s);
    REQUIRE(!d.u.zero());
    CHECK(d.u.degree == 0);
    CHECK(d.u.terms.begin()->second == 1);
    CHECK(d.v.zero());
  }
  SUBCASE("w_d in F_p[y^{p^{s+1}}] and coprime to w_m goes wholly into v") {
    HomPoly wd = mono(p, n, {{2, 3}}, 1);
    Claim54Decomposition d = claim54_decompose(wm, wd, s);
    CHECK(d.u.zero());
    CHECK(hom_equal(d.v, wd));
  }
  SUBCASE("synthetic instance w_d = w_m y_3 + y_4^p is recovered exactly") {
    HomPoly wm2 = mono(p, n, {{0, 1}, {1, 1}}, 1);  // degree p^{s+1} - p^s = 2
    HomPoly u = mono(p, n, {{3, int(ps)}}, 1);
    HomPoly v = mono(p, n, {{4, int(ps1)}}, 1);
    HomPoly wd = hom_add(hom_mul(wm2, u), v);
    Claim54Decomposition d = claim54_decompose(wm2, wd, s);
    CHECK(hom_equal(d.u, u));
    CHECK(hom_equal(d.v, v));
    CHECK(hom_equal(hom_add(hom_mul(wm2, d.u), d.v), wd));
  }
  SUBCASE("divisible blocks with p^{s+1}-level w_m are recovered too") {
    HomPoly u = mono(p, n, {{3, int(ps)}, {4, int(ps)}}, 2);
    HomPoly wd = hom_mul(wm, u);
    Claim54Decomposition d = claim54_decompose(wm, wd, s);
    CHECK(hom_equal(hom_add(hom_mul(wm, d.u), d.v), wd));
    CHECK(hom_equal(d.u, u));
  }
  SUBCASE("missing certification raises") {
    // w_d with a digit group neither groupwise nor blockwise divisible
    HomPoly wd = mono(p, n, {{2, 1}, {3, 3}}, 1);  // digit at var 2
    CHECK_THROWS_AS(claim54_decompose(wm, wd, s), DomainError);
  }
}

TEST_CASE("diagram chase on a synthetic A2 instance") {
  auto rs = RootSystem::build("A2");
  int p = 5, s = 0, n = rs->lazard_dim();
  // w_m in F_p[y^{p^{s+1}}] so that derivatives of w_d = w_m u + v factor
  HomPoly wm = mono(p, n, {{rs->var_of_torus(0), 5}}, 1);
  HomPoly u = mono(p, n, {{rs->var_of_torus(1), 5}}, 1);
  HomPoly wd = hom_mul(wm, u);
  ChaseCertificate cert = diagram_chase(*rs, p, wm, wd, s);
  CHECK(cert.premises_ok());
  CHECK(cert.conclusions_ok());
  CHECK(cert.ok());
  CHECK(cert.flags.empty());
  CHECK(cert.steps.size() == size_t(rs->rank()));
}

TEST_CASE("diagram chase across types and primes") {
  std::mt19937 rng(1234);
  for (auto label : {"A2", "A3", "B3"}) {
    CAPTURE(label);
    auto rs = RootSystem::build(label);
    for (int p : {5, 7}) {
      ChaseInstance inst = random_chase_instance(*rs, p, 0, rng);
      ChaseCertificate cert = diagram_chase(*rs, p, inst.wm, inst.wd, 0);
      CAPTURE(p);
      CHECK(cert.ok());
      CHECK(cert.flags.empty());
    }
  }
}

TEST_CASE("A-type elimination degenerates exactly when p divides l+1") {
  std::mt19937 rng(55);
  auto a2 = RootSystem::build("A2");
  ChaseInstance inst = random_chase_instance(*a2, 3, 0, rng);
  ChaseCertificate cert = diagram_chase(*a2, 3, inst.wm, inst.wd, 0);
  // conclusions still verify on the instance, but no torus target is
  // derivable over F_3: the integer chase divides by l+1 = 3
  CHECK(cert.premises_ok());
  CHECK(cert.conclusions_ok());
  CHECK(cert.flags.size() == 2);

  auto a4 = RootSystem::build("A4");
  ChaseInstance inst4 = random_chase_instance(*a4, 5, 0, rng);
  ChaseCertificate cert4 = diagram_chase(*a4, 5, inst4.wm, inst4.wd, 0);
  CHECK(cert4.premises_ok());
  CHECK(cert4.flags.size() == 4);  // p = 5 divides l+1 = 5

  ChaseCertificate cert4b;
  ChaseInstance inst4b = random_chase_instance(*a4, 7, 0, rng);
  cert4b = diagram_chase(*a4, 7, inst4b.wm, inst4b.wd, 0);
  CHECK(cert4b.ok());
  CHECK(cert4b.flags.empty());
}

TEST_CASE("E6 chase derives everything at p = 5 but flags 1,3,5,6 at p = 3") {
  std::mt19937 rng(99);
  auto rs = RootSystem::build("E6");
  SUBCASE("p = 5: full certificate") {
    ChaseInstance inst = random_chase_instance(*rs, 5, 0, rng);
    ChaseCertificate cert = diagram_chase(*rs, 5, inst.wm, inst.wd, 0);
    CHECK(cert.ok());
    CHECK(cert.flags.empty());
    CHECK(cert.steps.size() == 6);
  }
  SUBCASE("p = 3: the division-by-3 steps are flagged") {
    ChaseInstance inst = random_chase_instance(*rs, 3, 0, rng);
    ChaseCertificate cert = diagram_chase(*rs, 3, inst.wm, inst.wd, 0);
    CHECK(cert.premises_ok());
    CHECK(cert.conclusions_ok());  // the instance itself satisfies the claim
    REQUIRE(cert.flags.size() == 4);
    std::vector<std::string> flagged;
    for (const auto& f : cert.flags) flagged.push_back(rs->var_name(f.target_var));
    CHECK(flagged == std::vector<std::string>{"d1", "d3", "d5", "d6"});
  }
}

TEST_CASE("mutated instance names the broken premise") {
  std::mt19937 rng(7);
  auto rs = RootSystem::build("A3");
  int p = 5;
  ChaseInstance inst = random_chase_instance(*rs, p, 0, rng);
  // damage w_d so that some torus derivative stops being a multiple of w_m
  HomPoly bad = inst.wd;
  std::vector<int> e(rs->lazard_dim(), 0);
  e[rs->var_of_torus(0)] = 1;
  e[rs->var_of_torus(1)] = bad.degree - 1;
  bad = hom_add(bad, hom_monomial(p, rs->lazard_dim(), e, 1));
  ChaseCertificate cert = diagram_chase(*rs, p, inst.wm, bad, 0);
  CHECK_FALSE(cert.ok());
  CHECK_FALSE(cert.failed_premise.empty());
}

TEST_CASE("membership holds with a zero quotient for a commuting probe") {
  Ctx ctx = make_ctx("A3", 3, 4, 8);
  const RootSystem& rs = ctx->rs();
  Series W = series_variable(ctx, rs.var_of_root(rs.simple_root_index(0)), 8);
  int probe = rs.var_of_root(rs.simple_root_index(2));  // non-adjacent: commutes
  MembershipWitness w = ideal_membership(W, probe, 0, 8);
  CHECK(w.status == MembershipWitness::Status::Member);
  CHECK(is_zero(w.quotient));
}
