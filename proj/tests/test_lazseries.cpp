#include <doctest.h>

#include <random>

#include "iwa/errors.hpp"
#include "iwa/lazseries.hpp"

using namespace iwa;

namespace {

Ctx make_ctx(const char* label, long long p, int prec, int dmax) {
  return SeriesContext::make(Model::build(RootSystem::build(label), p, prec), dmax);
}

// test-side oracle: coefficients of (1+y)^n mod p by direct multiplication
std::vector<int> dense_binomial(long long n, int p, int dmax) {
  std::vector<int> poly{1};
  for (long long i = 0; i < n; ++i) {
    std::vector<int> next(std::min<size_t>(poly.size() + 1, dmax + 1), 0);
    for (size_t k = 0; k < poly.size(); ++k) {
      if (k < next.size()) next[k] = (next[k] + poly[k]) % p;
      if (k + 1 < next.size()) next[k + 1] = (next[k + 1] + poly[k]) % p;
    }
    poly = std::move(next);
  }
  poly.resize(dmax + 1, 0);
  return poly;
}

Series random_sparse(const Ctx& ctx, std::mt19937& rng, int max_terms, int max_deg) {
  Series s = series_zero(ctx, ctx->dmax());
  int nt = 1 + int(rng() % max_terms);
  for (int t = 0; t < nt; ++t) {
    std::vector<int> e(ctx->nvars(), 0);
    int deg = int(rng() % (max_deg + 1));
    for (int k = 0; k < deg; ++k) e[rng() % ctx->nvars()] += 1;
    int c = 1 + int(rng() % (ctx->p() - 1));
    Monomial m = make_monomial(std::move(e));
    auto [it, fresh] = s.terms.try_emplace(m, c);
    if (!fresh) {
      it->second = (it->second + c) % ctx->p();
      if (it->second == 0) s.terms.erase(it);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("lucas binomials against dense expansion") {
  for (int p : {3, 5}) {
    for (long long n : {0LL, 1LL, 3LL, 6LL, 10LL, 19LL}) {
      auto dense = dense_binomial(n, p, 12);
      for (int k = 0; k <= 12; ++k) CHECK(lucas_binomial(n, k, p) == dense[k]);
    }
  }
}

TEST_CASE("binomial_expand basics") {
  Ctx ctx = make_ctx("A1", 3, 4, 9);
  SUBCASE("lambda = 0 gives 1") {
    Series s = binomial_expand(ctx, 0, 0, 9);
    CHECK(s.terms.size() == 1);
    CHECK(s.terms.begin()->first.is_unit());
  }
  SUBCASE("lambda = p is the Frobenius power") {
    Series s = binomial_expand(ctx, 0, 3, 9);
    REQUIRE(s.terms.size() == 2);
    auto it = s.terms.begin();
    CHECK(it->first.deg == 0);
    ++it;
    CHECK(it->first.deg == 3);
    CHECK(it->second == 1);
  }
  SUBCASE("digits (0,2,0) give 1 + 2y^3 + y^6") {
    Series s = binomial_expand(ctx, 0, 6, 9);
    auto dense = dense_binomial(6, 3, 9);
    for (int k = 0; k <= 9; ++k) {
      std::vector<int> e(ctx->nvars(), 0);
      e[0] = k;
      auto it = s.terms.find(make_monomial(e));
      int c = it == s.terms.end() ? 0 : it->second;
      CHECK(c == dense[k]);
    }
    CHECK(dense[3] == 2);
    CHECK(dense[6] == 1);
  }
}

TEST_CASE("element_to_series on generators") {
  Ctx ctx = make_ctx("A2", 3, 3, 6);
  const Model& M = ctx->model();
  Series one = element_to_series(ctx, M.identity(), 6);
  CHECK(one.terms.size() == 1);
  CHECK(one.terms.begin()->first.is_unit());
  for (int v = 0; v < ctx->nvars(); ++v) {
    Series s = element_to_series(ctx, M.basis_element(v), 6);
    CHECK(s.terms.size() == 2);
    CHECK(same_terms(s, add(series_const(ctx, 1, 6), series_variable(ctx, v, 6))));
  }
}

TEST_CASE("A1 product series has the expected low-degree part") {
  Ctx ctx = make_ctx("A1", 3, 4, 6);
  const Model& M = ctx->model();
  const RootSystem& rs = ctx->rs();
  int a = rs.simple_root_index(0);
  GroupElement g = M.mul(M.x_element(a, 3), M.x_element(rs.negation_index(a), 3));
  Series s = element_to_series(ctx, g, 6);
  int va = rs.var_of_root(a), vm = rs.var_of_root(rs.negation_index(a));
  // degree <= 2 slice: 1 + y_a + y_{-a} + y_{-a} y_a
  std::map<std::vector<int>, int> low;
  for (const auto& [m, c] : s.terms)
    if (m.deg <= 2) low[m.e] = c;
  std::vector<int> e0(3, 0), ea(3, 0), em(3, 0), eam(3, 0);
  ea[va] = 1;
  em[vm] = 1;
  eam[va] = 1;
  eam[vm] = 1;
  CHECK(low == std::map<std::vector<int>, int>{{e0, 1}, {ea, 1}, {em, 1}, {eam, 1}});
}

TEST_CASE("multiply: unit, ordered pairs, and the group homomorphism") {
  Ctx ctx = make_ctx("A2", 3, 3, 6);
  const Model& M = ctx->model();
  std::mt19937 rng(7);
  Series one = series_const(ctx, 1, 6);
  for (int trial = 0; trial < 5; ++trial) {
    Series a = random_sparse(ctx, rng, 4, 4);
    CHECK(same_terms(multiply(a, one), a));
    CHECK(same_terms(multiply(one, a), a));
  }
  // ordered product of two variables stays one monomial
  Series y2 = series_variable(ctx, 2, 6), y5 = series_variable(ctx, 5, 6);
  Series prod = multiply(y2, y5);
  REQUIRE(prod.terms.size() == 1);
  CHECK(prod.terms.begin()->first.e[2] == 1);
  CHECK(prod.terms.begin()->first.e[5] == 1);

  // multiply matches the matrix-model product for every generator pair
  for (int j = 0; j < ctx->nvars(); ++j)
    for (int i = 0; i < ctx->nvars(); ++i) {
      Series sj = element_to_series(ctx, M.basis_element(j), 6);
      Series si = element_to_series(ctx, M.basis_element(i), 6);
      Series lhs = multiply(sj, si);
      Series rhs =
          element_to_series(ctx, M.mul(M.basis_element(j), M.basis_element(i)), 6);
      CAPTURE(j);
      CAPTURE(i);
      CHECK(same_terms(lhs, rhs));
    }
}

TEST_CASE("commutator basics and the non-adjacent vanishing") {
  Ctx ctx3 = make_ctx("A3", 3, 3, 6);
  const RootSystem& rs = ctx3->rs();
  std::mt19937 rng(11);
  Series a = random_sparse(ctx3, rng, 3, 3);
  CHECK(is_zero(commutator(a, a)));

  int d1 = rs.var_of_root(rs.simple_root_index(0));
  int d3 = rs.var_of_root(rs.simple_root_index(2));
  Series y1 = series_variable(ctx3, d1, 6), y3 = series_variable(ctx3, d3, 6);
  CHECK(is_zero(commutator(y1, y3)));
}

TEST_CASE("A1 commutator with the torus variable has leading term y_a^3") {
  Ctx ctx = make_ctx("A1", 3, 3, 4);
  const RootSystem& rs = ctx->rs();
  int va = rs.var_of_root(rs.simple_root_index(0));
  int vd = rs.var_of_torus(0);
  Series c = commutator(series_variable(ctx, va, 4), series_variable(ctx, vd, 4));
  REQUIRE(!is_zero(c));
  HomPoly lt = leading_term(c);
  CHECK(lt.degree == 3);
  REQUIRE(lt.terms.size() == 1);
  std::vector<int> e(3, 0);
  e[va] = 3;
  REQUIRE(lt.terms.count(e));
  CHECK(lt.terms.at(e) == 1);  // -<a,d> = -2 = 1 mod 3
}

TEST_CASE("opposite-pair commutator lands on the torus variable") {
  Ctx ctx = make_ctx("A1", 3, 3, 4);
  const RootSystem& rs = ctx->rs();
  int va = rs.var_of_root(rs.simple_root_index(0));
  int vm = rs.var_of_root(rs.negation_index(rs.simple_root_index(0)));
  Series c = commutator(series_variable(ctx, va, 4), series_variable(ctx, vm, 4));
  REQUIRE(!is_zero(c));
  HomPoly lt = leading_term(c);
  CHECK(lt.degree == 3);
  std::vector<int> e(3, 0);
  e[rs.var_of_torus(0)] = 3;
  REQUIRE(lt.terms.size() == 1);
  REQUIRE(lt.terms.count(e));
  CHECK(lt.terms.at(e) == 1);
}

TEST_CASE("leading_term basics") {
  Ctx ctx = make_ctx("A2", 3, 3, 6);
  Series s = add(series_const(ctx, 1, 6), series_variable(ctx, 0, 6));
  HomPoly lt = leading_term(s);
  CHECK(lt.degree == 0);
  CHECK(lt.terms.size() == 1);

  Series t = add(multiply(series_variable(ctx, 0, 6), series_variable(ctx, 0, 6)),
                 multiply(series_variable(ctx, 1, 6),
                          multiply(series_variable(ctx, 1, 6), series_variable(ctx, 1, 6))));
  HomPoly lt2 = leading_term(t);
  CHECK(lt2.degree == 2);
  CHECK_THROWS_AS(leading_term(series_zero(ctx, 6)), DomainError);
}

TEST_CASE("partial derivative rules") {
  Ctx ctx = make_ctx("A2", 3, 4, 9);
  SUBCASE("derivative of y^{p^s} is 1") {
    for (int s : {0, 1}) {
      std::vector<int> e(ctx->nvars(), 0);
      e[1] = int(ipow(3, s));
      Series w = series_monomial(ctx, make_monomial(e), 1, 9);
      Series d = partial_derivative(w, 1, s);
      REQUIRE(d.terms.size() == 1);
      CHECK(d.terms.begin()->first.is_unit());
      CHECK(d.terms.begin()->second == 1);
    }
  }
  SUBCASE("derivative of a constant is 0") {
    CHECK(is_zero(partial_derivative(series_const(ctx, 2, 9), 0, 0)));
  }
  SUBCASE("p kills the p-th power at level 0") {
    std::vector<int> e(ctx->nvars(), 0);
    e[0] = 3;
    Series w = series_monomial(ctx, make_monomial(e), 1, 9);
    CHECK(is_zero(partial_derivative(w, 0, 0)));
  }
  SUBCASE("level mismatch raises") {
    std::vector<int> e(ctx->nvars(), 0);
    e[0] = 2;
    Series w = series_monomial(ctx, make_monomial(e), 1, 9);
    CHECK_THROWS_AS(partial_derivative(w, 0, 1), DomainError);
  }
}

TEST_CASE("associativity, distributivity, linearity on random triples") {
  Ctx ctx = make_ctx("B2", 3, 3, 6);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    Series a = random_sparse(ctx, rng, 3, 4);
    Series b = random_sparse(ctx, rng, 3, 4);
    Series c = random_sparse(ctx, rng, 3, 4);
    CHECK(same_terms(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
    CHECK(same_terms(multiply(a, add(b, c)), add(multiply(a, b), multiply(a, c))));
    CHECK(same_terms(multiply(add(a, b), c), add(multiply(a, c), multiply(b, c))));
    CHECK(same_terms(commutator(a, b), scale(commutator(b, a), -1)));
  }
}

TEST_CASE("rewrite confluence: swap order does not matter") {
  // normalizing y_k y_j y_i by either adjacent swap first must agree; this
  // is the associativity instance (y_k y_j) y_i = y_k (y_j y_i).
  for (auto label : {"A1", "A2", "B2"}) {
    CAPTURE(label);
    Ctx ctx = make_ctx(label, 3, 4, 8);
    int d = ctx->nvars();
    for (int k = 0; k < d; ++k)
      for (int j = 0; j <= k; ++j)
        for (int i = 0; i <= j; ++i) {
          Series yk = series_variable(ctx, k, 8);
          Series yj = series_variable(ctx, j, 8);
          Series yi = series_variable(ctx, i, 8);
          CHECK(same_terms(multiply(multiply(yk, yj), yi),
                           multiply(yk, multiply(yj, yi))));
        }
  }
}

TEST_CASE("graded commutativity: variable commutators start at degree >= p") {
  for (auto label : {"A2", "B2"}) {
    Ctx ctx = make_ctx(label, 3, 3, 6);
    for (int j = 0; j < ctx->nvars(); ++j)
      for (int i = 0; i < j; ++i) {
        Series c = commutator(series_variable(ctx, j, 6), series_variable(ctx, i, 6));
        if (!is_zero(c)) CHECK(min_degree(c) >= 3);
      }
  }
}

TEST_CASE("element_to_series is a homomorphism on random words") {
  Ctx ctx = make_ctx("A2", 3, 3, 5);
  const Model& M = ctx->model();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    GroupElement g = M.identity(), h = M.identity();
    for (int i = 0; i < 3; ++i) {
      g = M.mul(g, M.basis_element(int(rng() % ctx->nvars())));
      h = M.mul(h, M.basis_element(int(rng() % ctx->nvars())));
    }
    Series lhs = element_to_series(ctx, M.mul(g, h), 5);
    Series rhs = multiply(element_to_series(ctx, g, 5), element_to_series(ctx, h, 5));
    CHECK(same_terms(lhs, rhs));
  }
}

TEST_CASE("context guards") {
  Ctx a = make_ctx("A1", 3, 3, 4);
  Ctx b = make_ctx("A1", 3, 3, 4);
  Series sa = series_variable(a, 0, 4), sb = series_variable(b, 0, 4);
  CHECK_THROWS_AS(multiply(sa, sb), ContextError);
  CHECK_THROWS_AS(make_ctx("A1", 3, 2, 9), PrecisionError);
}
