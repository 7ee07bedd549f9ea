#include "iwa/lazseries.hpp"

#include <algorithm>
#include <cassert>

#include "iwa/errors.hpp"
#include "iwa/fp.hpp"

namespace iwa {

Monomial make_monomial(std::vector<int> exps) {
  Monomial m;
  m.deg = 0;
  for (int e : exps) m.deg += e;
  m.e = std::move(exps);
  return m;
}

namespace {

void map_add(TermMap& t, const Monomial& m, int c, int p) {
  if (c == 0) return;
  auto [it, fresh] = t.try_emplace(m, c);
  if (!fresh) {
    it->second = fp::add(it->second, c, p);
    if (it->second == 0) t.erase(it);
  }
}

}  // namespace

std::shared_ptr<const SeriesContext> SeriesContext::make(
    std::shared_ptr<const Model> model, int dmax) {
  if (dmax < 0) throw ConfigError("negative truncation degree");
  // lambda mod p^{N-1} must pin every binomial C(lambda, k) with k <= dmax
  long long span = 1;
  for (int i = 0; i + 1 < model->precision(); ++i) {
    span *= model->p();
    if (span > dmax) break;
  }
  if (span <= dmax)
    throw PrecisionError("model precision too low for truncation degree " +
                         std::to_string(dmax));
  auto ctx = std::shared_ptr<SeriesContext>(new SeriesContext());
  ctx->model_ = std::move(model);
  ctx->dmax_ = dmax;
  return ctx;
}

std::vector<std::string> SeriesContext::var_names() const {
  std::vector<std::string> names;
  names.reserve(nvars());
  for (int v = 0; v < nvars(); ++v) names.push_back(rs().var_name(v));
  return names;
}

const TermMap& SeriesContext::corr(int j, int i) const {
  assert(j > i);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = corr_.find({j, i});
    if (it != corr_.end()) return it->second;
  }
  const Model& M = *model_;
  GroupElement gj = M.basis_element(j), gi = M.basis_element(i);
  Series ab = element_to_series(shared_from_this(), M.mul(gj, gi), dmax_);
  Series ba = element_to_series(shared_from_this(), M.mul(gi, gj), dmax_);
  Series diff = sub(ab, ba);
  // lowest commutator degree is >= p > 2: rewriting strictly raises degree
  assert(is_zero(diff) || min_degree(diff) >= p());
  std::lock_guard<std::mutex> lock(mu_);
  return corr_.try_emplace({j, i}, std::move(diff.terms)).first->second;
}

TermMap SeriesContext::normal_product(const Monomial& a, const Monomial& b,
                                      int budget) const {
  budget = std::min(budget, dmax_);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = prod_.find({a.e, b.e});
    if (it != prod_.end() && it->second.budget >= budget) {
      if (it->second.budget == budget) return it->second.terms;
      TermMap filtered;
      for (const auto& [m, c] : it->second.terms) {
        if (m.deg > budget) break;
        filtered.emplace(m, c);
      }
      return filtered;
    }
  }
  int p_ = p();
  // letter words: variable indices with multiplicity, degree = length
  std::vector<int> word;
  word.reserve(size_t(a.deg) + b.deg);
  for (int v = 0; v < nvars(); ++v) word.insert(word.end(), a.e[v], v);
  for (int v = 0; v < nvars(); ++v) word.insert(word.end(), b.e[v], v);

  TermMap out;
  std::vector<std::pair<std::vector<int>, int>> stack;
  if (int(word.size()) <= budget) stack.emplace_back(std::move(word), 1);
  while (!stack.empty()) {
    auto [w, c] = std::move(stack.back());
    stack.pop_back();
    int bad = -1;
    for (int t = 0; t + 1 < int(w.size()); ++t)
      if (w[t] > w[t + 1]) {
        bad = t;
        break;
      }
    if (bad < 0) {
      std::vector<int> exps(nvars(), 0);
      for (int v : w) exps[v] += 1;
      map_add(out, make_monomial(std::move(exps)), c, p_);
      continue;
    }
    int hi = w[bad], lo = w[bad + 1];
    {
      std::vector<int> swapped = w;
      std::swap(swapped[bad], swapped[bad + 1]);
      stack.emplace_back(std::move(swapped), c);
    }
    for (const auto& [m, cm] : corr(hi, lo)) {
      if (int(w.size()) - 2 + m.deg > budget) break;  // graded map: later only bigger
      std::vector<int> nw;
      nw.reserve(w.size() - 2 + m.deg);
      nw.insert(nw.end(), w.begin(), w.begin() + bad);
      for (int v = 0; v < nvars(); ++v) nw.insert(nw.end(), m.e[v], v);
      nw.insert(nw.end(), w.begin() + bad + 2, w.end());
      stack.emplace_back(std::move(nw), fp::mul(c, cm, p_));
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto& entry = prod_[{a.e, b.e}];
  if (entry.budget < budget) entry = {budget, std::move(out)};
  return entry.terms;
}

Series series_zero(const Ctx& ctx, int trunc) { return {ctx, trunc, {}}; }

Series series_const(const Ctx& ctx, int c, int trunc) {
  Series s{ctx, trunc, {}};
  c = fp::norm(c, ctx->p());
  if (c != 0) s.terms[Monomial::unit(ctx->nvars())] = c;
  return s;
}

Series series_variable(const Ctx& ctx, int var, int trunc) {
  std::vector<int> e(ctx->nvars(), 0);
  e[var] = 1;
  return series_monomial(ctx, make_monomial(std::move(e)), 1, trunc);
}

Series series_monomial(const Ctx& ctx, const Monomial& m, int c, int trunc) {
  Series s{ctx, trunc, {}};
  c = fp::norm(c, ctx->p());
  if (c != 0 && m.deg <= trunc) s.terms[m] = c;
  return s;
}

namespace {

void require_same_ctx(const Series& a, const Series& b) {
  if (a.ctx != b.ctx) throw ContextError("series from different contexts");
}

}  // namespace

Series add(const Series& a, const Series& b) {
  require_same_ctx(a, b);
  Series out{a.ctx, std::min(a.trunc, b.trunc), a.terms};
  int p = a.ctx->p();
  for (const auto& [m, c] : b.terms) map_add(out.terms, m, c, p);
  std::erase_if(out.terms, [&](const auto& kv) { return kv.first.deg > out.trunc; });
  return out;
}

Series sub(const Series& a, const Series& b) { return add(a, scale(b, -1)); }

Series scale(const Series& a, int c) {
  int p = a.ctx->p();
  c = fp::norm(c, p);
  Series out{a.ctx, a.trunc, {}};
  if (c == 0) return out;
  for (const auto& [m, v] : a.terms) out.terms[m] = fp::mul(v, c, p);
  return out;
}

bool same_terms(const Series& a, const Series& b) { return a.terms == b.terms; }

bool is_zero(const Series& a) { return a.terms.empty(); }

int min_degree(const Series& a) {
  return a.terms.empty() ? -1 : a.terms.begin()->first.deg;
}

int lucas_binomial(long long n, long long k, int p) {
  assert(n >= 0 && k >= 0);
  int r = 1;
  while (k > 0) {
    long long nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    // C(nd, kd) mod p by the short product
    long long c = 1;
    for (long long t = 0; t < kd; ++t) c = c * (nd - t) / (t + 1);
    r = fp::mul(r, int(c % p), p);
    n /= p;
    k /= p;
  }
  return r;
}

Series binomial_expand(const Ctx& ctx, int var, long long lambda, int trunc) {
  if (trunc > ctx->dmax()) throw PrecisionError("truncation beyond context ceiling");
  Series out = series_const(ctx, 1, trunc);
  for (int k = 1; k <= trunc; ++k) {
    int c = lucas_binomial(lambda, k, ctx->p());
    if (c == 0) continue;
    std::vector<int> e(ctx->nvars(), 0);
    e[var] = k;
    out.terms[make_monomial(std::move(e))] = c;
  }
  return out;
}

Series element_to_series(const Ctx& ctx, const GroupElement& g, int trunc) {
  if (trunc > ctx->dmax()) throw PrecisionError("truncation beyond context ceiling");
  if (g.model.get() != &ctx->model())
    throw ContextError("element_to_series: element from a different model");
  std::vector<long long> lambda = ctx->model().lazard_coordinates(g);
  int d = ctx->nvars(), p = ctx->p();
  // per-variable binomial coefficient lists
  std::vector<std::vector<std::pair<int, int>>> lists(d);
  for (int v = 0; v < d; ++v) {
    for (int k = 0; k <= trunc; ++k) {
      int c = lucas_binomial(lambda[v], k, p);
      if (c != 0) lists[v].emplace_back(k, c);
    }
  }
  Series out = series_zero(ctx, trunc);
  // ordered product: depth-first over the variables with a degree budget
  std::vector<int> exps(d, 0);
  auto rec = [&](auto&& self, int v, int used, int coeff) -> void {
    if (v == d) {
      std::vector<int> e = exps;
      map_add(out.terms, make_monomial(std::move(e)), coeff, p);
      return;
    }
    for (const auto& [k, c] : lists[v]) {
      if (used + k > trunc) break;
      exps[v] = k;
      self(self, v + 1, used + k, fp::mul(coeff, c, p));
    }
    exps[v] = 0;
  };
  rec(rec, 0, 0, 1);
  return out;
}

Series multiply(const Series& a, const Series& b) {
  require_same_ctx(a, b);
  const auto& ctx = a.ctx;
  int p = ctx->p();
  int dres = std::min(a.trunc, b.trunc);
  Series out = series_zero(ctx, dres);
  if (a.terms.empty() || b.terms.empty()) return out;
  int bmin = b.terms.begin()->first.deg;
  for (const auto& [ma, ca] : a.terms) {
    if (ma.deg + bmin > dres) break;
    for (const auto& [mb, cb] : b.terms) {
      if (ma.deg + mb.deg > dres) break;
      int cc = fp::mul(ca, cb, p);
      if (ma.is_unit()) {
        map_add(out.terms, mb, cc, p);
        continue;
      }
      if (mb.is_unit()) {
        map_add(out.terms, ma, cc, p);
        continue;
      }
      for (const auto& [m, c] : ctx->normal_product(ma, mb, dres)) {
        if (m.deg > dres) break;
        map_add(out.terms, m, fp::mul(cc, c, p), p);
      }
    }
  }
  return out;
}

Series commutator(const Series& a, const Series& b) {
  return sub(multiply(a, b), multiply(b, a));
}

HomPoly leading_term(const Series& a) {
  if (a.terms.empty()) throw DomainError("leading_term of the zero series");
  return hom_slice(a, a.terms.begin()->first.deg);
}

HomPoly hom_slice(const Series& a, int degree) {
  HomPoly h;
  h.p = a.ctx->p();
  h.nvars = a.ctx->nvars();
  h.degree = degree;
  for (const auto& [m, c] : a.terms) {
    if (m.deg < degree) continue;
    if (m.deg > degree) break;
    h.terms[m.e] = c;
  }
  return h;
}

Series lift(const Ctx& ctx, const HomPoly& h, int trunc) {
  Series out = series_zero(ctx, trunc);
  for (const auto& [e, c] : h.terms) {
    Monomial m = make_monomial(e);
    if (m.deg <= trunc) out.terms[m] = c;
  }
  return out;
}

Series partial_derivative(const Series& w, int var, int s) {
  long long ps = ipow(w.ctx->p(), s);
  int p = w.ctx->p();
  Series out = series_zero(w.ctx, std::max(0, w.trunc - int(ps)));
  for (const auto& [m, c] : w.terms) {
    int e = m.e[var];
    if (e % ps != 0)
      throw DomainError("partial_derivative: exponent not divisible by p^s");
    if (e == 0) continue;
    int n = fp::norm(e / ps, p);
    if (n == 0) continue;
    Monomial m2 = m;
    m2.e[var] -= int(ps);
    m2.deg -= int(ps);
    if (m2.deg <= out.trunc) map_add(out.terms, m2, fp::mul(c, n, p), p);
  }
  return out;
}

HomPoly hom_zero(int p, int nvars) { return {p, nvars, 0, {}}; }

HomPoly hom_monomial(int p, int nvars, const std::vector<int>& e, int c) {
  HomPoly h{p, nvars, 0, {}};
  for (int v : e) h.degree += v;
  c = fp::norm(c, p);
  if (c != 0) h.terms[e] = c;
  return h;
}

HomPoly hom_add(const HomPoly& a, const HomPoly& b) {
  if (a.zero()) return b;
  if (b.zero()) return a;
  assert(a.degree == b.degree && a.p == b.p);
  HomPoly out = a;
  for (const auto& [e, c] : b.terms) {
    auto [it, fresh] = out.terms.try_emplace(e, c);
    if (!fresh) {
      it->second = fp::add(it->second, c, a.p);
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

HomPoly hom_sub(const HomPoly& a, const HomPoly& b) { return hom_add(a, hom_scale(b, -1)); }

HomPoly hom_scale(const HomPoly& a, int c) {
  c = fp::norm(c, a.p);
  HomPoly out{a.p, a.nvars, a.degree, {}};
  if (c == 0) return out;
  for (const auto& [e, v] : a.terms) out.terms[e] = fp::mul(v, c, a.p);
  return out;
}

HomPoly hom_mul(const HomPoly& a, const HomPoly& b) {
  assert(a.p == b.p && a.nvars == b.nvars);
  HomPoly out{a.p, a.nvars, a.degree + b.degree, {}};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(a.nvars);
      for (int v = 0; v < a.nvars; ++v) e[v] = ea[v] + eb[v];
      int c = fp::mul(ca, cb, a.p);
      auto [it, fresh] = out.terms.try_emplace(std::move(e), c);
      if (!fresh) {
        it->second = fp::add(it->second, c, a.p);
        if (it->second == 0) out.terms.erase(it);
      }
    }
  return out;
}

HomPoly hom_partial(const HomPoly& a, int var, long long ps) {
  HomPoly out{a.p, a.nvars, a.degree - int(ps), {}};
  for (const auto& [e, c] : a.terms) {
    if (e[var] % ps != 0)
      throw DomainError("hom_partial: exponent not divisible by p^s");
    if (e[var] == 0) continue;
    int n = fp::norm(e[var] / ps, a.p);
    if (n == 0) continue;
    std::vector<int> e2 = e;
    e2[var] -= int(ps);
    auto [it, fresh] = out.terms.try_emplace(std::move(e2), fp::mul(c, n, a.p));
    if (!fresh) it->second = fp::add(it->second, fp::mul(c, n, a.p), a.p);
  }
  if (out.zero()) out.degree = 0;
  return out;
}

bool hom_equal(const HomPoly& a, const HomPoly& b) {
  if (a.zero() && b.zero()) return true;
  return a.degree == b.degree && a.terms == b.terms;
}

int common_exponent_level(const HomPoly& a, int p) {
  int best = 30;
  for (const auto& [e, c] : a.terms)
    for (int v : e) {
      if (v == 0) continue;
      best = std::min(best, valuation(v, p));
    }
  return best;
}

bool hom_in_power_ring(const HomPoly& a, long long ps) {
  for (const auto& [e, c] : a.terms)
    for (int v : e)
      if (v % ps != 0) return false;
  return true;
}

}  // namespace iwa
