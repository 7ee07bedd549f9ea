#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "iwa/chevmodel.hpp"

namespace iwa {

// Normal-ordered monomial y_1^{e_1} ... y_d^{e_d} in the Lazard variables.
struct Monomial {
  std::vector<int> e;
  int deg = 0;

  static Monomial unit(int nvars) { return {std::vector<int>(nvars, 0), 0}; }
  bool is_unit() const { return deg == 0; }
  bool operator==(const Monomial&) const = default;
};

Monomial make_monomial(std::vector<int> exps);

// Graded-lexicographic order: total degree, then ascending lex on exponents.
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.e < b.e;
  }
};

using TermMap = std::map<Monomial, int, MonoLess>;

// Homogeneous polynomial in the associated graded (commutative) ring.
struct HomPoly {
  int p = 3;
  int nvars = 0;
  int degree = 0;
  std::map<std::vector<int>, int> terms;

  bool zero() const { return terms.empty(); }
};

// Shared environment for series arithmetic over one model: the prime, the
// variable order, the truncation ceiling and the rewrite-rule cache. Rules
// are the exact corrections y_j y_i - y_i y_j = series(g_j g_i) - series(g_i g_j),
// whose lowest degree is at least p, so rewriting terminates under truncation.
class SeriesContext : public std::enable_shared_from_this<SeriesContext> {
 public:
  static std::shared_ptr<const SeriesContext> make(std::shared_ptr<const Model> model,
                                                   int dmax);

  const Model& model() const { return *model_; }
  const RootSystem& rs() const { return model_->rs(); }
  int p() const { return int(model_->p()); }
  int nvars() const { return model_->lazard_dim(); }
  int dmax() const { return dmax_; }
  std::vector<std::string> var_names() const;

  const TermMap& corr(int j, int i) const;  // j > i in the Lazard order
  // normal form of a*b up to the degree budget; cached and upgraded in place
  // when a later call needs a larger budget (rewriting never lowers degree)
  TermMap normal_product(const Monomial& a, const Monomial& b, int budget) const;

 private:
  SeriesContext() = default;
  std::shared_ptr<const Model> model_;
  int dmax_ = 0;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, TermMap> corr_;
  struct ProdEntry {
    int budget = -1;
    TermMap terms;
  };
  mutable std::map<std::pair<std::vector<int>, std::vector<int>>, ProdEntry> prod_;
};

using Ctx = std::shared_ptr<const SeriesContext>;

// Truncated noncommutative power series over F_p in the Lazard variables.
struct Series {
  Ctx ctx;
  int trunc = 0;
  TermMap terms;
};

Series series_zero(const Ctx& ctx, int trunc);
Series series_const(const Ctx& ctx, int c, int trunc);
Series series_variable(const Ctx& ctx, int var, int trunc);
Series series_monomial(const Ctx& ctx, const Monomial& m, int c, int trunc);

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series scale(const Series& a, int c);
bool same_terms(const Series& a, const Series& b);
bool is_zero(const Series& a);
int min_degree(const Series& a);  // -1 for the zero series

// Single-variable binomial series sum_k C(lambda, k) y_i^k, k <= trunc;
// C(lambda, k) mod p follows the digit product rule.
Series binomial_expand(const Ctx& ctx, int var, long long lambda, int trunc);
int lucas_binomial(long long n, long long k, int p);

// Expansion of a kernel element as the ordered product of the binomial
// series of its Lazard coordinates. No rewriting is involved: the factors
// appear in increasing variable order.
Series element_to_series(const Ctx& ctx, const GroupElement& g, int trunc);

Series multiply(const Series& a, const Series& b);
Series commutator(const Series& a, const Series& b);

HomPoly leading_term(const Series& a);     // throws DomainError on zero input
HomPoly hom_slice(const Series& a, int degree);
Series lift(const Ctx& ctx, const HomPoly& h, int trunc);

// Formal derivative treating y_var^{p^s} as the variable; every monomial
// must carry a var-exponent divisible by p^s.
Series partial_derivative(const Series& w, int var, int s);

// Commutative graded-ring helpers.
HomPoly hom_zero(int p, int nvars);
HomPoly hom_monomial(int p, int nvars, const std::vector<int>& e, int c);
HomPoly hom_add(const HomPoly& a, const HomPoly& b);
HomPoly hom_sub(const HomPoly& a, const HomPoly& b);
HomPoly hom_scale(const HomPoly& a, int c);
HomPoly hom_mul(const HomPoly& a, const HomPoly& b);
HomPoly hom_partial(const HomPoly& a, int var, long long ps);
bool hom_equal(const HomPoly& a, const HomPoly& b);
// max s with p^s dividing every nonzero exponent (caps at 30)
int common_exponent_level(const HomPoly& a, int p);
bool hom_in_power_ring(const HomPoly& a, long long ps);

}  // namespace iwa
