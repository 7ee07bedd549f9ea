#include "iwa/chevmodel.hpp"

#include <cassert>

#include "iwa/errors.hpp"

namespace iwa {

namespace {

long long integer_det(std::vector<std::vector<long long>> m) {
  // Bareiss fraction-free elimination.
  int n = int(m.size());
  long long sign = 1, prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

std::shared_ptr<const Model> Model::build(std::shared_ptr<const RootSystem> rs,
                                          long long p, int precision) {
  if (precision < 2) throw ConfigError("model precision N must be >= 2");
  auto model = std::shared_ptr<Model>(new Model());
  model->rs_ = std::move(rs);
  model->ring_ = PowRing(p, precision);

  LieType t = model->rs_->type();
  model->adjoint_ = (t == LieType::E || t == LieType::F || t == LieType::G);
  if (model->adjoint_) {
    std::vector<std::vector<long long>> cm;
    for (const auto& row : model->rs_->cartan_matrix())
      cm.emplace_back(row.begin(), row.end());
    if (integer_det(cm) % p == 0)
      throw ModelNotFaithfulError("adjoint model of " + model->rs_->name() +
                                  " is not faithful at graded level for p = " +
                                  std::to_string(p));
  }
  model->build_generators();
  model->basis_cache_.resize(model->lazard_dim());
  return model;
}

void Model::build_generators() {
  const RootSystem& rs = *rs_;
  int l = rs.rank();
  int nroots = rs.num_roots();
  gen_x_.assign(nroots, IntMat());
  gen_h_.assign(l, IntMat());

  if (adjoint_) {
    // Basis: root vectors in roots() order, then the simple coroots.
    dim_ = nroots + l;
    const auto& cc = rs.structure_constants();
    auto coroot_coeff = [&](const Root& g, int i) {
      long long num = (long long)g.coeffs[i] * rs.norm2(rs.simple_root(i));
      long long den = rs.norm2(g);
      assert(num % den == 0);
      return num / den;
    };
    for (int gidx = 0; gidx < nroots; ++gidx) {
      IntMat m(dim_);
      const Root& g = rs.root(gidx);
      for (int b = 0; b < nroots; ++b) {
        if (b == rs.negation_index(gidx)) {
          for (int i = 0; i < l; ++i) m.at(nroots + i, b) = coroot_coeff(g, i);
          continue;
        }
        int sum = rs.add_index(gidx, b);
        if (sum >= 0) m.at(sum, b) = cc.n(gidx, b);
      }
      for (int i = 0; i < l; ++i) m.at(gidx, nroots + i) = -rs.cartan_integer(g, i);
      gen_x_[gidx] = std::move(m);
    }
    for (int i = 0; i < l; ++i) {
      IntMat m(dim_);
      for (int b = 0; b < nroots; ++b) m.at(b, b) = rs.cartan_integer(rs.root(b), i);
      gen_h_[i] = std::move(m);
    }
    return;
  }

  // Classical defining representations: seed the simple root vectors, then
  // generate the rest through the extraspecial decompositions, which keeps
  // the matrices aligned with the abstract structure constants.
  LieType t = rs.type();
  switch (t) {
    case LieType::A: dim_ = l + 1; break;
    case LieType::B: dim_ = 2 * l + 1; break;
    case LieType::C: dim_ = 2 * l; break;
    case LieType::D: dim_ = 2 * l; break;
    default: assert(false);
  }
  auto E = [&](int i, int j) {
    IntMat m(dim_);
    m.at(i, j) = 1;
    return m;
  };
  auto set_pair = [&](int i, const IntMat& xp, const IntMat& xm) {
    gen_x_[rs.simple_root_index(i)] = xp;
    gen_x_[rs.negation_index(rs.simple_root_index(i))] = xm;
  };
  for (int i = 0; i < l; ++i) {
    switch (t) {
      case LieType::A:
        set_pair(i, E(i, i + 1), E(i + 1, i));
        break;
      case LieType::B: {
        // basis v_1..v_l, v_0, v_{-1}..v_{-l}; (v_0, v_0) = 2
        if (i + 1 < l) {
          set_pair(i, imat_add(E(i, i + 1), imat_scale(E(l + i + 2, l + i + 1), -1)),
                   imat_add(E(i + 1, i), imat_scale(E(l + i + 1, l + i + 2), -1)));
        } else {
          set_pair(i, imat_add(imat_scale(E(l - 1, l), 2), imat_scale(E(l, 2 * l), -1)),
                   imat_add(E(l, l - 1), imat_scale(E(2 * l, l), -2)));
        }
        break;
      }
      case LieType::C: {
        // basis u_1..u_l, w_1..w_l
        if (i + 1 < l) {
          set_pair(i, imat_add(E(i, i + 1), imat_scale(E(l + i + 1, l + i), -1)),
                   imat_add(E(i + 1, i), imat_scale(E(l + i, l + i + 1), -1)));
        } else {
          set_pair(i, E(l - 1, 2 * l - 1), E(2 * l - 1, l - 1));
        }
        break;
      }
      case LieType::D: {
        // basis v_1..v_l, v_{-1}..v_{-l}
        if (i + 1 < l) {
          set_pair(i, imat_add(E(i, i + 1), imat_scale(E(l + i + 1, l + i), -1)),
                   imat_add(E(i + 1, i), imat_scale(E(l + i, l + i + 1), -1)));
        } else {
          set_pair(i, imat_add(E(l - 2, 2 * l - 1), imat_scale(E(l - 1, 2 * l - 2), -1)),
                   imat_add(E(2 * l - 1, l - 2), imat_scale(E(2 * l - 2, l - 1), -1)));
        }
        break;
      }
      default: assert(false);
    }
  }

  const auto& cc = rs.structure_constants();
  int npos = rs.num_positive();
  for (int gidx = npos; gidx < nroots; ++gidx) {
    if (rs.root(gidx).height == 1) continue;
    auto es = cc.extraspecial.at(gidx);
    int e = es.first, h = es.second;
    int n = cc.n(e, h);
    gen_x_[gidx] = imat_divide(imat_bracket(gen_x_[e], gen_x_[h]), n);
    int ge = rs.negation_index(gidx);
    int ee = rs.negation_index(e), hh = rs.negation_index(h);
    gen_x_[ge] = imat_divide(imat_bracket(gen_x_[ee], gen_x_[hh]), cc.n(ee, hh));
  }
  for (int i = 0; i < l; ++i) {
    int s = rs.simple_root_index(i);
    gen_h_[i] = imat_bracket(gen_x_[s], gen_x_[rs.negation_index(s)]);
  }
}

GroupElement Model::identity() const {
  return {zq_identity(dim_), shared_from_this()};
}

GroupElement Model::x_element(int root_idx, long long t) const {
  const PowRing& R = ring_;
  t = R.norm(t);
  if (t % R.p != 0)
    throw NotInKernelError("x_element: parameter must be divisible by p");
  ZqMat acc = zq_identity(dim_);
  IntMat xk = gen_x_[root_idx];
  // unit part of k! mod p^N, maintained incrementally
  long long fact_unit = 1;
  int fact_val = 0;
  for (int k = 1; !xk.is_zero(); ++k) {
    assert(k <= 60);
    {
      long long j = k;
      while (j % R.p == 0) {
        j /= R.p;
        ++fact_val;
      }
      fact_unit = R.mul(fact_unit, j);
    }
    // t^k / k! = (t^k / p^e) * inv(k!/p^e), exact since v_p(t^k) >= k > e
    PowRing wide(R.p, R.n + fact_val);
    long long tk = wide.pow(t, k);
    long long pe = ipow(R.p, fact_val);
    assert(tk % pe == 0);
    long long coef = R.mul(R.norm(tk / pe), R.inv_unit(fact_unit));
    acc = zq_add(R, acc, zq_scale(R, zq_from_int(R, xk), coef));
    xk = imat_mul(xk, gen_x_[root_idx]);
  }
  return {std::move(acc), shared_from_this()};
}

GroupElement Model::h_element(int simple_i, long long u) const {
  const PowRing& R = ring_;
  u = R.norm(u);
  if ((u - 1) % R.p != 0)
    throw NotInKernelError("h_element: parameter must be 1 mod p");
  const IntMat& H = gen_h_[simple_i];
  ZqMat m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j) assert(H.at(i, j) == 0);
  for (int i = 0; i < dim_; ++i) m.at(i, i) = R.pow_signed(u, H.at(i, i));
  return {std::move(m), shared_from_this()};
}

GroupElement Model::basis_element(int var) const {
  return {cached_basis(var), shared_from_this()};
}

const ZqMat& Model::cached_basis(int var) const {
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (basis_cache_[var]) return *basis_cache_[var];
  }
  const RootSystem& r = rs();
  ZqMat m;
  if (r.var_is_torus(var))
    m = h_element(r.var_torus_number(var), 1 + ring_.p).m;
  else
    m = x_element(r.var_root_index(var), ring_.p).m;
  std::lock_guard<std::mutex> lock(cache_mu_);
  if (!basis_cache_[var]) basis_cache_[var] = std::move(m);
  return *basis_cache_[var];
}

GroupElement Model::mul(const GroupElement& a, const GroupElement& b) const {
  return {zq_mul(ring_, a.m, b.m), shared_from_this()};
}

GroupElement Model::inverse(const GroupElement& a) const {
  return {zq_inverse(ring_, a.m), shared_from_this()};
}

GroupElement Model::power(const GroupElement& a, long long e) const {
  return {zq_pow(ring_, a.m, e), shared_from_this()};
}

int Model::congruence_level(const GroupElement& g) const {
  int level = ring_.n;
  for (int i = 0; i < dim_ && level > 0; ++i)
    for (int j = 0; j < dim_; ++j) {
      long long d = ring_.sub(g.m.at(i, j), i == j ? 1 : 0);
      if (d == 0) continue;
      int v = valuation(d, ring_.p);
      if (v < level) level = v;
      if (level == 0) break;
    }
  return level;
}

const Model::PeelingData& Model::peeling() const {
  std::lock_guard<std::mutex> lock(cache_mu_);
  if (peeling_) return *peeling_;
  int d = lazard_dim();
  int p = int(ring_.p);
  int ncoord = dim_ * dim_;
  // columns: level-1 images of the basis elements
  std::vector<std::vector<uint8_t>> cols(d);
  for (int v = 0; v < d; ++v) {
    ZqMat g;
    {
      const RootSystem& r = rs();
      g = r.var_is_torus(v) ? h_element(r.var_torus_number(v), 1 + ring_.p).m
                            : x_element(r.var_root_index(v), ring_.p).m;
    }
    cols[v].resize(ncoord);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        long long e = ring_.sub(g.at(i, j), i == j ? 1 : 0);
        assert(e % ring_.p == 0);
        cols[v][size_t(i) * dim_ + j] = uint8_t(fp::norm(e / ring_.p, p));
      }
  }
  // greedy row selection until the system has full column rank
  auto pd = std::make_unique<PeelingData>();
  std::vector<std::vector<int>> reduced;  // row-echelon basis of selected rows
  std::vector<int> pivot_of;
  for (int r = 0; r < ncoord && int(pd->rows.size()) < d; ++r) {
    std::vector<int> v(d);
    for (int c = 0; c < d; ++c) v[c] = cols[c][r];
    for (size_t k = 0; k < reduced.size(); ++k) {
      int f = v[pivot_of[k]];
      if (f == 0) continue;
      for (int c = 0; c < d; ++c)
        v[c] = fp::sub(v[c], fp::mul(f, reduced[k][c], p), p);
    }
    int piv = -1;
    for (int c = 0; c < d; ++c)
      if (v[c] != 0) {
        piv = c;
        break;
      }
    if (piv < 0) continue;
    int s = fp::inv(v[piv], p);
    for (int c = 0; c < d; ++c) v[c] = fp::mul(v[c], s, p);
    reduced.push_back(std::move(v));
    pivot_of.push_back(piv);
    pd->rows.push_back(r);
  }
  if (int(pd->rows.size()) < d)
    throw ModelNotFaithfulError("level-1 images do not span; model not faithful");
  // invert the selected square system via [S | I] reduction
  fp::Mat aug(d, 2 * d, p);
  for (int k = 0; k < d; ++k) {
    for (int c = 0; c < d; ++c) aug.at(k, c) = cols[c][pd->rows[k]];
    aug.at(k, d + k) = 1;
  }
  fp::rref(aug);
  pd->inv = fp::Mat(d, d, p);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pd->inv.at(i, j) = aug.at(i, d + j);
  peeling_ = std::move(pd);
  return *peeling_;
}

std::vector<long long> Model::lazard_coordinates(const GroupElement& g) const {
  if (g.model.get() != this)
    throw ContextError("lazard_coordinates: element from a different model");
  const PeelingData& pd = peeling();
  const PowRing& R = ring_;
  int d = lazard_dim();
  std::vector<long long> lambda(d, 0);
  long long digit_weight = 1;
  for (int level = 1; level < R.n; ++level) {
    ZqMat P = zq_identity(dim_);
    for (int v = 0; v < d; ++v)
      if (lambda[v] != 0) P = zq_mul(R, P, zq_pow(R, cached_basis(v), lambda[v]));
    ZqMat Em = zq_mul(R, g.m, zq_inverse(R, P));
    long long pk = ipow(R.p, level);
    std::vector<int> rhs(d);
    for (int k = 0; k < d; ++k) {
      int r = pd.rows[k];
      int i = r / dim_, j = r % dim_;
      long long e = R.sub(Em.at(i, j), i == j ? 1 : 0);
      if (e % pk != 0)
        throw ModelNotFaithfulError("digit peeling lost the graded invariant");
      rhs[k] = fp::norm(e / pk, int(R.p));
    }
    for (int i = 0; i < d; ++i) {
      long long x = 0;
      for (int k = 0; k < d; ++k)
        x = (x + (long long)pd.inv.at(i, k) * rhs[k]) % R.p;
      lambda[i] += x * digit_weight;
    }
    digit_weight *= R.p;
  }
  // exact reconstruction check
  ZqMat P = zq_identity(dim_);
  for (int v = 0; v < d; ++v)
    if (lambda[v] != 0) P = zq_mul(R, P, zq_pow(R, cached_basis(v), lambda[v]));
  if (!(P == g.m))
    throw ModelNotFaithfulError("Lazard coordinates failed to reconstruct the element");
  return lambda;
}

}  // namespace iwa
