#include "iwa/rootsys.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "iwa/errors.hpp"

namespace iwa {

std::string lie_type_name(LieType t) {
  switch (t) {
    case LieType::A: return "A";
    case LieType::B: return "B";
    case LieType::C: return "C";
    case LieType::D: return "D";
    case LieType::E: return "E";
    case LieType::F: return "F";
    case LieType::G: return "G";
  }
  return "?";
}

std::pair<LieType, int> parse_type_label(const std::string& label, int rank) {
  if (label.empty()) throw ConfigError("empty type label");
  LieType t;
  switch (label[0]) {
    case 'A': t = LieType::A; break;
    case 'B': t = LieType::B; break;
    case 'C': t = LieType::C; break;
    case 'D': t = LieType::D; break;
    case 'E': t = LieType::E; break;
    case 'F': t = LieType::F; break;
    case 'G': t = LieType::G; break;
    default: throw ConfigError("unknown type label '" + label + "'");
  }
  if (label.size() > 1) {
    int r = 0;
    for (size_t i = 1; i < label.size(); ++i) {
      if (label[i] < '0' || label[i] > '9')
        throw ConfigError("malformed type label '" + label + "'");
      r = r * 10 + (label[i] - '0');
    }
    rank = r;
  }
  return {t, rank};
}

Root Root::negated() const {
  Root r;
  r.coeffs.reserve(coeffs.size());
  for (int c : coeffs) r.coeffs.push_back(-c);
  r.height = -height;
  return r;
}

int ChevalleyConstants::n(int a, int b) const {
  auto it = n_table.find({a, b});
  return it == n_table.end() ? 0 : it->second;
}

const std::vector<ChevalleyConstants::CRow>& ChevalleyConstants::c_rows(int a, int b) const {
  static const std::vector<CRow> empty;
  auto it = c_table.find({a, b});
  return it == c_table.end() ? empty : it->second;
}

namespace {

void check_rank(LieType t, int rank) {
  bool ok = false;
  switch (t) {
    case LieType::A: ok = rank >= 1; break;
    case LieType::B: ok = rank >= 2; break;
    case LieType::C: ok = rank >= 2; break;
    case LieType::D: ok = rank >= 3; break;
    case LieType::E: ok = rank >= 6 && rank <= 8; break;
    case LieType::F: ok = rank == 4; break;
    case LieType::G: ok = rank == 2; break;
  }
  if (!ok) {
    std::ostringstream os;
    os << "illegal type/rank pair " << lie_type_name(t) << rank;
    throw ConfigError(os.str());
  }
}

void make_cartan(LieType t, int l, std::vector<std::vector<int>>& A, std::vector<int>& d) {
  A.assign(l, std::vector<int>(l, 0));
  d.assign(l, 1);
  for (int i = 0; i < l; ++i) A[i][i] = 2;
  auto link = [&](int i, int j) { A[i][j] = A[j][i] = -1; };
  switch (t) {
    case LieType::A:
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      break;
    case LieType::B:
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      A[l - 2][l - 1] = -2;  // delta_l is the short root
      for (int i = 0; i + 1 < l; ++i) d[i] = 2;
      d[l - 1] = 1;
      break;
    case LieType::C:
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      A[l - 1][l - 2] = -2;  // delta_l is the long root
      d[l - 1] = 2;
      break;
    case LieType::D:
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1);
      link(l - 3, l - 1);
      break;
    case LieType::E:
      link(0, 2);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      if (l >= 7) link(5, 6);
      if (l >= 8) link(6, 7);
      link(1, 3);
      break;
    case LieType::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      A[1][2] = -2;
      d[0] = d[1] = 2;
      break;
    case LieType::G:
      A[0][1] = -1;
      A[1][0] = -3;
      d[1] = 3;
      break;
  }
}

// Height ascending; ties broken by descending lex on coefficient vectors,
// so each block mirrors its opposite and the A2 layout reads
// -a1-a2, -a2, -a1, a1, a2, a1+a2.
bool root_order(const Root& x, const Root& y) {
  if (x.height != y.height) return x.height < y.height;
  return x.coeffs > y.coeffs;
}

}  // namespace

void RootSystem::construct(LieType t, int rank) {
  check_rank(t, rank);
  type_ = t;
  rank_ = rank;
  make_cartan(t, rank, cartan_, dsym_);

  // Closure of the simple roots under root strings: for a positive root r
  // and simple delta_j, r + delta_j is a root iff p - <r, delta_j> >= 1,
  // where p counts how far the string extends below r.
  std::map<std::vector<int>, int> seen;  // coeffs -> height
  std::vector<Root> level;
  for (int i = 0; i < rank; ++i) {
    Root r;
    r.coeffs.assign(rank, 0);
    r.coeffs[i] = 1;
    r.height = 1;
    seen[r.coeffs] = 1;
    level.push_back(std::move(r));
  }
  std::vector<Root> pos = level;
  auto is_known = [&](const std::vector<int>& c) { return seen.count(c) != 0; };
  while (!level.empty()) {
    std::vector<Root> next;
    for (const Root& r : level) {
      for (int j = 0; j < rank; ++j) {
        int down = 0;
        std::vector<int> c = r.coeffs;
        for (;;) {
          c[j] -= 1;
          bool neg_ok = true;
          std::vector<int> cn(rank);
          bool allnonneg = true, allnonpos = true;
          for (int k = 0; k < rank; ++k) {
            if (c[k] > 0) allnonpos = false;
            if (c[k] < 0) allnonneg = false;
            cn[k] = -c[k];
          }
          bool zero = std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
          if (zero) {
            neg_ok = false;
          } else if (allnonneg) {
            neg_ok = is_known(c);
          } else if (allnonpos) {
            neg_ok = is_known(cn);
          } else {
            neg_ok = false;
          }
          if (!neg_ok) break;
          ++down;
        }
        int ci = 0;
        for (int k = 0; k < rank; ++k) ci += r.coeffs[k] * cartan_[k][j];
        int up = down - ci;
        if (up >= 1) {
          Root s = r;
          s.coeffs[j] += 1;
          s.height += 1;
          if (!seen.count(s.coeffs)) {
            seen[s.coeffs] = s.height;
            next.push_back(s);
          }
        }
      }
    }
    if (!next.empty()) pos.insert(pos.end(), next.begin(), next.end());
    level = std::move(next);
  }

  roots_.clear();
  roots_.reserve(2 * pos.size());
  for (const Root& r : pos) roots_.push_back(r.negated());
  for (Root& r : pos) roots_.push_back(std::move(r));
  std::sort(roots_.begin(), roots_.end(), root_order);

  index_.clear();
  for (int i = 0; i < int(roots_.size()); ++i) index_[roots_[i].coeffs] = i;

  simple_index_.assign(rank, -1);
  for (int i = 0; i < rank; ++i) {
    std::vector<int> c(rank, 0);
    c[i] = 1;
    simple_index_[i] = index_.at(c);
  }
}

std::shared_ptr<const RootSystem> RootSystem::build(LieType t, int rank) {
  auto rs = std::shared_ptr<RootSystem>(new RootSystem());
  rs->construct(t, rank);
  return rs;
}

std::shared_ptr<const RootSystem> RootSystem::build(const std::string& label, int rank) {
  auto [t, r] = parse_type_label(label, rank);
  return build(t, r);
}

std::string RootSystem::name() const {
  return lie_type_name(type_) + std::to_string(rank_);
}

int RootSystem::root_index(const std::vector<int>& coeffs) const {
  auto it = index_.find(coeffs);
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::negation_index(int idx) const {
  return index_.at(roots_[idx].negated().coeffs);
}

int RootSystem::add_index(int a, int b) const {
  std::vector<int> c(rank_);
  for (int k = 0; k < rank_; ++k) c[k] = roots_[a].coeffs[k] + roots_[b].coeffs[k];
  return root_index(c);
}

const Root& RootSystem::simple_root(int i) const { return roots_[simple_index_[i]]; }

bool RootSystem::is_simple(int idx) const { return simple_number(idx) >= 0; }

int RootSystem::simple_number(int idx) const {
  const Root& r = roots_[idx];
  if (r.height != 1) return -1;
  for (int i = 0; i < rank_; ++i)
    if (r.coeffs[i] == 1) return i;
  return -1;
}

int RootSystem::cartan_integer(const Root& alpha, int i) const {
  int v = 0;
  for (int k = 0; k < rank_; ++k) v += alpha.coeffs[k] * cartan_[k][i];
  return v;
}

int RootSystem::cartan_integer(const Root& alpha, const Root& delta) const {
  int idx = root_index(delta);
  int num = idx >= 0 ? simple_number(idx) : -1;
  if (num < 0) throw DomainError("cartan_integer: second argument must be a simple root");
  return cartan_integer(alpha, num);
}

long long RootSystem::inner(const Root& a, const Root& b) const {
  // (delta_i | delta_j) = d_j * cartan_[i][j]; bilinear extension.
  long long v = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (int j = 0; j < rank_; ++j)
      v += (long long)a.coeffs[i] * b.coeffs[j] * dsym_[j] * cartan_[i][j];
  }
  return v;
}

int RootSystem::max_highest_coeff() const {
  const Root& h = highest_root();
  return *std::max_element(h.coeffs.begin(), h.coeffs.end());
}

bool RootSystem::hyp_phi(long long p) const {
  if (p < 3) throw ConfigError("hyp_phi: primes below 3 are unsupported");
  return p > max_highest_coeff();
}

int RootSystem::var_root_index(int v) const {
  int nneg = num_positive();
  if (v < nneg) return v;
  if (var_is_torus(v)) throw DomainError("var_root_index: torus variable");
  return v - rank_;
}

int RootSystem::var_of_root(int root_idx) const {
  int nneg = num_positive();
  return root_idx < nneg ? root_idx : root_idx + rank_;
}

std::string RootSystem::root_name(int idx) const {
  const Root& r = roots_[idx];
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < rank_; ++i) {
    int c = r.coeffs[i];
    if (c == 0) continue;
    if (c > 0 && !first) os << '+';
    if (c < 0) os << '-';
    if (std::abs(c) != 1) os << std::abs(c);
    os << 'a' << (i + 1);
    first = false;
  }
  return os.str();
}

std::string RootSystem::var_name(int v) const {
  if (var_is_torus(v)) return "d" + std::to_string(var_torus_number(v) + 1);
  return root_name(var_root_index(v));
}

// ---------------------------------------------------------------------------
// Structure constants.
//
// Signs are fixed by the extraspecial-pair convention: for each non-simple
// positive root g, the decomposition g = e + h with e minimal in the root
// order gets N_{e,h} = +(q+1), q the length of the string h, h-e, h-2e, ...
// Every other constant follows from antisymmetry, the cyclic identity
// N(x,y)/|z|^2 = N(y,z)/|x|^2 (x+y+z = 0) and the Jacobi relation on
// quadruples summing to zero.
// ---------------------------------------------------------------------------

namespace {

struct ConstantBuilder {
  const RootSystem& rs;
  std::map<std::pair<int, int>, int> memo;
  std::map<int, std::pair<int, int>> extraspecial;  // sum index -> (e, h)

  explicit ConstantBuilder(const RootSystem& r) : rs(r) {
    int nneg = rs.num_positive();
    for (int g = nneg; g < rs.num_roots(); ++g) {
      if (rs.root(g).height == 1) continue;
      for (int a = nneg; a < rs.num_roots(); ++a) {
        int b = diff_index(g, a);
        if (b >= 0 && rs.root(b).positive()) {
          extraspecial[g] = {a, b};
          break;
        }
      }
    }
  }

  int diff_index(int g, int a) const {
    std::vector<int> c(rs.rank());
    for (int k = 0; k < rs.rank(); ++k)
      c[k] = rs.root(g).coeffs[k] - rs.root(a).coeffs[k];
    return rs.root_index(c);
  }

  int down_string(int b, int a) const {
    // largest q with root(b) - q*root(a) a root
    int q = 0;
    std::vector<int> c = rs.root(b).coeffs;
    for (;;) {
      for (int k = 0; k < rs.rank(); ++k) c[k] -= rs.root(a).coeffs[k];
      if (rs.root_index(c) < 0) break;
      ++q;
    }
    return q;
  }

  static long long exact_div(long long num, long long den) {
    assert(den != 0 && num % den == 0);
    return num / den;
  }

  int n(int a, int b) {
    int sum = rs.add_index(a, b);
    if (sum < 0) return 0;
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) {
      assert(it->second != 0);  // recursion is well-founded on height sums
      return it->second;
    }
    const Root& A = rs.root(a);
    const Root& B = rs.root(b);
    long long val = 0;
    if (A.positive() && B.positive()) {
      if (a > b) {
        val = -n(b, a);
      } else {
        auto [e, h] = extraspecial.at(sum);
        if (a == e && b == h) {
          val = down_string(b, a) + 1;
        } else if (a == h && b == e) {
          val = -n(e, h);
        } else {
          // Jacobi on (a, b, -e, -h):
          // N(a,b) N(a+b,-e) + N(b,-e) N(b-e,a) + N(-e,a) N(a-e,b) = 0
          int ne = rs.negation_index(e);
          long long lhs = 0;
          int be = rs.add_index(b, ne);
          if (be >= 0) lhs += (long long)n(b, ne) * n(be, a);
          int ae = rs.add_index(a, ne);
          if (ae >= 0) lhs += (long long)n(ne, a) * n(ae, b);
          val = exact_div(-lhs, n(sum, ne));
        }
      }
    } else if (!A.positive() && !B.positive()) {
      val = -n(rs.negation_index(a), rs.negation_index(b));
    } else if (!A.positive() && B.positive()) {
      val = -n(b, a);
    } else {
      // A positive, B negative.
      if (rs.root(sum).positive()) {
        // cyclic identity on (a, b, -sum)
        long long inner = n(b, rs.negation_index(sum));
        val = exact_div(rs.norm2(rs.root(sum)) * inner, rs.norm2(A));
      } else {
        val = -n(rs.negation_index(a), rs.negation_index(b));
      }
    }
    assert(val != 0 && std::abs(val) <= 3);
    memo[key] = int(val);
    return int(val);
  }
};

// Exact small-rational arithmetic for the commutator-coefficient engine.
struct Rat {
  long long num = 0, den = 1;

  static long long gcd(long long a, long long b) { return std::gcd(a, b); }
  static Rat make(long long n, long long d) {
    assert(d != 0);
    if (n == 0) return {0, 1};
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = gcd(n < 0 ? -n : n, d);
    return {n / g, d / g};
  }
  Rat operator+(const Rat& o) const {
    return make(num * o.den + o.num * den, den * o.den);
  }
  Rat operator*(const Rat& o) const { return make(num * o.num, den * o.den); }
  Rat operator-() const { return {-num, den}; }
  bool zero() const { return num == 0; }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rat& o) const {
    return num * o.den < o.num * den;
  }
};

// Normal-ordered elements of the enveloping algebra of the nilpotent span
// of { e_{i a + j b} } over Q, truncated by cone degree (the bracket is
// homogeneous for it, so truncation is exact below the cutoff).
struct ConeAlgebra {
  struct Var {
    int i, j;      // cone position
    int root_idx;  // index in the ambient root system
    int deg;       // i + j
  };

  const RootSystem& rs;
  const std::map<std::pair<int, int>, int>& ntab;
  std::vector<Var> vars;  // sorted by (deg, i)
  int cutoff;

  using Mono = std::vector<int>;  // exponents over vars
  using Elem = std::map<Mono, Rat>;

  ConeAlgebra(const RootSystem& r, const std::map<std::pair<int, int>, int>& nt,
              int a, int b, int cutoff_)
      : rs(r), ntab(nt), cutoff(cutoff_) {
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j) {
        if (i + j == 0) continue;
        std::vector<int> c(rs.rank());
        for (int k = 0; k < rs.rank(); ++k)
          c[k] = i * rs.root(a).coeffs[k] + j * rs.root(b).coeffs[k];
        int idx = rs.root_index(c);
        if (idx >= 0) vars.push_back({i, j, idx, i + j});
      }
    std::sort(vars.begin(), vars.end(), [](const Var& x, const Var& y) {
      if (x.deg != y.deg) return x.deg < y.deg;
      return x.i < y.i;
    });
  }

  int nvars() const { return int(vars.size()); }
  int mono_deg(const Mono& m) const {
    int d = 0;
    for (int v = 0; v < nvars(); ++v) d += m[v] * vars[v].deg;
    return d;
  }
  int bracket_var(int x, int y) const {  // index of [v_x, v_y] target, -1 if zero
    int i = vars[x].i + vars[y].i, j = vars[x].j + vars[y].j;
    for (int v = 0; v < nvars(); ++v)
      if (vars[v].i == i && vars[v].j == j) return v;
    return -1;
  }
  int bracket_coeff(int x, int y) const {
    auto it = ntab.find({vars[x].root_idx, vars[y].root_idx});
    return it == ntab.end() ? 0 : it->second;
  }

  static void add_term(Elem& e, const Mono& m, const Rat& c) {
    if (c.zero()) return;
    auto [it, fresh] = e.try_emplace(m, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.zero()) e.erase(it);
    }
  }

  Elem one() const {
    Elem e;
    e[Mono(nvars(), 0)] = {1, 1};
    return e;
  }

  // Normal order a word of variable letters. Rewriting preserves the cone
  // degree, so one cutoff check at entry covers every derived word.
  void normalize(std::vector<int> word, Rat coeff, Elem& out) const {
    int wdeg = 0;
    for (int v : word) wdeg += vars[v].deg;
    if (wdeg > cutoff) return;
    std::vector<std::pair<std::vector<int>, Rat>> stack;
    stack.emplace_back(std::move(word), coeff);
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
        Mono m(nvars(), 0);
        for (int v : w) m[v] += 1;
        if (mono_deg(m) <= cutoff) add_term(out, m, c);
        continue;
      }
      int x = w[bad], y = w[bad + 1];
      std::vector<int> swapped = w;
      std::swap(swapped[bad], swapped[bad + 1]);
      stack.emplace_back(std::move(swapped), c);
      int nb = bracket_coeff(x, y);
      int tv = nb == 0 ? -1 : bracket_var(x, y);
      if (tv >= 0) {
        std::vector<int> shorter;
        shorter.reserve(w.size() - 1);
        shorter.insert(shorter.end(), w.begin(), w.begin() + bad);
        shorter.push_back(tv);
        shorter.insert(shorter.end(), w.begin() + bad + 2, w.end());
        stack.emplace_back(std::move(shorter), c * Rat{nb, 1});
      }
    }
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        std::vector<int> word;
        for (int v = 0; v < nvars(); ++v) word.insert(word.end(), ma[v], v);
        for (int v = 0; v < nvars(); ++v) word.insert(word.end(), mb[v], v);
        normalize(std::move(word), ca * cb, out);
      }
    return out;
  }

  Elem exp_gen(int v, const Rat& t) const {
    Elem out = one();
    Rat c = {1, 1};
    Mono m(nvars(), 0);
    for (int k = 1; k * vars[v].deg <= cutoff; ++k) {
      c = c * t * Rat{1, k};
      m[v] += 1;
      add_term(out, m, c);
    }
    return out;
  }
};

}  // namespace

const ChevalleyConstants& RootSystem::structure_constants() const {
  std::lock_guard<std::mutex> lock(constants_mu_);
  if (constants_) return *constants_;
  auto cc = std::make_shared<ChevalleyConstants>();
  ConstantBuilder builder(*this);
  cc->extraspecial = builder.extraspecial;
  for (int a = 0; a < num_roots(); ++a)
    for (int b = 0; b < num_roots(); ++b) {
      if (b == negation_index(a)) continue;
      if (add_index(a, b) < 0) continue;
      cc->n_table[{a, b}] = builder.n(a, b);
    }

  // Commutator coefficients. The (1,1) row is N_{a,b}; pairs whose cone
  // holds more roots go through the enveloping-algebra engine: peel
  //   x_a(1) x_b(1) x_a(-1) x_b(-1) = prod_{(i,j)} x_{ia+jb}(c_ij)
  // factor by factor in (i+j, i) order.
  for (int a = 0; a < num_roots(); ++a)
    for (int b = 0; b < num_roots(); ++b) {
      if (b == negation_index(a)) continue;
      int sum = add_index(a, b);
      if (sum < 0) continue;
      ConeAlgebra alg(*this, cc->n_table, a, b, /*cutoff*/ 6);
      std::vector<ChevalleyConstants::CRow> rows;
      bool multi = false;
      for (const auto& v : alg.vars)
        if (v.i + v.j >= 3 && v.i >= 1 && v.j >= 1) multi = true;
      if (!multi) {
        rows.push_back({1, 1, cc->n_table.at({a, b}), sum});
      } else {
        int va = -1, vb = -1;
        for (int v = 0; v < alg.nvars(); ++v) {
          if (alg.vars[v].i == 1 && alg.vars[v].j == 0) va = v;
          if (alg.vars[v].i == 0 && alg.vars[v].j == 1) vb = v;
        }
        assert(va >= 0 && vb >= 0);
        Rat one{1, 1}, mone{-1, 1};
        auto A = alg.exp_gen(va, one);
        auto B = alg.exp_gen(vb, one);
        auto Ai = alg.exp_gen(va, mone);
        auto Bi = alg.exp_gen(vb, mone);
        auto C = alg.mul(alg.mul(A, B), alg.mul(Ai, Bi));
        for (int v = 0; v < alg.nvars(); ++v) {
          if (alg.vars[v].i < 1 || alg.vars[v].j < 1) continue;
          ConeAlgebra::Mono key(alg.nvars(), 0);
          key[v] = 1;
          Rat c{0, 1};
          auto it = C.find(key);
          if (it != C.end()) c = it->second;
          assert(c.den == 1);
          if (c.num != 0)
            rows.push_back({alg.vars[v].i, alg.vars[v].j, int(c.num), alg.vars[v].root_idx});
          C = alg.mul(alg.exp_gen(v, -c), C);
        }
        // after peeling every factor the commutator must be spent
        const Rat rat_one{1, 1};
        assert(C.size() == 1);
        assert(C.begin()->first == ConeAlgebra::Mono(alg.nvars(), 0));
        assert(C.begin()->second == rat_one);
        (void)rat_one;
      }
      cc->c_table[{a, b}] = std::move(rows);
    }

  constants_ = cc;
  return *constants_;
}

}  // namespace iwa
