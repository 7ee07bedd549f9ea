#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "iwa/fp.hpp"
#include "iwa/rootsys.hpp"
#include "iwa/zq.hpp"

namespace iwa {

class Model;

// Element of the first congruence kernel in the model's representation:
// an invertible matrix over Z/p^N congruent to the identity mod p.
struct GroupElement {
  ZqMat m;
  std::shared_ptr<const Model> model;
};

// Exact matrix model of the generators x_alpha(p), h_delta(1+p).
// Classical types use the defining representation (A: l+1, B: 2l+1,
// C: 2l, D: 2l); exceptional types use the adjoint representation.
// Generator matrices are produced from the abstract structure constants,
// so every bracket relation holds against them on the nose.
class Model : public std::enable_shared_from_this<Model> {
 public:
  static std::shared_ptr<const Model> build(std::shared_ptr<const RootSystem> rs,
                                            long long p, int precision);

  const RootSystem& rs() const { return *rs_; }
  std::shared_ptr<const RootSystem> rs_ptr() const { return rs_; }
  const ChevalleyConstants& constants() const { return rs_->structure_constants(); }
  long long p() const { return ring_.p; }
  int precision() const { return ring_.n; }
  const PowRing& ring() const { return ring_; }
  int dim() const { return dim_; }
  bool adjoint() const { return adjoint_; }

  const IntMat& X(int root_idx) const { return gen_x_[root_idx]; }
  const IntMat& H(int simple_i) const { return gen_h_[simple_i]; }

  int lazard_dim() const { return rs_->lazard_dim(); }

  GroupElement identity() const;
  // x_alpha(t) = exp(t X_alpha) for t = 0 mod p. Exact p-adic evaluation:
  // v_p(k!) is cancelled against v_p(t^k) before any division happens.
  GroupElement x_element(int root_idx, long long t) const;
  // h_delta(u) for a unit u = 1 mod p; acts diagonally by the weights of H.
  GroupElement h_element(int simple_i, long long u) const;
  // Lazard basis element g_k (negative-root block, torus block, positive block).
  GroupElement basis_element(int var) const;

  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, long long e) const;  // e >= 0

  // Largest k <= N with g = I mod p^k (k = N stands for ">= N").
  int congruence_level(const GroupElement& g) const;

  // Digit peeling along the graded levels; lambda_i in Z/p^{N-1} with
  // g = prod_i g_i^{lambda_i} exactly mod p^N.
  std::vector<long long> lazard_coordinates(const GroupElement& g) const;

 private:
  struct PeelingData {
    std::vector<int> rows;  // selected coordinate rows, one per variable
    fp::Mat inv;            // inverse of the selected square system
  };

  Model() = default;
  void build_generators();
  const PeelingData& peeling() const;
  const ZqMat& cached_basis(int var) const;

  std::shared_ptr<const RootSystem> rs_;
  PowRing ring_;
  int dim_ = 0;
  bool adjoint_ = false;
  std::vector<IntMat> gen_x_;
  std::vector<IntMat> gen_h_;

  mutable std::mutex cache_mu_;
  mutable std::unique_ptr<PeelingData> peeling_;
  mutable std::vector<std::optional<ZqMat>> basis_cache_;
};

}  // namespace iwa
