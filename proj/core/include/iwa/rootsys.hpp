#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace iwa {

// Simple Lie types, Bourbaki numbering of the simple roots throughout.
enum class LieType { A, B, C, D, E, F, G };

std::string lie_type_name(LieType t);
// Accepts "A".."G" as well as compact labels like "E8", "G2", "B3".
// On a compact label the embedded rank overrides the rank argument.
std::pair<LieType, int> parse_type_label(const std::string& label, int rank);

struct Root {
  std::vector<int> coeffs;  // coordinates over the simple roots
  int height = 0;           // sum of the coordinates

  bool positive() const { return height > 0; }
  Root negated() const;
  bool operator==(const Root&) const = default;
};

// N_{a,b} and the group commutator coefficients c_ij, both keyed by root
// indices into RootSystem::roots(). c-rows are listed in the fixed product
// order of the commutator formula: increasing i+j, then increasing i.
struct ChevalleyConstants {
  struct CRow {
    int i, j;
    int c;
    int sum_index;  // root index of i*a + j*b
  };

  std::map<std::pair<int, int>, int> n_table;
  std::map<std::pair<int, int>, std::vector<CRow>> c_table;
  // Sign-fixing decompositions: positive non-simple root -> (e, h) with
  // e + h = that root and e minimal in the root order.
  std::map<int, std::pair<int, int>> extraspecial;

  // N_{a,b}; zero when a+b is not a root.
  int n(int a, int b) const;
  const std::vector<CRow>& c_rows(int a, int b) const;  // empty row if absent
};

class RootSystem {
 public:
  static std::shared_ptr<const RootSystem> build(LieType t, int rank);
  static std::shared_ptr<const RootSystem> build(const std::string& label, int rank = 0);

  LieType type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;

  // cartan_[i][j] = <delta_i, delta_j> = 2(delta_i|delta_j)/(delta_j|delta_j).
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }

  // All roots: negatives then positives, each block by increasing height;
  // ties within a height level broken by descending lex on coefficients.
  const std::vector<Root>& roots() const { return roots_; }
  int num_roots() const { return int(roots_.size()); }
  int num_positive() const { return num_roots() / 2; }
  const Root& root(int idx) const { return roots_[idx]; }
  int root_index(const std::vector<int>& coeffs) const;  // -1 if absent
  int root_index(const Root& r) const { return root_index(r.coeffs); }
  bool is_root(const std::vector<int>& coeffs) const { return root_index(coeffs) >= 0; }
  int negation_index(int idx) const;
  int add_index(int a, int b) const;  // root index of root(a)+root(b), -1 if absent

  const Root& simple_root(int i) const;  // i in [0, rank)
  int simple_root_index(int i) const { return simple_index_[i]; }
  bool is_simple(int idx) const;
  int simple_number(int idx) const;  // inverse of simple_root_index, -1 if not simple

  // <alpha, delta_i>; linear in alpha over root addition.
  int cartan_integer(const Root& alpha, int i) const;
  // delta must be one of the simple roots.
  int cartan_integer(const Root& alpha, const Root& delta) const;

  long long inner(const Root& a, const Root& b) const;  // (a|b), short roots norm 2
  long long norm2(const Root& a) const { return inner(a, a); }

  const Root& highest_root() const { return roots_.back(); }
  int max_highest_coeff() const;
  bool hyp_phi(long long p) const;  // p >= 3 required

  const ChevalleyConstants& structure_constants() const;  // computed on first use

  // Lazard variable layout: negative-root block, torus block, positive block.
  int lazard_dim() const { return num_roots() + rank_; }
  bool var_is_torus(int v) const { return v >= num_positive() && v < num_positive() + rank_; }
  int var_torus_number(int v) const { return v - num_positive(); }
  int var_root_index(int v) const;    // for non-torus variables
  int var_of_root(int root_idx) const;
  int var_of_torus(int i) const { return num_positive() + i; }
  std::string var_name(int v) const;
  std::string root_name(int idx) const;

 private:
  RootSystem() = default;
  void construct(LieType t, int rank);

  LieType type_ = LieType::A;
  int rank_ = 1;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> dsym_;  // d_i = |delta_i|^2 / 2
  std::vector<Root> roots_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> simple_index_;
  mutable std::mutex constants_mu_;
  mutable std::shared_ptr<const ChevalleyConstants> constants_;
};

}  // namespace iwa
