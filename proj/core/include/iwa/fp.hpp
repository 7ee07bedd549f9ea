#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace iwa::fp {

// Arithmetic in the prime field F_p for a small odd prime. Values live in [0, p).
inline int norm(long long a, int p) {
  long long r = a % p;
  return int(r < 0 ? r + p : r);
}
inline int add(int a, int b, int p) {
  int s = a + b;
  return s >= p ? s - p : s;
}
inline int sub(int a, int b, int p) {
  int s = a - b;
  return s < 0 ? s + p : s;
}
inline int mul(int a, int b, int p) { return int((long long)a * b % p); }
inline int neg(int a, int p) { return a == 0 ? 0 : p - a; }

int pow(int a, long long e, int p);
int inv(int a, int p);

// Dense row-major matrix over F_p.
struct Mat {
  int rows = 0, cols = 0, p = 3;
  std::vector<int> a;

  Mat() = default;
  Mat(int r, int c, int p_) : rows(r), cols(c), p(p_), a(size_t(r) * c, 0) {}
  int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  int at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// Solve A x = b. Free variables are set to zero; empty when inconsistent.
std::optional<std::vector<int>> solve(const Mat& A, const std::vector<int>& b);

// Basis of { x : A x = 0 }.
std::vector<std::vector<int>> nullspace(const Mat& A);

}  // namespace iwa::fp
