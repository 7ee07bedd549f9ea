#include "iwa/fp.hpp"

#include <cassert>

namespace iwa::fp {

int pow(int a, long long e, int p) {
  assert(e >= 0);
  long long r = 1, b = norm(a, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return int(r);
}

int inv(int a, int p) {
  assert(a % p != 0);
  return pow(a, p - 2, p);
}

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
    int s = inv(m.at(row, col), m.p);
    for (int j = col; j < m.cols; ++j) m.at(row, j) = mul(m.at(row, j), s, m.p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      int f = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = sub(m.at(i, j), mul(f, m.at(row, j), m.p), m.p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Mat m) { return int(rref(m).size()); }

std::optional<std::vector<int>> solve(const Mat& A, const std::vector<int>& b) {
  Mat aug(A.rows, A.cols + 1, A.p);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = norm(b[i], A.p);
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
  std::vector<int> x(A.cols, 0);
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(int(k), A.cols);
  return x;
}

std::vector<std::vector<int>> nullspace(const Mat& A) {
  Mat m = A;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<int>> basis;
  for (int free = 0; free < A.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(A.cols, 0);
    v[free] = 1;
    for (size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = neg(m.at(int(k), free), A.p);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace iwa::fp
