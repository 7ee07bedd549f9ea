#include "iwa/zq.hpp"

#include <cassert>
#include <stdexcept>

#include "iwa/errors.hpp"

namespace iwa {

long long ipow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    assert(r <= (long long)4e18 / (base > 0 ? base : 1));
    r *= base;
  }
  return r;
}

int valuation(long long v, long long p) {
  assert(v != 0);
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

int factorial_valuation(int k, long long p) {
  // Legendre: v_p(k!) = sum_{i>=1} floor(k/p^i)
  int v = 0;
  long long q = p;
  while (q <= k) {
    v += int(k / q);
    q *= p;
  }
  return v;
}

PowRing::PowRing(long long p_, int n_) : p(p_), n(n_), q(ipow(p_, n_)) {
  if (p < 3) throw ConfigError("unsupported prime p < 3");
  if (n < 1) throw ConfigError("precision exponent must be >= 1");
  if (q > (long long)1 << 62) throw PrecisionError("p^N exceeds the 62-bit residue budget");
}

long long PowRing::pow(long long a, long long e) const {
  assert(e >= 0);
  long long r = 1, b = norm(a);
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

long long PowRing::inv_unit(long long a) const {
  a = norm(a);
  if (a % p == 0) throw DomainError("inverse of a non-unit in Z/p^N");
  // Newton lift of the mod-p inverse: x -> x(2 - ax) doubles precision.
  long long x = 1;
  {  // inverse mod p by Fermat
    long long ap = a % p, r = 1, b = ap, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    x = r;
  }
  for (int bits = 1; (1 << (bits - 1)) < n; ++bits)
    x = mul(x, sub(2, mul(a, x)));
  assert(mul(a, x) == 1);
  return x;
}

long long PowRing::pow_signed(long long a, long long e) const {
  if (e >= 0) return pow(a, e);
  return pow(inv_unit(a), -e);
}

bool IntMat::is_zero() const {
  for (long long v : a)
    if (v != 0) return false;
  return true;
}

IntMat imat_identity(int n) {
  IntMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat imat_mul(const IntMat& A, const IntMat& B) {
  assert(A.n == B.n);
  IntMat C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      long long v = A.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < A.n; ++j) C.at(i, j) += v * B.at(k, j);
    }
  return C;
}

IntMat imat_bracket(const IntMat& A, const IntMat& B) {
  IntMat AB = imat_mul(A, B), BA = imat_mul(B, A);
  for (size_t i = 0; i < AB.a.size(); ++i) AB.a[i] -= BA.a[i];
  return AB;
}

IntMat imat_scale(const IntMat& A, long long c) {
  IntMat C = A;
  for (auto& v : C.a) v *= c;
  return C;
}

IntMat imat_add(const IntMat& A, const IntMat& B) {
  assert(A.n == B.n);
  IntMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

IntMat imat_divide(const IntMat& A, long long c) {
  assert(c != 0);
  IntMat C = A;
  for (auto& v : C.a) {
    assert(v % c == 0);
    v /= c;
  }
  return C;
}

bool imat_equal(const IntMat& A, const IntMat& B) { return A.n == B.n && A.a == B.a; }

ZqMat zq_identity(int n) {
  ZqMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZqMat zq_from_int(const PowRing& R, const IntMat& A) {
  ZqMat m(A.n);
  for (size_t i = 0; i < A.a.size(); ++i) m.a[i] = R.norm(A.a[i]);
  return m;
}

ZqMat zq_mul(const PowRing& R, const ZqMat& A, const ZqMat& B) {
  assert(A.n == B.n);
  ZqMat C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      long long v = A.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < A.n; ++j)
        C.at(i, j) = R.add(C.at(i, j), R.mul(v, B.at(k, j)));
    }
  return C;
}

ZqMat zq_add(const PowRing& R, const ZqMat& A, const ZqMat& B) {
  assert(A.n == B.n);
  ZqMat C(A.n);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.add(A.a[i], B.a[i]);
  return C;
}

ZqMat zq_scale(const PowRing& R, const ZqMat& A, long long c) {
  ZqMat C(A.n);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = R.mul(A.a[i], c);
  return C;
}

ZqMat zq_pow(const PowRing& R, const ZqMat& A, long long e) {
  assert(e >= 0);
  ZqMat r = zq_identity(A.n), b = A;
  while (e > 0) {
    if (e & 1) r = zq_mul(R, r, b);
    b = zq_mul(R, b, b);
    e >>= 1;
  }
  return r;
}

ZqMat zq_inverse(const PowRing& R, const ZqMat& A) {
  // Gauss-Jordan; a pivot that is a unit mod p always exists because the
  // reduction of A mod p is invertible for the matrices we invert.
  int n = A.n;
  ZqMat L = A, X = zq_identity(n);
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    for (int i = col; i < n; ++i)
      if (L.at(i, col) % R.p != 0) {
        pr = i;
        break;
      }
    if (pr < 0) throw DomainError("matrix not invertible over Z/p^N");
    if (pr != col)
      for (int j = 0; j < n; ++j) {
        std::swap(L.at(pr, j), L.at(col, j));
        std::swap(X.at(pr, j), X.at(col, j));
      }
    long long s = R.inv_unit(L.at(col, col));
    for (int j = 0; j < n; ++j) {
      L.at(col, j) = R.mul(L.at(col, j), s);
      X.at(col, j) = R.mul(X.at(col, j), s);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      long long f = L.at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        L.at(i, j) = R.sub(L.at(i, j), R.mul(f, L.at(col, j)));
        X.at(i, j) = R.sub(X.at(i, j), R.mul(f, X.at(col, j)));
      }
    }
  }
  return X;
}

}  // namespace iwa
