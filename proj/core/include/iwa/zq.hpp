#pragma once

#include <cstdint>
#include <vector>

namespace iwa {

// The coefficient ring Z/p^N. Residues are kept in [0, q), q = p^N.
// q stays well below 2^62; products go through 128-bit intermediates.
struct PowRing {
  long long p = 3;
  int n = 2;
  long long q = 9;

  PowRing() = default;
  PowRing(long long p_, int n_);

  long long norm(long long v) const {
    long long r = v % q;
    return r < 0 ? r + q : r;
  }
  long long add(long long a, long long b) const { return norm(norm(a) + norm(b)); }
  long long sub(long long a, long long b) const { return norm(norm(a) - norm(b)); }
  long long mul(long long a, long long b) const {
    return (long long)((unsigned __int128)norm(a) * (unsigned __int128)norm(b) % (unsigned long long)q);
  }
  long long pow(long long a, long long e) const;
  // Inverse of a unit (a coprime to p).
  long long inv_unit(long long a) const;
  // a^e for a unit a and possibly negative e.
  long long pow_signed(long long a, long long e) const;
};

long long ipow(long long base, int e);  // exact integer power, asserts no overflow
int valuation(long long v, long long p);  // v != 0
int factorial_valuation(int k, long long p);  // v_p(k!)

// Small dense square matrix with exact int64 entries (generator construction).
struct IntMat {
  int n = 0;
  std::vector<long long> a;

  IntMat() = default;
  explicit IntMat(int n_) : n(n_), a(size_t(n_) * n_, 0) {}
  long long& at(int i, int j) { return a[size_t(i) * n + j]; }
  long long at(int i, int j) const { return a[size_t(i) * n + j]; }
  bool is_zero() const;
};

IntMat imat_identity(int n);
IntMat imat_mul(const IntMat& A, const IntMat& B);
IntMat imat_bracket(const IntMat& A, const IntMat& B);  // AB - BA
IntMat imat_scale(const IntMat& A, long long c);
IntMat imat_add(const IntMat& A, const IntMat& B);
// Exact division by c; asserts every entry is divisible.
IntMat imat_divide(const IntMat& A, long long c);
bool imat_equal(const IntMat& A, const IntMat& B);

// Square matrix over Z/p^N.
struct ZqMat {
  int n = 0;
  std::vector<long long> a;

  ZqMat() = default;
  explicit ZqMat(int n_) : n(n_), a(size_t(n_) * n_, 0) {}
  long long& at(int i, int j) { return a[size_t(i) * n + j]; }
  long long at(int i, int j) const { return a[size_t(i) * n + j]; }
  bool operator==(const ZqMat&) const = default;
};

ZqMat zq_identity(int n);
ZqMat zq_from_int(const PowRing& R, const IntMat& A);
ZqMat zq_mul(const PowRing& R, const ZqMat& A, const ZqMat& B);
ZqMat zq_add(const PowRing& R, const ZqMat& A, const ZqMat& B);
ZqMat zq_scale(const PowRing& R, const ZqMat& A, long long c);
ZqMat zq_pow(const PowRing& R, const ZqMat& A, long long e);  // e >= 0
// Inverse of a matrix whose determinant is a unit mod p.
ZqMat zq_inverse(const PowRing& R, const ZqMat& A);

}  // namespace iwa
