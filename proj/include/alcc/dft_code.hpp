#pragma once

#include <vector>

#include "numeric.hpp"

namespace alcc {

struct DftCode {
  int N = 0;
  int K = 0;
  int v = 0;
  CMatrix G;  // K x N
  CMatrix H;  // (N-K) x N

  int redundancy() const { return N - K; }
};

inline DftCode build_code(int N, int K) {
  if (K < 1 || K >= N) throw InvalidParams("build_code: need 1 <= K < N");
  DftCode c;
  c.N = N;
  c.K = K;
  c.v = (N - K) / 2;
  CMatrix W = dft_matrix(N);
  c.G = W.topRows(K);
  c.H = W.bottomRows(N - K);
  return c;
}

/// Root of unity X_q = gamma^{q-1} attached to evaluation index q (1-based).
inline cplx locator_root(int N, int q) { return unit_root(N, q - 1); }

/// s = r H^dagger, returned as a column of length N-K.
inline CVector syndrome(const DftCode& c, const CVector& r) {
  if (r.size() != c.N) throw InvalidDimension("syndrome: codeword length != N");
  return c.H.conjugate() * r;
}

inline CMatrix hankel_syndrome_matrix(const DftCode& c, const CVector& s) {
  if (s.size() < 2 * c.v - 1 || s.size() != c.redundancy())
    throw InvalidDimension("hankel_syndrome_matrix: syndrome too short");
  CMatrix S(c.v, c.v);
  for (int i = 0; i < c.v; ++i)
    for (int j = 0; j < c.v; ++j) S(i, j) = s(i + j);
  return S;
}

struct ErrorCountMode {
  enum Kind { Oracle, Rank } kind = Oracle;
  int count = 0;          // oracle mode
  double rel_tol = 1e-6;  // rank mode
  double floor = 0.0;     // rank mode: syndromes with norm <= floor count as error-free

  static ErrorCountMode oracle(int n) { return {Oracle, n, 1e-6, 0.0}; }
  static ErrorCountMode rank(double tol, double floor = 0.0) { return {Rank, 0, tol, floor}; }
};

inline int estimate_error_count(const DftCode& c, const CVector& s, const ErrorCountMode& mode) {
  int n = 0;
  if (mode.kind == ErrorCountMode::Oracle) {
    n = mode.count;
  } else {
    if (s.norm() <= mode.floor) return 0;
    n = numerical_rank(hankel_syndrome_matrix(c, s), mode.rel_tol);
  }
  if (n > c.v) throw CapabilityExceeded("estimate_error_count: count exceeds v");
  return n;
}

struct LocatorPolynomial {
  Polynomial poly;           // ascending; g_0 = 1 for a solved locator
  int degree = 0;            // declared degree A
  bool ill_conditioned = false;
  double condition = 1.0;
};

/// Solve sum_{l=0}^{A} s(i+A-l) g_l = 0, i = 1..2v-A, with g_0 = 1.
inline LocatorPolynomial locator_polynomial(const DftCode& c, const CVector& s, int A) {
  if (A < 1 || A > c.v) throw InvalidParams("locator_polynomial: need 1 <= A <= v");
  if (s.size() != c.redundancy()) throw InvalidDimension("locator_polynomial: syndrome length");
  const int rows = 2 * c.v - A;
  CMatrix M(rows, A);
  CVector rhs(rows);
  for (int i = 0; i < rows; ++i) {
    // unknowns ordered g_1..g_A; g_l multiplies s(i+A-l) (0-based: s[i+A-l])
    for (int l = 1; l <= A; ++l) M(i, l - 1) = s(i + A - l);
    rhs(i) = -s(i + A);
  }
  auto ls = least_squares(M, rhs);
  std::vector<cplx> g(A + 1);
  g[0] = 1.0;
  for (int l = 1; l <= A; ++l) g[l] = ls.x(l - 1);
  LocatorPolynomial out;
  out.poly = Polynomial(std::move(g), 0.0);
  out.degree = A;
  out.condition = ls.condition;
  out.ill_conditioned = ls.rank_deficient || ls.condition > 1e12;
  return out;
}

/// Least-squares error values at 1-based locations.
inline CVector recover_error_values(const DftCode& c, const CVector& s, const std::vector<int>& loc) {
  const int n = static_cast<int>(loc.size());
  if (n > c.redundancy()) throw Underdetermined("recover_error_values: more locations than N-K");
  if (n == 0) return CVector(0);
  CMatrix Hl(c.redundancy(), n);
  for (int a = 0; a < n; ++a) {
    if (loc[a] < 1 || loc[a] > c.N) throw InvalidParams("recover_error_values: location outside [N]");
    Hl.col(a) = c.H.col(loc[a] - 1).conjugate();
  }
  return least_squares(Hl, s).x;
}

inline CVector correct_codeword(const CVector& r, const std::vector<int>& loc, const CVector& values) {
  if (static_cast<Eigen::Index>(loc.size()) != values.size())
    throw InvalidDimension("correct_codeword: locations/values length mismatch");
  CVector out = r;
  for (std::size_t a = 0; a < loc.size(); ++a) out(loc[a] - 1) -= values(static_cast<Eigen::Index>(a));
  return out;
}

} // namespace alcc
