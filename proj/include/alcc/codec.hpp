#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "numeric.hpp"
#include "random.hpp"

namespace alcc {

struct EncodingParams {
  int N = 31;
  int k = 5;
  int t = 3;
  int D = 2;
  double beta = 1.5;
  double sigma_pad = 1e6;
  std::vector<int> psi;  // psi[i-1] = worker holding evaluation i; empty means identity

  int K() const { return (k + t - 1) * D + 1; }

  void validate() const {
    if (N < 1 || k < 1 || t < 0 || D < 1)
      throw InvalidParams("encoding: N, k, D must be positive and t non-negative");
    if (!(beta > 0.0)) throw InvalidParams("encoding: beta must be positive");
    if (K() > N) throw InvalidParams("encoding: K = (k+t-1)D+1 exceeds N");
    if (!psi.empty()) check_permutation(psi, N);
  }

  static void check_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) throw InvalidParams("psi: wrong length");
    std::vector<char> seen(n, 0);
    for (int w : p) {
      if (w < 1 || w > n || seen[w - 1]) throw InvalidParams("psi: not a bijection on [N]");
      seen[w - 1] = 1;
    }
  }
};

/// beta_r = beta * w^{r-1}, w = e^{-2 pi i/(k+t)}
inline std::vector<cplx> interpolation_nodes(const EncodingParams& p) {
  const int n = p.k + p.t;
  std::vector<cplx> b(n);
  for (int r = 0; r < n; ++r) b[r] = p.beta * unit_root(n, r);
  return b;
}

/// alpha_i = gamma^{i-1}, gamma = e^{-2 pi i/N}
inline std::vector<cplx> evaluation_points(int N) {
  std::vector<cplx> a(N);
  for (int i = 0; i < N; ++i) a[i] = unit_root(N, i);
  return a;
}

inline std::vector<cplx> lagrange_basis(const EncodingParams& p, cplx z) {
  const int n = p.k + p.t;
  if (n <= 0) throw InvalidParams("lagrange_basis: k+t must be positive");
  auto b = interpolation_nodes(p);
  std::vector<cplx> l(n, cplx(1.0));
  for (int r = 0; r < n; ++r)
    for (int q = 0; q < n; ++q)
      if (q != r) l[r] *= (z - b[q]) / (b[r] - b[q]);
  return l;
}

struct DatasetBatch {
  std::vector<RMatrix> X;    // k blocks, m x n
  std::vector<CMatrix> pad;  // t blocks, m x n
};

// Standard-normal data blocks plus CN(0, (sigma/sqrt t)^2) padding.
inline DatasetBatch make_batch(const EncodingParams& p, int m, int n, Rng& rng) {
  DatasetBatch b;
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int j = 0; j < p.k; ++j) {
    RMatrix x(m, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < m; ++r) x(r, c) = nd(rng);
    b.X.push_back(std::move(x));
  }
  const double var = p.t > 0 ? p.sigma_pad * p.sigma_pad / p.t : 0.0;
  for (int j = 0; j < p.t; ++j) {
    CMatrix z(m, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < m; ++r) z(r, c) = cn(rng, 0.0, var);
    b.pad.push_back(std::move(z));
  }
  return b;
}

struct ShareSet {
  std::vector<CMatrix> U;       // U[i-1] = l(alpha_i)
  std::vector<cplx> alpha;
};

inline ShareSet encode_shares(const DatasetBatch& batch, const EncodingParams& p) {
  p.validate();
  if (static_cast<int>(batch.X.size()) != p.k || static_cast<int>(batch.pad.size()) != p.t)
    throw InvalidParams("encode_shares: block counts do not match k and t");
  const Eigen::Index m = batch.X[0].rows(), n = batch.X[0].cols();
  for (auto& x : batch.X)
    if (x.rows() != m || x.cols() != n) throw InvalidParams("encode_shares: block dimension mismatch");
  for (auto& x : batch.pad)
    if (x.rows() != m || x.cols() != n) throw InvalidParams("encode_shares: padding dimension mismatch");

  ShareSet s;
  s.alpha = evaluation_points(p.N);
  for (int i = 0; i < p.N; ++i) {
    auto l = lagrange_basis(p, s.alpha[i]);
    CMatrix u = CMatrix::Zero(m, n);
    for (int r = 0; r < p.k; ++r) u += l[r] * batch.X[r].cast<cplx>();
    for (int r = 0; r < p.t; ++r) u += l[p.k + r] * batch.pad[r];
    s.U.push_back(std::move(u));
  }
  return s;
}

struct WorkerShare {
  int worker = 0;      // 1-based
  int eval_index = 0;  // 1-based, travels with the share
  CMatrix U;
};

inline std::vector<WorkerShare> assign_shares(const ShareSet& s, const std::vector<int>& psi) {
  const int N = static_cast<int>(s.U.size());
  std::vector<int> map = psi;
  if (map.empty()) {
    map.resize(N);
    std::iota(map.begin(), map.end(), 1);
  }
  EncodingParams::check_permutation(map, N);
  std::vector<WorkerShare> out(N);
  for (int i = 0; i < N; ++i) out[map[i] - 1] = WorkerShare{map[i], i + 1, s.U[i]};
  return out;
}

/// Degree-D matrix polynomial applied by each worker.
struct MatrixFunction {
  int degree = 2;
  std::function<CMatrix(const CMatrix&)> apply;
  std::function<RMatrix(const RMatrix&)> apply_real;
  std::function<Eigen::MatrixXcf(const Eigen::MatrixXcf&)> apply_f32;  // optional
};

// f(X) = X^T X (plain transpose), degree 2.
inline MatrixFunction gram_function() {
  MatrixFunction f;
  f.degree = 2;
  f.apply = [](const CMatrix& u) -> CMatrix { return u.transpose() * u; };
  f.apply_real = [](const RMatrix& x) -> RMatrix { return x.transpose() * x; };
  f.apply_f32 = [](const Eigen::MatrixXcf& u) -> Eigen::MatrixXcf { return u.transpose() * u; };
  return f;
}

inline MatrixFunction identity_function() {
  MatrixFunction f;
  f.degree = 1;
  f.apply = [](const CMatrix& u) -> CMatrix { return u; };
  f.apply_real = [](const RMatrix& x) -> RMatrix { return x; };
  return f;
}

/// Evaluate the interpolant of one codeword row at the data nodes.
/// words: M x N, row c holds entry c (row-major over u x h) at evaluation indices 1..N.
/// present: optional subset of evaluation indices (1-based); empty means all N.
inline std::vector<RMatrix> reconstruct(const CMatrix& words, const EncodingParams& p, int u, int h,
                                        const std::vector<int>& present = {}) {
  const int N = p.N, K = p.K();
  if (words.cols() != N || words.rows() != static_cast<Eigen::Index>(u) * h)
    throw InvalidDimension("reconstruct: codeword matrix must be (u*h) x N");
  auto beta = interpolation_nodes(p);
  // coeffs (M x K) of the scalar polynomial in z, one row per entry
  CMatrix coeffs;
  if (present.empty()) {
    CMatrix G = dft_matrix(N).topRows(K);
    coeffs = (words * G.adjoint()) / std::sqrt(static_cast<double>(N));
  } else {
    if (static_cast<int>(present.size()) < K)
      throw InsufficientEvaluations("reconstruct: fewer than K evaluations");
    const int S = static_cast<int>(present.size());
    CMatrix V(S, K);
    for (int a = 0; a < S; ++a) {
      if (present[a] < 1 || present[a] > N) throw InvalidParams("reconstruct: index outside [N]");
      for (int j = 0; j < K; ++j) V(a, j) = unit_root(N, static_cast<long long>(present[a] - 1) * j);
    }
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(V);
    CMatrix rhs(S, words.rows());
    for (int a = 0; a < S; ++a) rhs.row(a) = words.col(present[a] - 1).transpose();
    coeffs = cod.solve(rhs).transpose();
  }
  std::vector<RMatrix> out;
  for (int r = 0; r < p.k; ++r) {
    CVector pw(K);
    cplx z = 1.0;
    for (int j = 0; j < K; ++j) { pw(j) = z; z *= beta[r]; }
    CVector vals = coeffs * pw;
    RMatrix y(u, h);
    for (int a = 0; a < u; ++a)
      for (int b = 0; b < h; ++b) y(a, b) = vals(a * h + b).real();
    out.push_back(std::move(y));
  }
  return out;
}

inline double relative_error(const std::vector<RMatrix>& ref, const std::vector<RMatrix>& est) {
  if (ref.size() != est.size()) throw InvalidDimension("relative_error: block count mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    if (ref[j].rows() != est[j].rows() || ref[j].cols() != est[j].cols())
      throw InvalidDimension("relative_error: dimension mismatch");
    num += (ref[j] - est[j]).squaredNorm();
    den += ref[j].squaredNorm();
  }
  if (den == 0.0) throw UndefinedMetric("relative_error: reference norm is zero");
  return std::sqrt(num / den);
}

inline double relative_error(const RMatrix& ref, const RMatrix& est) {
  return relative_error(std::vector<RMatrix>{ref}, std::vector<RMatrix>{est});
}

inline double to_db(double e) { return 20.0 * std::log10(e); }

} // namespace alcc
