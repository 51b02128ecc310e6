#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace alcc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;

inline bool all_finite(const CMatrix& m) {
  return m.array().isFinite().all();
}

// e^{-2 pi i k / n}
inline cplx unit_root(int n, long long k) {
  long long r = ((k % n) + n) % n;
  double a = -2.0 * kPi * static_cast<double>(r) / n;
  return {std::cos(a), std::sin(a)};
}

/// Unitary n x n DFT matrix, W(m,c) = w^{m c} / sqrt(n), w = e^{-2 pi i / n}.
inline CMatrix dft_matrix(int n) {
  if (n < 1) throw InvalidDimension("dft_matrix: n must be >= 1");
  CMatrix w(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m)
    for (int c = 0; c < n; ++c)
      w(m, c) = unit_root(n, static_cast<long long>(m) * c) * s;
  return w;
}

struct LstsqResult {
  CVector x;
  int rank = 0;
  double condition = 1.0;   // ratio of extreme nonzero pivots
  bool rank_deficient = false;
};

/// Minimum-norm least squares via complete orthogonal decomposition.
inline LstsqResult least_squares(const CMatrix& a, const CVector& b) {
  if (a.rows() != b.size())
    throw InvalidDimension("least_squares: rows(a) != len(b)");
  if (a.rows() < a.cols())
    throw InvalidDimension("least_squares: system must have rows >= cols");
  LstsqResult out;
  if (a.cols() == 0) {
    out.x = CVector(0);
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a);
  out.x = cod.solve(b);
  out.rank = static_cast<int>(cod.rank());
  out.rank_deficient = out.rank < a.cols();
  const auto& qr = cod.matrixQTZ();
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < out.rank; ++i) {
    double d = std::abs(qr(i, i));
    hi = std::max(hi, d);
    lo = std::min(lo, d);
  }
  out.condition = out.rank == 0 ? std::numeric_limits<double>::infinity()
                  : out.rank_deficient ? std::numeric_limits<double>::infinity()
                                       : hi / lo;
  return out;
}

inline Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd(0);
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

/// Count of singular values above rel_tol times the largest one.
inline int numerical_rank(const CMatrix& m, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidParams("numerical_rank: rel_tol must lie in (0,1)");
  Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

/// Polynomial with ascending-degree complex coefficients.
class Polynomial {
 public:
  Polynomial() : c_{cplx(0.0)} {}
  explicit Polynomial(std::vector<cplx> coeffs, double trim_rel = 1e-12)
      : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
    trim(trim_rel);
  }

  const std::vector<cplx>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  cplx operator[](std::size_t i) const { return i < c_.size() ? c_[i] : cplx(0.0); }

 private:
  void trim(double rel) {
    double mx = 0.0;
    for (auto& x : c_) mx = std::max(mx, std::abs(x));
    const double tol = rel * mx;
    while (c_.size() > 1 && std::abs(c_.back()) <= tol) c_.pop_back();
  }
  std::vector<cplx> c_;
};

/// Horner evaluation.
inline cplx poly_eval(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline cplx poly_eval(const Polynomial& p, cplx z) { return poly_eval(p.coeffs(), z); }

} // namespace alcc
