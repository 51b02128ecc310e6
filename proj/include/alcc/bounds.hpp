#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "dft_code.hpp"

namespace alcc {

inline double theta_of_gap(int N, int gap) { return 2.0 * kPi * gap / N; }

inline double kappa(int N, int A, int gap, double eta) {
  if (A < 1) throw InvalidParams("kappa: A must be >= 1");
  if (gap < 1 || gap > N - 1) throw InvalidParams("kappa: gap must lie in 1..N-1");
  const double th = theta_of_gap(N, gap);
  double den = 0.0;
  for (int l = 1; l <= A; ++l) den += 1.0 - std::cos(l * th);
  if (!(den > 1e-300)) throw InvalidParams("kappa: vanishing denominator");
  return 2.0 / (eta * den);
}

inline double sigma_diff_sq(double sigma_p2, int A, double theta) {
  double c = 0.0;
  for (int l = 1; l <= A; ++l) c += std::cos(l * theta);
  return sigma_p2 * (A - c);
}

struct PepContext {
  int N = 31;
  int A = 1;
  double eta = 10.0;
  double sigma_p2 = 0.1;
  int j = 1;  // competing index j_b
  int i = 2;  // true index i_a
  double cI = 0.0, cQ = 0.0;
};

/// gap |j - i| as used inside kappa (taken in 1..N-1).
inline int index_gap(int j, int i) { return std::abs(j - i); }

struct PepValue {
  double value = 0.0;
  bool degenerate = false;  // sigma_p^2 = 0
};

inline PepValue pep_lower_bound(const PepContext& c) {
  if (c.j == c.i) throw InvalidParams("pep_lower_bound: indices must differ");
  const double k = kappa(c.N, c.A, index_gap(c.j, c.i), c.eta);
  const double frac = k / (1.0 + k);
  const double csq = c.cI * c.cI + c.cQ * c.cQ;
  if (c.sigma_p2 <= 0.0) return {csq > 0.0 ? 0.0 : frac, true};
  return {frac * std::exp(-c.eta * csq * k / (4.0 * c.sigma_p2 * (1.0 + k))), false};
}

/// c = g(X_j) for the normalized locator g(z) = prod_a (1 - z/X_{i_a}).
inline cplx locator_constant(int N, const std::vector<int>& support, int j) {
  cplx z = locator_root(N, j), acc = 1.0;
  for (int q : support) acc *= 1.0 - z / locator_root(N, q);
  return acc;
}

struct BoundValue {
  double value = 0.0;
  bool clamped = false;
};

/// Surrogate sum of PL over all (j not in L, i in L) pairs, clamped to 1.
inline BoundValue localization_upper_bound(int N, const std::vector<int>& L, double sigma_p2, double eta) {
  BoundValue out;
  if (L.empty()) return out;
  std::vector<char> in(N + 1, 0);
  for (int q : L) in[q] = 1;
  const int A = static_cast<int>(L.size());
  double sum = 0.0;
  for (int j = 1; j <= N; ++j) {
    if (in[j]) continue;
    cplx c = locator_constant(N, L, j);
    for (int i : L) {
      PepContext ctx{N, A, eta, sigma_p2, j, i, c.real(), c.imag()};
      sum += pep_lower_bound(ctx).value;
    }
  }
  out.clamped = sum > 1.0;
  out.value = std::min(sum, 1.0);
  return out;
}

/// A_c times PL at the nearest-neighbour gap.
inline double dominant_term_bound(int Ac, int N, double sigma_p2, double eta, double cI, double cQ) {
  if (Ac < 1) throw InvalidParams("dominant_term_bound: A_c must be >= 1");
  PepContext ctx{N, Ac, eta, sigma_p2, 2, 1, cI, cQ};
  return Ac * pep_lower_bound(ctx).value;
}

/// Two-term strong-collusion surrogate; c_v and c_{v-1} are squared magnitudes c_I^2 + c_Q^2.
inline double strong_collusion_objective(int M, int v, int Omega, double sigma_p2, double eta, int N,
                                         double c_v, double c_v1) {
  if (Omega < 0 || Omega > M) throw InvalidParams("strong_collusion_objective: Omega outside 0..M");
  if (v < 2) throw InvalidParams("strong_collusion_objective: v must be >= 2");
  const double k1 = kappa(N, v, 1, eta), k2 = kappa(N, v - 1, 1, eta);
  const double f1 = k1 / (1.0 + k1), f2 = k2 / (1.0 + k2);
  const double low = (v - 1) * f2 * std::exp(-eta * c_v1 * k2 / (4.0 * sigma_p2 * (1.0 + k2)));
  if (Omega == 0) return low;
  const double top = v * f1 * std::exp(-Omega * eta * c_v * k1 / (4.0 * sigma_p2 * (1.0 + k1)));
  const double n = M - Omega + 1.0;
  return top / n + (M - Omega) / n * low;
}

/// Largest kappa/(1+kappa) over all gaps at fixed A.
inline double gamma_max(int N, int A, double eta) {
  double g = 0.0;
  for (int gap = 1; gap <= N - 1; ++gap) {
    const double k = kappa(N, A, gap, eta);
    g = std::max(g, k / (1.0 + k));
  }
  return g;
}

inline double gamma_min(int N, int A, double eta) {
  double g = std::numeric_limits<double>::infinity();
  for (int gap = 1; gap <= N - 1; ++gap) {
    const double k = kappa(N, A, gap, eta);
    g = std::min(g, k / (1.0 + k));
  }
  return g;
}

enum class HMode { Literal, Root };

/// H(L,i): squared magnitude of prod_a (j - i_a), integer or root-of-unity differences.
inline double confusability(int N, const std::vector<int>& L, int j, HMode mode) {
  if (mode == HMode::Literal) {
    double p = 1.0;
    for (int q : L) p *= static_cast<double>(j - q);
    return p * p;
  }
  cplx p = 1.0, z = locator_root(N, j);
  for (int q : L) p *= z - locator_root(N, q);
  return std::norm(p);
}

inline double assignment_pair_bound(const std::vector<int>& L, int j, double eta, double gmax,
                                    double sigma_p2, int N, HMode mode = HMode::Literal) {
  return std::exp(-eta * confusability(N, L, j, mode) * gmax / (4.0 * sigma_p2));
}

} // namespace alcc
