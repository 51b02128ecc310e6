#pragma once

#include <vector>

#include "codec.hpp"
#include "dft_code.hpp"
#include "random.hpp"

namespace alcc {

using BinaryMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

struct TrustProfile {
  std::vector<int> reliable;    // worker ids
  std::vector<int> unreliable;  // worker ids

  static TrustProfile make(int N, const std::vector<int>& unreliable_workers) {
    TrustProfile t;
    std::vector<char> u(N + 1, 0);
    for (int w : unreliable_workers) {
      if (w < 1 || w > N || u[w]) throw InvalidParams("trust profile: bad unreliable worker id");
      u[w] = 1;
    }
    for (int w = 1; w <= N; ++w) (u[w] ? t.unreliable : t.reliable).push_back(w);
    return t;
  }
};

/// Effective base matrix: rows are output entries (row-major over u x h), columns are Byzantines.
struct EffectiveBaseMatrix {
  BinaryMatrix B;
  bool degenerate = false;

  BinaryMatrix base_of(int a, int u, int h) const {
    BinaryMatrix b(u, h);
    for (int r = 0; r < u; ++r)
      for (int c = 0; c < h; ++c) b(r, c) = B(r * h + c, a);
    return b;
  }
};

inline EffectiveBaseMatrix all_one_bases(int M, int A) {
  return {BinaryMatrix::Ones(M, A), false};
}

inline EffectiveBaseMatrix design_strong_collusion(int M, int v, Rng& rng) {
  if (M < 1 || v < 1) throw InvalidParams("design_strong_collusion: need M >= 1, v >= 1");
  EffectiveBaseMatrix e{BinaryMatrix::Ones(M, v), v == 1};
  if (v == 1) return e;
  std::uniform_int_distribution<int> pick(0, v - 1);
  for (int r = 1; r < M; ++r) {
    e.B(r, pick(rng)) = 0;  // v-1 ones at uniform positions
  }
  return e;
}

/// i.i.d. entries with P(entry = 0) = p.
inline EffectiveBaseMatrix design_weak_collusion(int M, int v, double p, Rng& rng) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParams("design_weak_collusion: p must lie in (0,1)");
  if (M < 1 || v < 1) throw InvalidParams("design_weak_collusion: need M >= 1, v >= 1");
  EffectiveBaseMatrix e{BinaryMatrix(M, v), false};
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < v; ++c) e.B(r, c) = U(rng) < p ? 0 : 1;
  return e;
}

inline double optimal_p(int v) {
  if (v < 2) throw InvalidParams("optimal_p: v must be >= 2");
  return 1.0 - std::pow(1.0 / v, 1.0 / (v - 1));
}

struct ByzantinePlan {
  std::vector<int> workers;  // worker ids i_1..i_A
  EffectiveBaseMatrix beff;  // column a <-> workers[a]
  cplx noise_mean = cplx(10.0, 0.0);
  double noise_var = 1e3;

  int A() const { return static_cast<int>(workers.size()); }
};

struct PrecisionModel {
  enum Mode { None, Synthetic, LocatorDirect, NativeReduced } mode = None;
  double variance = 0.0;

  bool adds_return_noise() const { return mode == Synthetic && variance > 0.0; }
};

inline const char* precision_name(PrecisionModel::Mode m) {
  switch (m) {
    case PrecisionModel::Synthetic: return "synthetic";
    case PrecisionModel::LocatorDirect: return "locator-direct";
    case PrecisionModel::NativeReduced: return "native-reduced";
    default: return "none";
  }
}

/// Worker-side evaluation; native-reduced mode runs f in single precision.
inline CMatrix worker_compute(const MatrixFunction& f, const CMatrix& U, const PrecisionModel& prec) {
  if (prec.mode != PrecisionModel::NativeReduced) return f.apply(U);
  Eigen::MatrixXcf u32 = U.cast<std::complex<float>>();
  if (f.apply_f32) return f.apply_f32(u32).cast<cplx>();
  return f.apply(u32.cast<cplx>()).cast<std::complex<float>>().cast<cplx>();
}

/// R_i = f(U_i) + E_i + P_i, indexed by worker id - 1.
inline std::vector<CMatrix> inject(const std::vector<CMatrix>& results, const ByzantinePlan& plan,
                                   const PrecisionModel& prec, std::uint64_t seed) {
  const int N = static_cast<int>(results.size());
  std::vector<CMatrix> out = results;
  if (N == 0) return out;
  const int u = static_cast<int>(results[0].rows()), h = static_cast<int>(results[0].cols());
  for (int a = 0; a < plan.A(); ++a) {
    const int w = plan.workers[a];
    if (w < 1 || w > N) throw InvalidParams("inject: Byzantine worker outside [N]");
    if (plan.beff.B.rows() != u * h || plan.beff.B.cols() != plan.A())
      throw InvalidDimension("inject: effective base matrix shape mismatch");
    Rng rng(derive_seed(seed, 0xE770, static_cast<std::uint64_t>(w)));
    for (int r = 0; r < u; ++r)
      for (int c = 0; c < h; ++c)
        if (plan.beff.B(r * h + c, a)) out[w - 1](r, c) += cn(rng, plan.noise_mean, plan.noise_var);
  }
  if (prec.adds_return_noise()) {
    for (int w = 1; w <= N; ++w) {
      Rng rng(derive_seed(seed, 0x9EC1, static_cast<std::uint64_t>(w)));
      for (int c = 0; c < h; ++c)
        for (int r = 0; r < u; ++r) out[w - 1](r, c) += cn(rng, 0.0, prec.variance);
    }
  }
  return out;
}

/// Adds CN(0, var) to every coefficient g_0..g_A (locator-direct precision).
inline LocatorPolynomial perturb_locator(const LocatorPolynomial& g, double var, Rng& rng) {
  std::vector<cplx> c(g.degree + 1);
  for (int l = 0; l <= g.degree; ++l) c[l] = g.poly[l] + cn(rng, 0.0, var);
  LocatorPolynomial out = g;
  out.poly = Polynomial(std::move(c), 0.0);
  return out;
}

} // namespace alcc
