#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "bounds.hpp"
#include "localization.hpp"
#include "random.hpp"

namespace alcc {

struct AssignmentProblem {
  int N = 11;
  int mu = 5;
  int A = 2;
  double eta = 10.0;
  double sigma_p2 = 1.0;
  double gmax = -1.0;  // <= 0: computed from (N, A, eta)
  HMode h_mode = HMode::Literal;
  bool monte_carlo = false;       // forced Monte-Carlo expectation
  long long samples = 10000;
  std::uint64_t seed = 1;

  double gamma() const { return gmax > 0.0 ? gmax : gamma_max(N, A, eta); }

  void validate() const {
    if (mu < 1 || mu > N) throw InvalidParams("assignment: need 0 < mu <= N");
    if (A < 0 || A > mu) throw InvalidParams("assignment: need A <= mu");
    if (!(sigma_p2 > 0.0)) throw InvalidParams("assignment: sigma_p^2 must be positive");
  }
};

struct ObjectiveValue {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();  // log of value, exact under underflow
  bool degenerate = false;
};

namespace detail {

inline bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

// Exponent of the worst (largest) pair term: -min_j eta H(L,j) gamma / (4 sigma_p^2).
inline double worst_exponent(const std::vector<int>& P, const std::vector<int>& L, const AssignmentProblem& pr,
                             double g) {
  double lo = std::numeric_limits<double>::infinity();
  for (int j : P) {
    if (std::find(L.begin(), L.end(), j) != L.end()) continue;
    lo = std::min(lo, pr.eta * confusability(pr.N, L, j, pr.h_mode) * g / (4.0 * pr.sigma_p2));
  }
  return -lo;
}

inline ObjectiveValue mean_of_exp(const std::vector<double>& ex) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : ex) mx = std::max(mx, x);
  double s = 0.0;
  for (double x : ex) s += std::exp(x - mx);
  ObjectiveValue v;
  v.log_value = mx + std::log(s / static_cast<double>(ex.size()));
  v.value = std::exp(v.log_value);
  return v;
}

} // namespace detail

/// E over A-subsets L of P of max_{j in P \ L} exp(-eta H(L,j) gamma_max / (4 sigma_p^2)).
inline ObjectiveValue assignment_objective(const std::vector<int>& P, const AssignmentProblem& pr) {
  pr.validate();
  if (static_cast<int>(P.size()) != pr.mu) throw InvalidParams("assignment_objective: |P| != mu");
  if (pr.mu <= pr.A) return {0.0, -std::numeric_limits<double>::infinity(), true};
  const double g = pr.gamma();
  const int mu = pr.mu, A = pr.A;
  std::vector<int> L(A);
  std::vector<double> ex;
  if (!pr.monte_carlo && binomial(mu, A) <= 10000) {
    std::vector<int> c(A);
    std::iota(c.begin(), c.end(), 0);
    do {
      for (int a = 0; a < A; ++a) L[a] = P[c[a]];
      ex.push_back(detail::worst_exponent(P, L, pr, g));
    } while (A > 0 && detail::next_combination(c, mu));
    return detail::mean_of_exp(ex);
  }
  Rng rng(pr.seed);
  std::vector<int> idx(mu);
  for (long long s = 0; s < pr.samples; ++s) {
    std::iota(idx.begin(), idx.end(), 0);
    for (int a = 0; a < A; ++a) {
      std::uniform_int_distribution<int> d(a, mu - 1);
      std::swap(idx[a], idx[d(rng)]);
      L[a] = P[idx[a]];
    }
    ex.push_back(detail::worst_exponent(P, L, pr, g));
  }
  return detail::mean_of_exp(ex);
}

struct AssignmentSolution {
  std::vector<int> P;
  double objective = 0.0;
  long long evaluated = 0;
};

struct SearchMode {
  enum Kind { Exhaustive, Beam } kind = Exhaustive;
  int width = 8;
};

namespace detail {

inline bool better(double a, double b) {
  if (std::isinf(b) || std::isinf(a)) return a < b;
  return a < b - 1e-12 * std::max(std::abs(a), std::abs(b));
}

} // namespace detail

inline AssignmentSolution solve_exhaustive(const AssignmentProblem& pr) {
  if (binomial(pr.N, pr.mu) > 1'000'000)
    throw InvalidParams("solve_assignment: exhaustive search infeasible, use beam mode");
  AssignmentSolution best;
  best.objective = std::numeric_limits<double>::infinity();
  double best_log = std::numeric_limits<double>::infinity();
  std::vector<int> c(pr.mu);
  std::iota(c.begin(), c.end(), 0);
  std::vector<int> P(pr.mu);
  do {
    for (int a = 0; a < pr.mu; ++a) P[a] = c[a] + 1;
    auto ov = assignment_objective(P, pr);
    ++best.evaluated;
    if (detail::better(ov.log_value, best_log)) { best_log = ov.log_value; best.objective = ov.value; best.P = P; }
  } while (detail::next_combination(c, pr.N));
  return best;
}

inline AssignmentSolution solve_beam(const AssignmentProblem& pr, int width) {
  if (width < 1) throw InvalidParams("beam width must be >= 1");
  AssignmentSolution sol;
  // partial sets are scored with A reduced to fit
  auto partial = [&](const std::vector<int>& Q) {
    const int s = static_cast<int>(Q.size());
    if (s < 2) return 0.0;
    AssignmentProblem sub = pr;
    sub.mu = s;
    sub.A = std::min(pr.A, s - 1);
    ++sol.evaluated;
    return assignment_objective(Q, sub).log_value;
  };
  std::vector<std::pair<double, std::vector<int>>> beam{{0.0, {}}};
  for (int s = 1; s <= pr.mu; ++s) {
    std::vector<std::pair<double, std::vector<int>>> next;
    for (auto& [_, Q] : beam) {
      const int last = Q.empty() ? 0 : Q.back();
      for (int q = last + 1; q <= pr.N - (pr.mu - s); ++q) {
        auto R = Q;
        R.push_back(q);
        next.emplace_back(partial(R), std::move(R));
      }
    }
    std::stable_sort(next.begin(), next.end(), [](auto& x, auto& y) {
      if (detail::better(x.first, y.first)) return true;
      if (detail::better(y.first, x.first)) return false;
      return x.second < y.second;
    });
    if (static_cast<int>(next.size()) > width) next.resize(width);
    beam = std::move(next);
  }
  // single-swap descent from every beam member; best local optimum wins
  auto descend = [&](std::vector<int> P) {
    double cur = assignment_objective(P, pr).log_value;
    ++sol.evaluated;
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < pr.mu && !improved; ++a) {
        for (int q = 1; q <= pr.N && !improved; ++q) {
          if (std::find(P.begin(), P.end(), q) != P.end()) continue;
          auto R = P;
          R[a] = q;
          std::sort(R.begin(), R.end());
          const double v = assignment_objective(R, pr).log_value;
          ++sol.evaluated;
          if (detail::better(v, cur)) { cur = v; P = std::move(R); improved = true; }
        }
      }
    }
    return std::pair<double, std::vector<int>>(cur, std::move(P));
  };
  double best_log = std::numeric_limits<double>::infinity();
  for (auto& [_, Q] : beam) {
    auto [v, P] = descend(Q);
    if (detail::better(v, best_log) || (!detail::better(best_log, v) && (sol.P.empty() || P < sol.P))) {
      best_log = v;
      sol.P = std::move(P);
    }
  }
  sol.objective = assignment_objective(sol.P, pr).value;
  return sol;
}

inline AssignmentSolution solve_assignment(const AssignmentProblem& pr, SearchMode mode = {}) {
  pr.validate();
  return mode.kind == SearchMode::Exhaustive ? solve_exhaustive(pr) : solve_beam(pr, mode.width);
}

/// Lexicographically smallest rotation/reflection of P.
inline std::vector<int> canonical_form(const std::vector<int>& P, int N) {
  std::vector<int> best;
  for (int refl = 0; refl < 2; ++refl) {
    for (int r = 0; r < N; ++r) {
      std::vector<int> Q;
      for (int q : P) {
        int x = refl ? N + 1 - q : q;
        Q.push_back((x - 1 + r) % N + 1);
      }
      std::sort(Q.begin(), Q.end());
      if (best.empty() || Q < best) best = Q;
    }
  }
  return best;
}

inline bool same_class(const std::vector<int>& a, const std::vector<int>& b, int N) {
  return canonical_form(a, N) == canonical_form(b, N);
}

/// {i, i+delta, ..., i+(mu-1)delta} for every start that fits inside [N].
inline std::vector<std::vector<int>> delta_spaced_candidates(int N, int mu, int delta) {
  if (delta < 1 || mu < 1) throw InvalidParams("delta_spaced: need delta >= 1, mu >= 1");
  std::vector<std::vector<int>> out;
  for (int i = 1; i + (mu - 1) * delta <= N; ++i) {
    std::vector<int> P;
    for (int a = 0; a < mu; ++a) P.push_back(i + a * delta);
    out.push_back(std::move(P));
  }
  return out;
}

struct BaselineResult {
  std::vector<int> best;
  double best_mean = 0.0;
  std::vector<std::pair<std::vector<int>, double>> table;  // subset -> mean e_rel
  bool non_discriminative = false;
};

/// evaluate(P, trials, seed) -> mean e_rel of `trials` seeded end-to-end runs with unreliable set P.
inline BaselineResult relative_error_baseline(
    const AssignmentProblem& pr, const std::function<double(const std::vector<int>&, int, std::uint64_t)>& evaluate,
    int trials, std::uint64_t seed, bool allow_large = false, long long limit = 100000) {
  pr.validate();
  const long long total = binomial(pr.N, pr.mu) * trials;
  if (total > limit && !allow_large)
    throw GuardTrip("relative_error_baseline: total simulations exceed the guard limit");
  BaselineResult res;
  std::vector<int> c(pr.mu);
  std::iota(c.begin(), c.end(), 0);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  do {
    std::vector<int> P(pr.mu);
    for (int a = 0; a < pr.mu; ++a) P[a] = c[a] + 1;
    double m = evaluate(P, trials, seed);
    res.table.emplace_back(P, m);
    if (m < lo) { lo = m; res.best = P; }
    hi = std::max(hi, m);
  } while (detail::next_combination(c, pr.N));
  res.best_mean = lo;
  res.non_discriminative = hi - lo <= 1e-9 * std::max(hi, 1e-300);
  return res;
}

} // namespace alcc
