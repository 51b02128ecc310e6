#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "dft_code.hpp"
#include "random.hpp"

namespace alcc {

inline std::vector<int> all_indices(int N) {
  std::vector<int> v(N);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

inline void check_candidates(const std::vector<int>& cand, int N) {
  std::vector<char> seen(N, 0);
  for (int q : cand) {
    if (q < 1 || q > N || seen[q - 1]) throw InvalidParams("candidate indices must be distinct and in [1,N]");
    seen[q - 1] = 1;
  }
}

inline double eval_energy(const Polynomial& g, int N, int q) {
  return std::norm(poly_eval(g, locator_root(N, q)));
}

/// Candidates ordered by |g(X_q)|^2 ascending, ties by smaller index.
inline std::vector<int> order_by_evaluation(const Polynomial& g, int N, const std::vector<int>& cand) {
  std::vector<std::pair<double, int>> e;
  e.reserve(cand.size());
  for (int q : cand) e.emplace_back(eval_energy(g, N, q), q);
  std::sort(e.begin(), e.end());
  std::vector<int> out;
  out.reserve(e.size());
  for (auto& [_, q] : e) out.push_back(q);
  return out;
}

inline std::vector<int> independent_localize(const LocatorPolynomial& g, int A, int N,
                                             const std::vector<int>& cand) {
  check_candidates(cand, N);
  if (A < 0 || A > static_cast<int>(cand.size()))
    throw InvalidParams("independent_localize: A exceeds candidate count");
  auto ord = order_by_evaluation(g.poly, N, cand);
  std::vector<int> out(ord.begin(), ord.begin() + A);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> independent_localize(const LocatorPolynomial& g, int A, int N) {
  return independent_localize(g, A, N, all_indices(N));
}

inline std::vector<int> restricted_localize(const LocatorPolynomial& g, int A, int N,
                                            const std::vector<int>& U) {
  if (A > static_cast<int>(U.size())) throw InvalidParams("restricted_localize: A exceeds |U|");
  return independent_localize(g, A, N, U);
}

inline LocatorPolynomial average_degree_v(const std::vector<LocatorPolynomial>& polys) {
  if (polys.empty()) throw InvalidParams("average_degree_v: empty input");
  const int d = polys.front().degree;
  std::vector<cplx> acc(d + 1, cplx(0.0));
  for (auto& p : polys) {
    if (p.degree != d) throw InvalidParams("average_degree_v: mixed declared degrees");
    for (int l = 0; l <= d; ++l) acc[l] += p.poly[l];
  }
  for (auto& c : acc) c /= static_cast<double>(polys.size());
  LocatorPolynomial out;
  out.poly = Polynomial(std::move(acc), 0.0);
  out.degree = d;
  return out;
}

struct JointConfig {
  int v = 0;
  int vprime = 0;  // 0: no constraint (use all of S_I)
  std::vector<LocatorPolynomial> polys;  // G_joint
  long long enum_limit = 5'000'000;
};

struct LocalizationResult {
  std::vector<std::vector<int>> per_poly;  // sorted detected sets, one per polynomial
  std::vector<int> aggregate;              // union of detected sets
  std::vector<int> chosen;                 // joint: minimizing subset S
  double objective = 0.0;
  int union_size = 0;                      // |S_I|
  bool union_exceeds_v = false;
  long long subsets_evaluated = 0;
};

/// G_joint = {average of degree-v polys} u {lower-degree polys}.
/// owner[i] gives the G_joint slot of input polynomial i (-1 when its degree is 0).
struct JointSet {
  std::vector<LocatorPolynomial> polys;
  std::vector<int> owner;
};

inline JointSet build_joint_set(const std::vector<LocatorPolynomial>& in, int v) {
  JointSet js;
  js.owner.assign(in.size(), -1);
  std::vector<LocatorPolynomial> top;
  std::vector<std::size_t> top_idx;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i].degree == v) { top.push_back(in[i]); top_idx.push_back(i); }
  if (!top.empty()) {
    js.polys.push_back(average_degree_v(top));
    for (auto i : top_idx) js.owner[i] = 0;
  }
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].degree >= 1 && in[i].degree < v) {
      js.owner[i] = static_cast<int>(js.polys.size());
      js.polys.push_back(in[i]);
    }
  }
  return js;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<long long>(r + 0.5L);
}

inline LocalizationResult joint_localize(const JointConfig& cfg, int N, const std::vector<int>& cand, Rng& rng) {
  if (cfg.polys.empty()) throw InvalidParams("joint_localize: empty polynomial set");
  check_candidates(cand, N);
  const int M = static_cast<int>(cfg.polys.size());
  for (auto& p : cfg.polys)
    if (p.degree < 1 || p.degree > cfg.v) throw InvalidParams("joint_localize: degree outside 1..v");

  LocalizationResult res;
  std::vector<char> in_union(N + 1, 0);
  std::vector<std::vector<int>> indep(M);
  for (int m = 0; m < M; ++m) {
    indep[m] = independent_localize(cfg.polys[m], std::min<int>(cfg.polys[m].degree, static_cast<int>(cand.size())), N, cand);
    for (int q : indep[m]) in_union[q] = 1;
  }
  std::vector<int> work;
  for (int q = 1; q <= N; ++q)
    if (in_union[q]) work.push_back(q);
  res.union_size = static_cast<int>(work.size());
  res.union_exceeds_v = res.union_size > cfg.v;

  if (cfg.vprime > 0 && cfg.vprime < static_cast<int>(work.size())) {
    std::vector<int> pick = work;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(cfg.vprime);
    std::sort(pick.begin(), pick.end());
    work = std::move(pick);
  }

  const int W = static_cast<int>(work.size());
  const int s = std::min(cfg.v, W);
  if (binomial(W, s) > cfg.enum_limit)
    throw GuardTrip("joint_localize: subset enumeration exceeds configured limit");

  // ev[m][w] = |t_m(X_work[w])|^2
  std::vector<std::vector<double>> ev(M, std::vector<double>(W));
  for (int m = 0; m < M; ++m)
    for (int w = 0; w < W; ++w) ev[m][w] = eval_energy(cfg.polys[m].poly, N, work[w]);

  std::vector<int> comb(s);
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<int> best = comb;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> buf(s);
  while (true) {
    double total = 0.0;
    for (int m = 0; m < M && total < best_val; ++m) {
      const int d = cfg.polys[m].degree;
      for (int a = 0; a < s; ++a) buf[a] = ev[m][comb[a]];
      if (d < s) {
        std::nth_element(buf.begin(), buf.begin() + d, buf.end());
        for (int a = 0; a < d; ++a) total += buf[a];
      } else {
        for (int a = 0; a < s; ++a) total += buf[a];
      }
    }
    ++res.subsets_evaluated;
    if (total < best_val) { best_val = total; best = comb; }
    int i = s - 1;
    while (i >= 0 && comb[i] == W - s + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
  }

  res.objective = best_val;
  for (int a : best) res.chosen.push_back(work[a]);

  std::vector<char> agg(N + 1, 0);
  res.per_poly.resize(M);
  for (int m = 0; m < M; ++m) {
    const int d = cfg.polys[m].degree;
    auto ord = order_by_evaluation(cfg.polys[m].poly, N, res.chosen);
    std::vector<int> sel(ord.begin(), ord.begin() + std::min<int>(d, static_cast<int>(ord.size())));
    if (static_cast<int>(sel.size()) < d) {
      for (int q : order_by_evaluation(cfg.polys[m].poly, N, cand)) {
        if (static_cast<int>(sel.size()) == d) break;
        if (std::find(sel.begin(), sel.end(), q) == sel.end()) sel.push_back(q);
      }
    }
    std::sort(sel.begin(), sel.end());
    for (int q : sel) agg[q] = 1;
    res.per_poly[m] = std::move(sel);
  }
  for (int q = 1; q <= N; ++q)
    if (agg[q]) res.aggregate.push_back(q);
  return res;
}

} // namespace alcc
