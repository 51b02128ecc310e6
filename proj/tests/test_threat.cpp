#include <gtest/gtest.h>

#include <alcc/threat.hpp>

using namespace alcc;

namespace {

std::vector<CMatrix> clean_results(int N, int u, int h, Rng& rng) {
  std::vector<CMatrix> r(N, CMatrix(u, h));
  for (auto& m : r)
    for (int i = 0; i < u; ++i)
      for (int j = 0; j < h; ++j) m(i, j) = cn(rng, 0.0, 1.0);
  return r;
}

} // namespace

TEST(Inject, EmptyPlanIsExact) {
  Rng rng(1);
  auto res = clean_results(7, 2, 3, rng);
  ByzantinePlan plan;
  plan.beff = all_one_bases(6, 0);
  auto out = inject(res, plan, PrecisionModel{}, 5);
  for (int i = 0; i < 7; ++i) EXPECT_TRUE((out[i].array() == res[i].array()).all());
}

TEST(Inject, LocatorDirectLeavesResultsUntouched) {
  Rng rng(2);
  auto res = clean_results(7, 2, 2, rng);
  ByzantinePlan plan;
  plan.beff = all_one_bases(4, 0);
  auto out = inject(res, plan, PrecisionModel{PrecisionModel::LocatorDirect, 0.1}, 5);
  for (int i = 0; i < 7; ++i) EXPECT_TRUE((out[i].array() == res[i].array()).all());
}

TEST(Inject, DefaultNoiseStatistics) {
  Rng rng(3);
  const int N = 31, u = 20, h = 20;
  auto res = clean_results(N, u, h, rng);
  ByzantinePlan plan;
  plan.workers = {2, 9, 17, 30};
  plan.beff = all_one_bases(u * h, 4);
  auto out = inject(res, plan, PrecisionModel{}, 11);
  cplx mean = 0.0;
  double var = 0.0;
  int n = 0;
  for (int w : plan.workers) {
    CMatrix e = out[w - 1] - res[w - 1];
    for (int i = 0; i < e.size(); ++i) { mean += e(i); ++n; }
  }
  mean /= static_cast<double>(n);
  for (int w : plan.workers) {
    CMatrix e = out[w - 1] - res[w - 1];
    for (int i = 0; i < e.size(); ++i) var += std::norm(e(i) - mean);
  }
  var /= n - 1;
  EXPECT_NEAR(mean.real(), 10.0, 5.0 * std::sqrt(500.0 / n));
  EXPECT_NEAR(mean.imag(), 0.0, 5.0 * std::sqrt(500.0 / n));
  EXPECT_NEAR(var, 1e3, 0.1e3);
  for (int w = 1; w <= N; ++w)
    if (std::find(plan.workers.begin(), plan.workers.end(), w) == plan.workers.end())
      EXPECT_TRUE((out[w - 1].array() == res[w - 1].array()).all());
}

TEST(Inject, SupportFidelity) {
  Rng rng(4);
  const int u = 5, h = 5;
  auto res = clean_results(31, u, h, rng);
  ByzantinePlan plan;
  plan.workers = {1, 4, 7, 10, 13, 16, 19, 22};
  plan.beff = design_weak_collusion(u * h, 8, 0.4, rng);
  auto out = inject(res, plan, PrecisionModel{}, 99);
  for (int a = 0; a < 8; ++a) {
    auto b = plan.beff.base_of(a, u, h);
    CMatrix e = out[plan.workers[a] - 1] - res[plan.workers[a] - 1];
    for (int r = 0; r < u; ++r)
      for (int c = 0; c < h; ++c) EXPECT_EQ(e(r, c) != cplx(0.0), b(r, c) == 1);
  }
}

TEST(Inject, SeedDeterminism) {
  Rng rng(5);
  auto res = clean_results(11, 3, 3, rng);
  ByzantinePlan plan;
  plan.workers = {2, 5};
  plan.beff = all_one_bases(9, 2);
  PrecisionModel prec{PrecisionModel::Synthetic, 1e-3};
  auto a = inject(res, plan, prec, 7), b = inject(res, plan, prec, 7), c = inject(res, plan, prec, 8);
  bool differs = false;
  for (int i = 0; i < 11; ++i) {
    EXPECT_TRUE((a[i].array() == b[i].array()).all());
    differs |= !(a[i].array() == c[i].array()).all();
  }
  EXPECT_TRUE(differs);
}

TEST(Inject, OutOfRangeWorker) {
  Rng rng(6);
  auto res = clean_results(5, 1, 1, rng);
  ByzantinePlan plan;
  plan.workers = {6};
  plan.beff = all_one_bases(1, 1);
  EXPECT_THROW(inject(res, plan, PrecisionModel{}, 1), InvalidParams);
}

TEST(NativeReduced, SinglePrecisionError) {
  Rng rng(7);
  CMatrix U(20, 5);
  for (int i = 0; i < U.size(); ++i) U(i) = cn(rng, 0.0, 1.0);
  auto f = gram_function();
  CMatrix exact = f.apply(U);
  CMatrix low = worker_compute(f, U, PrecisionModel{PrecisionModel::NativeReduced, 0.0});
  double rel = (low - exact).norm() / exact.norm();
  EXPECT_GT(rel, 0.0);
  EXPECT_LT(rel, 1e-5);
}

TEST(StrongCollusion, Examples) {
  Rng rng(8);
  auto one = design_strong_collusion(1, 4, rng);
  EXPECT_EQ(one.B.rows(), 1);
  EXPECT_EQ(one.B.sum(), 4);
  auto e = design_strong_collusion(9, 4, rng);
  int w4 = 0, w3 = 0;
  for (int r = 0; r < 9; ++r) {
    int w = e.B.row(r).sum();
    w4 += w == 4;
    w3 += w == 3;
  }
  EXPECT_EQ(w4, 1);
  EXPECT_EQ(w3, 8);
  EXPECT_EQ(e.B.row(0).sum(), 4);
  EXPECT_TRUE(design_strong_collusion(5, 1, rng).degenerate);
}

TEST(StrongCollusion, ExactlyOneAllOneRow) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s);
    const int M = 2 + static_cast<int>(s % 40), v = 2 + static_cast<int>(s % 7);
    auto e = design_strong_collusion(M, v, rng);
    int all_one = 0;
    for (int r = 0; r < M; ++r) all_one += e.B.row(r).sum() == v;
    EXPECT_EQ(all_one, 1);
  }
}

TEST(StrongCollusion, PositionsUniform) {
  Rng rng(9);
  auto e = design_strong_collusion(40001, 4, rng);
  for (int a = 0; a < 4; ++a) {
    int zeros = 40000 - (e.B.col(a).sum() - 1);
    EXPECT_NEAR(zeros, 10000, 4.0 * std::sqrt(40000 * 0.25 * 0.75));
  }
}

TEST(WeakCollusion, Examples) {
  Rng rng(10);
  EXPECT_EQ(design_weak_collusion(50, 8, 1e-9, rng).B.sum(), 400);
  EXPECT_THROW(design_weak_collusion(5, 2, 0.0, rng), InvalidParams);
  EXPECT_THROW(design_weak_collusion(5, 2, 1.0, rng), InvalidParams);

  for (double p : {0.1, 0.257, 0.5, 0.9}) {
    auto e = design_weak_collusion(1250, 8, p, rng);
    const double n = 1e4, zeros = n - e.B.sum();
    EXPECT_NEAR(zeros / n, p, 3.0 * std::sqrt(p * (1 - p) / n)) << p;
  }

  const double ps = optimal_p(8);
  const int M = 20000;
  auto e = design_weak_collusion(M, 8, ps, rng);
  int all_one = 0;
  for (int r = 0; r < M; ++r) all_one += e.B.row(r).sum() == 8;
  const double q = std::pow(1 - ps, 8);
  EXPECT_NEAR(q, 0.0924, 5e-4);
  EXPECT_NEAR(all_one, M * q, 4.0 * std::sqrt(M * q * (1 - q)));
}

TEST(WeakCollusion, ChiSquare) {
  Rng rng(11);
  const double p = 0.3;
  auto e = design_weak_collusion(12500, 8, p, rng);  // 1e5 entries
  const double n = 1e5, ones = e.B.sum(), zeros = n - ones;
  const double chi2 = std::pow(zeros - n * p, 2) / (n * p) + std::pow(ones - n * (1 - p), 2) / (n * (1 - p));
  EXPECT_LT(chi2, 6.635);  // 1 dof, 1% level
}

TEST(OptimalP, Examples) {
  EXPECT_NEAR(optimal_p(8), 0.257, 1e-3);
  EXPECT_NEAR(optimal_p(2), 0.5, 1e-15);
  EXPECT_THROW(optimal_p(1), InvalidParams);
}

TEST(OptimalP, GoldenSectionAndStationarity) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int v = 2; v <= 16; ++v) {
    auto obj = [v](double p) { return p + std::pow(1 - p, v); };
    double a = 0.0, b = 1.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int it = 0; it < 200; ++it) {
      if (obj(c) < obj(d)) b = d; else a = c;
      c = b - phi * (b - a);
      d = a + phi * (b - a);
    }
    const double ps = optimal_p(v);
    EXPECT_NEAR(ps, 0.5 * (a + b), 1e-6) << v;
    EXPECT_LE(std::abs(1 - v * std::pow(1 - ps, v - 1)), 1e-9) << v;
  }
}

TEST(TrustProfile, Partition) {
  auto t = TrustProfile::make(6, {2, 5});
  EXPECT_EQ(t.unreliable, std::vector<int>({2, 5}));
  EXPECT_EQ(t.reliable, std::vector<int>({1, 3, 4, 6}));
  EXPECT_THROW(TrustProfile::make(6, {7}), InvalidParams);
}
