#include <gtest/gtest.h>

#include <alcc/numeric.hpp>
#include <alcc/random.hpp>

using namespace alcc;

TEST(DftMatrix, RejectsZero) { EXPECT_THROW(dft_matrix(0), InvalidDimension); }

TEST(DftMatrix, SmallCases) {
  auto w1 = dft_matrix(1);
  EXPECT_NEAR(std::abs(w1(0, 0) - cplx(1.0)), 0.0, 1e-15);
  auto w2 = dft_matrix(2);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(w2(0, 0) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w2(0, 1) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w2(1, 0) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w2(1, 1) + s), 0.0, 1e-15);
}

TEST(DftMatrix, UnitaryUpTo64) {
  for (int n = 1; n <= 64; ++n) {
    auto w = dft_matrix(n);
    double err = (w * w.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    EXPECT_LE(err, 1e-10) << "n=" << n;
  }
}

TEST(LeastSquares, IdentitySystem) {
  CVector b(3);
  b << 1.0, cplx(0, 1), -2.0;
  auto r = least_squares(CMatrix::Identity(3, 3), b);
  EXPECT_LE((r.x - b).norm(), 1e-14);
  EXPECT_FALSE(r.rank_deficient);
}

TEST(LeastSquares, OverdeterminedColumn) {
  CMatrix a(2, 1);
  a << 1.0, 1.0;
  CVector b(2);
  b << 0.0, 2.0;
  auto r = least_squares(a, b);
  EXPECT_NEAR(std::abs(r.x(0) - cplx(1.0)), 0.0, 1e-14);
}

TEST(LeastSquares, VandermondeRoundTrip) {
  CMatrix v(2, 2);
  v << 1.0, 1.0, 1.0, -1.0;  // nodes {1, -1}, columns z^0, z^1
  CVector c(2);
  c << cplx(2, 1), cplx(-3, 0.5);
  auto r = least_squares(v, v * c);
  EXPECT_LE((r.x - c).norm(), 1e-13);
}

TEST(LeastSquares, DimensionErrors) {
  EXPECT_THROW(least_squares(CMatrix::Identity(3, 3), CVector::Zero(2)), InvalidDimension);
  EXPECT_THROW(least_squares(CMatrix::Zero(2, 3), CVector::Zero(2)), InvalidDimension);
}

TEST(LeastSquares, RankDeficientGivesMinimumNorm) {
  CMatrix a(3, 2);
  a << 1.0, 1.0, 1.0, 1.0, 1.0, 1.0;
  CVector b = CVector::Constant(3, 2.0);
  auto r = least_squares(a, b);
  EXPECT_TRUE(r.rank_deficient);
  EXPECT_NEAR(std::abs(r.x(0) - cplx(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.x(1) - cplx(1.0)), 0.0, 1e-12);
}

TEST(LeastSquares, ResidualBeatsRandomCandidates) {
  Rng rng(3);
  for (int inst = 0; inst < 20; ++inst) {
    CMatrix a(8, 4);
    CVector b(8);
    for (int i = 0; i < 8; ++i) {
      b(i) = cn(rng, 0.0, 1.0);
      for (int j = 0; j < 4; ++j) a(i, j) = cn(rng, 0.0, 1.0);
    }
    double best = (a * least_squares(a, b).x - b).norm();
    for (int t = 0; t < 100; ++t) {
      CVector y(4);
      for (int j = 0; j < 4; ++j) y(j) = cn(rng, 0.0, 1.0);
      EXPECT_LE(best, (a * y - b).norm() + 1e-9);
    }
  }
}

TEST(NumericalRank, Basics) {
  EXPECT_EQ(numerical_rank(CMatrix::Zero(3, 3), 1e-6), 0);
  CVector u(3), v(3);
  u << 1.0, cplx(0, 2), -1.0;
  v << cplx(3, 1), 1.0, 2.0;
  EXPECT_EQ(numerical_rank(u * v.adjoint(), 1e-6), 1);
  EXPECT_EQ(numerical_rank(CMatrix::Identity(4, 4), 1e-6), 4);
  EXPECT_THROW(numerical_rank(CMatrix::Identity(2, 2), 0.0), InvalidParams);
  EXPECT_THROW(numerical_rank(CMatrix::Identity(2, 2), 1.0), InvalidParams);
}

TEST(NumericalRank, MonotoneInTolerance) {
  Rng rng(11);
  CMatrix m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = cn(rng, 0.0, 1.0) * std::pow(10.0, -i);
  int prev = 7;
  for (double tol : {1e-12, 1e-9, 1e-6, 1e-4, 1e-2, 0.5, 0.9}) {
    int r = numerical_rank(m, tol);
    EXPECT_LE(r, prev);
    prev = r;
  }
}

TEST(PolyEval, HandValues) {
  EXPECT_EQ(poly_eval(Polynomial({5.0}), cplx(3, 4)), cplx(5.0));
  EXPECT_NEAR(std::abs(poly_eval(Polynomial({-1.0, 0.0, 1.0}), 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(poly_eval(Polynomial({1.0, 2.0, 3.0}), cplx(0, 1)) - cplx(-2, 2)), 0.0, 1e-14);
}

TEST(PolyEval, MatchesPowerSum) {
  Rng rng(5);
  for (int deg = 0; deg <= 32; ++deg) {
    std::vector<cplx> c(deg + 1);
    for (auto& x : c) x = cn(rng, 0.0, 1.0);
    Polynomial p(c);
    for (int t = 0; t < 5; ++t) {
      cplx z = std::polar(1.0, 2.0 * kPi * t / 5.0);
      cplx naive = 0.0;
      for (int l = 0; l <= deg; ++l) naive += c[l] * std::pow(z, l);
      EXPECT_LE(std::abs(poly_eval(p, z) - naive), 1e-12 * std::max(1.0, std::abs(naive)) * (deg + 1));
    }
  }
}

TEST(Polynomial, TrimsTrailingZeros) {
  Polynomial p({1.0, 2.0, 1e-20});
  EXPECT_EQ(p.degree(), 1);
  Polynomial q({1.0, 2.0, 1e-3});
  EXPECT_EQ(q.degree(), 2);
}
