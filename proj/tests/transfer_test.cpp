#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bresse/spectral.hpp"
#include "test_support.hpp"

using namespace bresse;

TEST(TransferMatrix, EntriesForUnitCoefficients) {
  const auto tm = transfer_matrix(1.0, PhysicalParameters{});
  EXPECT_EQ(tm.A6(3, 2), 0.0);  // (rho2 lambda^2 - k1) / k2
  EXPECT_EQ(tm.A6(1, 5), 0.0);  // l (1 - k3 / k1)
  EXPECT_EQ(tm.A6(0, 1), 1.0);
  EXPECT_EQ(tm.A6(1, 3), 1.0);
  EXPECT_EQ(tm.A6(2, 3), 1.0);
  EXPECT_EQ(tm.A6(4, 5), 1.0);
}

TEST(TransferMatrix, CurvatureEntryAtZeroFrequency) {
  PhysicalParameters p;
  p.k1 = 1;
  p.k3 = 4;
  p.l = 2;
  const auto tm = transfer_matrix(0.0, p);
  EXPECT_DOUBLE_EQ(tm.A6(5, 1), -2.5);
  EXPECT_DOUBLE_EQ(tm.A6(5, 3), -0.5);
  EXPECT_DOUBLE_EQ(tm.A6(5, 4), -1.0);
  EXPECT_DOUBLE_EQ(tm.A6(1, 5), 2.0 * (1.0 - 4.0));
}

TEST(TransferMatrix, AllEntriesForGeneralCoefficients) {
  PhysicalParameters p;
  p.rho1 = 1.5;
  p.rho2 = 0.5;
  p.k1 = 2;
  p.k2 = 4;
  p.k3 = 8;
  p.l = 3;
  const double lam = 2.0;
  Eigen::Matrix<double, 6, 6> expected = Eigen::Matrix<double, 6, 6>::Zero();
  expected(0, 1) = 1;
  expected(1, 3) = 1;
  expected(1, 5) = 3 * (1 - 4.0);
  expected(2, 3) = 1;
  expected(3, 1) = -0.5;
  expected(3, 2) = (0.5 * 4 - 2) / 4.0;
  expected(3, 4) = -3 * 2 / 4.0;
  expected(4, 5) = 1;
  expected(5, 1) = -3 * (2 / 8.0 + 1);
  expected(5, 3) = -3 * 2 / 8.0;
  expected(5, 4) = (1.5 * 4 - 9 * 2) / 8.0;
  EXPECT_LE((transfer_matrix(lam, p).A6 - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Propagate, ZeroDataStaysZero) {
  const auto tm = transfer_matrix(3.0, PhysicalParameters{});
  for (double x : {0.5, 0.7, 1.0}) EXPECT_EQ(propagate(tm, Vector6::Zero(), x).norm(), 0.0);
}

TEST(Propagate, IdentityAtBeta) {
  const auto tm = transfer_matrix(3.0, PhysicalParameters{});
  const Vector6 v = Vector6::LinSpaced(1.0, 6.0);
  EXPECT_LE((propagate(tm, v, 0.5) - v).norm(), 1e-15);
}

TEST(Propagate, GroupProperty) {
  const PhysicalParameters p;
  for (double lambda = 0.0; lambda <= 10.0; lambda += 0.5) {
    const auto tm = transfer_matrix(lambda, p);
    const Vector6 v = Vector6::LinSpaced(-1.0, 2.0);
    for (double x : {0.6, 0.8, 1.0}) {
      const Vector6 back = flow(tm, propagate(tm, v, x), -(x - p.beta));
      EXPECT_LE((back - v).norm(), 1e-9 * v.norm()) << "lambda=" << lambda << " x=" << x;
    }
  }
}

TEST(Propagate, GroupPropertyUpToConditioning) {
  // exp(A6 dx) has real growth rates of order lambda sqrt(rho/k), so the round
  // trip can only be as accurate as cond(exp(A6 dx)) allows.
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = test::random_params(rng);
    const auto tm = transfer_matrix(0.5 + trial, p);
    Vector6 v;
    for (auto& c : v) c = normal(rng);
    const double x = p.beta + 0.6 * (p.L - p.beta);
    const Eigen::Matrix<double, 6, 6> e = (tm.A6 * (x - p.beta)).exp();
    const double cond = e.norm() * (tm.A6 * (p.beta - x)).exp().norm();
    const double tol = std::max(1e-9, 1e-14 * cond);
    const Vector6 forward = propagate(tm, v, x);
    EXPECT_LE((flow(tm, forward, -(x - p.beta)) - v).norm(), tol * v.norm()) << "trial " << trial;
    const double mid = p.beta + 0.25 * (x - p.beta);
    const Vector6 split = flow(tm, propagate(tm, v, mid), x - mid);
    EXPECT_LE((split - forward).norm(), tol * forward.norm()) << "trial " << trial;
  }
}

TEST(Propagate, SolvesTheLinearSystem) {
  // Central difference of V(x) against A6 V(x).
  PhysicalParameters p;
  p.k2 = 2;
  const auto tm = transfer_matrix(2.0, p);
  const Vector6 v = Vector6::Ones();
  const double x = 0.75, d = 1e-5;
  const Vector6 deriv = (propagate(tm, v, x + d) - propagate(tm, v, x - d)) / (2 * d);
  const Vector6 rhs = tm.A6 * propagate(tm, v, x);
  EXPECT_LE((deriv - rhs).norm(), 1e-7 * rhs.norm());
}

TEST(Propagate, RejectsPositionsOutsideUndampedPart) {
  const auto tm = transfer_matrix(1.0, PhysicalParameters{});
  EXPECT_THROW(propagate(tm, Vector6::Ones(), 0.2), ParameterError);
  EXPECT_THROW(propagate(tm, Vector6::Ones(), 1.1), ParameterError);
}

TEST(ReducedSolution, CaseSwitchAtThreshold) {
  PhysicalParameters p;
  p.l = 2;
  p.k3 = 2;
  p.rho1 = 2;
  const double threshold = 2.0;  // lambda^2 = l^2 k3 / rho1 = 4
  const auto at = reduced_solution(threshold, p, 1, 2);
  EXPECT_EQ(at.kind, ReducedCase::Linear);
  EXPECT_EQ(at.s, 0.0);
  EXPECT_DOUBLE_EQ(at(0.3), 1 * 0.3 + 2);
  EXPECT_EQ(reduced_solution(std::nextafter(threshold, 10.0), p, 1, 2).kind,
            ReducedCase::Exponential);
  EXPECT_EQ(reduced_solution(std::nextafter(threshold, 0.0), p, 1, 2).kind,
            ReducedCase::Trigonometric);
  EXPECT_EQ(reduced_solution(2 * threshold, p, 1, 2).kind, ReducedCase::Exponential);
  EXPECT_EQ(reduced_solution(0.0, p, 1, 2).kind, ReducedCase::Trigonometric);
}

TEST(ReducedSolution, FourthOrderDifferenceResidual) {
  const PhysicalParameters p;
  const double h = 1e-3;
  for (double lambda : {0.0, 0.5, 1.0, 1.7, 3.0}) {
    const auto v = reduced_solution(lambda, p, 0.8, -0.3);
    double residual = 0.0, vmax = 0.0;
    for (double x = 2 * h; x <= p.beta - 2 * h; x += h) {
      const double vxx = (-v(x + 2 * h) + 16 * v(x + h) - 30 * v(x) + 16 * v(x - h) - v(x - 2 * h)) /
                         (12 * h * h);
      residual = std::max(residual, std::abs(v.s * v(x) + vxx));
      vmax = std::max(vmax, std::abs(v(x)));
    }
    EXPECT_LE(residual, 1e-6 * vmax) << to_string(v.kind) << " lambda=" << lambda;
  }
}

TEST(ReducedSolution, SamplesInsideDampedPart) {
  const PhysicalParameters p;
  const Grid g = Grid::uniform(9, 1.0);
  const auto v = reduced_solution(2.0, p, 1, 0);
  const auto s = reduced_solution_on_grid(v, g, p.beta);
  ASSERT_EQ(s.size(), 4u);  // x = 0.1 .. 0.4
  EXPECT_DOUBLE_EQ(s[2], v(0.3));
}
