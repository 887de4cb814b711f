#include <gtest/gtest.h>

#include <random>

#include "ltar/datagen.hpp"
#include "ltar/errors.hpp"
#include "ltar/transforms.hpp"
#include "ltar/var.hpp"
#include "oracles.hpp"

using namespace ltar;

namespace {

Matrix<double> column(std::initializer_list<double> values) {
  Matrix<double> m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (const double v : values) m(i++, 0) = v;
  return m;
}

double residual_norm(const DesignPair<double>& d, const Matrix<double>& a) {
  return (d.x * a - d.y).norm();
}

}  // namespace

TEST(BuildDesign, ScalarSeriesByHand) {
  const DesignPair<double> d = build_design(column({1, 2, 3, 4}), 1);
  Matrix<double> x(3, 2), y(3, 1);
  x << 1, 1, 1, 2, 1, 3;
  y << 2, 3, 4;
  EXPECT_EQ(d.x, x);
  EXPECT_EQ(d.y, y);
}

TEST(BuildDesign, LagBlocksNewestFirst) {
  Matrix<double> s(5, 2);
  s << 1, 10, 2, 20, 3, 30, 4, 40, 5, 50;
  const DesignPair<double> d = build_design(s, 2);
  ASSERT_EQ(d.x.rows(), 3);
  ASSERT_EQ(d.x.cols(), 5);
  ASSERT_EQ(d.y.rows(), 3);
  ASSERT_EQ(d.y.cols(), 2);
  Matrix<double> row0(1, 5);
  row0 << 1, 2, 20, 1, 10;
  EXPECT_EQ(d.x.row(0), row0);
  EXPECT_EQ(d.y.row(0), s.row(2));
}

TEST(BuildDesign, BoundaryCounts) {
  const Matrix<double> s = column({1, 2, 3, 4, 5});
  EXPECT_EQ(build_design(s, 4).x.rows(), 1);
  for (std::size_t p = 1; p < 5; ++p) {
    EXPECT_EQ(static_cast<std::size_t>(build_design(s, p).x.rows()), 5 - p);
  }
  EXPECT_THROW((void)build_design(s, 5), InsufficientDataError);
  EXPECT_THROW((void)build_design(s, 0), std::invalid_argument);
}

TEST(OlsFit, ExactLinearRecursion) {
  Matrix<double> s(30, 1);
  s(0, 0) = 1.0;
  for (Eigen::Index t = 1; t < 30; ++t) s(t, 0) = 0.5 * s(t - 1, 0) + 0.1;
  const Matrix<double> a = ols_fit(build_design(s, 1));
  EXPECT_NEAR(a(0, 0), 0.1, 1e-10);
  EXPECT_NEAR(a(1, 0), 0.5, 1e-10);
}

TEST(OlsFit, ZeroResponseGivesZeroCoefficients) {
  std::mt19937_64 rng(1);
  DesignPair<double> d;
  d.x = Matrix<double>::Random(20, 4);
  d.y = Matrix<double>::Zero(20, 2);
  EXPECT_TRUE(ols_fit(d).isZero(0.0));
}

TEST(OlsFit, MatchesPseudoInverseAndNormalEquations) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    DesignPair<double> d;
    d.x = Matrix<double>::Random(60, 7);
    d.x.col(0).setOnes();
    d.y = Matrix<double>::Random(60, 3);
    const Matrix<double> a = ols_fit(d);
    EXPECT_LT((a - oracle::pinv_solve(d.x, d.y)).cwiseAbs().maxCoeff(), 1e-8);
    const Matrix<double> lhs = d.x.transpose() * d.x * a;
    const Matrix<double> rhs = d.x.transpose() * d.y;
    EXPECT_LT((lhs - rhs).norm(), 1e-8 * rhs.norm());
  }
}

TEST(OlsFit, ComplexUsesAdjoint) {
  DesignPair<Complex> d;
  d.x = Matrix<Complex>::Random(40, 5);
  d.y = Matrix<Complex>::Random(40, 2);
  EXPECT_LT((ols_fit(d) - oracle::pinv_solve(d.x, d.y)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(OlsFit, PerturbationDoesNotImproveResidual) {
  std::mt19937_64 rng(3);
  DesignPair<double> d;
  d.x = Matrix<double>::Random(50, 5);
  d.y = Matrix<double>::Random(50, 2);
  const Matrix<double> a = ols_fit(d);
  const double base = residual_norm(d, a);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (const double h : {1e-3, -1e-3}) {
        Matrix<double> b = a;
        b(i, j) += h;
        EXPECT_GE(residual_norm(d, b), base);
      }
}

TEST(OlsFit, UnderdeterminedAndSingular) {
  DesignPair<double> small;
  small.x = Matrix<double>::Random(3, 5);
  small.y = Matrix<double>::Random(3, 1);
  EXPECT_THROW((void)ols_fit(small), InsufficientDataError);

  DesignPair<double> singular;
  singular.x = Matrix<double>::Ones(10, 2);
  singular.y = Matrix<double>::Ones(10, 1);
  EXPECT_THROW((void)ols_fit(singular, OlsOptions{false}), NumericalError);
  EXPECT_NO_THROW((void)ols_fit(singular));
}

TEST(VarFit, NoiselessVar1Recovery) {
  std::mt19937_64 rng(4);
  Matrix<double> a1(3, 3);
  a1 << 0.5, 0.1, -0.2, 0.0, 0.3, 0.2, 0.1, -0.1, 0.4;
  Vector<double> c(3);
  c << 0.1, -0.2, 0.3;
  const Matrix<double> s = oracle::simulate_var({a1}, c, 200, rng);
  const VarParams<double> fit = var_fit(s, 1);
  EXPECT_EQ(fit.p, 1u);
  EXPECT_LT((fit.coeff[0] - a1).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((fit.intercept - c).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(VarFit, NoiselessVar2RecoveryAt1e7) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t dim = 4, p = 2;
    std::vector<Matrix<double>> coeff;
    for (std::size_t i = 0; i < p; ++i) coeff.push_back(Matrix<double>::Random(4, 4));
    VarParams<double> params{p, coeff, Vector<double>::Random(4)};
    const double alpha = 0.9 / companion_spectral_radius(params);
    coeff[0] *= alpha;
    coeff[1] *= alpha * alpha;
    const std::size_t n = 20 * (dim * p + 1);
    const Matrix<double> s = oracle::simulate_var(coeff, params.intercept, n, rng);
    const VarParams<double> fit = var_fit(s, p);
    for (std::size_t i = 0; i < p; ++i)
      EXPECT_LT((fit.coeff[i] - coeff[i]).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LT((fit.intercept - params.intercept).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(VarFit, ConstantSeriesFixedPoint) {
  Matrix<double> s = Matrix<double>::Constant(30, 2, 1.5);
  const VarParams<double> fit = var_fit(s, 2);
  for (const auto& a : fit.coeff) EXPECT_LT(a.cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT((fit.intercept.array() - 1.5).abs().maxCoeff(), 1e-6);
}

TEST(VarFit, Preconditions) {
  const Matrix<double> s = Matrix<double>::Random(10, 3);
  EXPECT_THROW((void)var_fit(s, 0), std::invalid_argument);
  // n must exceed dim * p + 1.
  EXPECT_THROW((void)var_fit(s, 3), InsufficientDataError);
  EXPECT_NO_THROW((void)var_fit(s, 2));
}

TEST(VarForecastOne, TrivialDynamics) {
  VarParams<double> zero{2, {Matrix<double>::Zero(2, 2), Matrix<double>::Zero(2, 2)},
                         Vector<double>::Constant(2, 0.7)};
  const Matrix<double> h = Matrix<double>::Random(3, 2);
  EXPECT_EQ(var_forecast_one(zero, h), zero.intercept);

  VarParams<double> eye{1, {Matrix<double>::Identity(2, 2)}, Vector<double>::Zero(2)};
  EXPECT_EQ(var_forecast_one(eye, h), h.row(2).transpose());
  EXPECT_THROW((void)var_forecast_one(zero, Matrix<double>(Matrix<double>::Random(1, 2))),
               InsufficientDataError);
}

TEST(VarForecastOne, GroundTruthSliceArithmetic) {
  // Transform-domain slice k of the example model is a_k I with intercept c_k.
  const LtarModel theta = ground_truth_theta(TransformKind::Dct);
  const Tensor3 at = l_transform_real(theta.A[0], TransformKind::Dct);
  const Tensor3 ct = l_transform_real(theta.C, TransformKind::Dct);
  Matrix<double> history(1, 3);
  history << 0.4, -1.0, 2.5;
  for (std::size_t k = 0; k < 3; ++k) {
    VarParams<double> params{1, {frontal_slice(at, k)}, frontal_slice(ct, k)};
    const Vector<double> got = var_forecast_one(params, history);
    for (Eigen::Index i = 0; i < 3; ++i) {
      const double want = ct(static_cast<std::size_t>(i), 0, k) +
                          at(0, 0, k) * history(0, i);
      EXPECT_NEAR(got(i), want, 1e-15);
    }
  }
}

TEST(CompanionSpectralRadius, KnownValues) {
  VarParams<double> scalar{2, {Matrix<double>::Constant(1, 1, 0.5),
                               Matrix<double>::Constant(1, 1, 0.06)},
                           Vector<double>::Zero(1)};
  // Roots of z^2 - 0.5 z - 0.06 are 0.6 and -0.1.
  EXPECT_NEAR(companion_spectral_radius(scalar), 0.6, 1e-12);
  VarParams<Complex> rot{1, {Matrix<Complex>::Constant(1, 1, Complex(0.0, 1.2))},
                         Vector<Complex>::Zero(1)};
  EXPECT_NEAR(companion_spectral_radius(rot), 1.2, 1e-12);
}
