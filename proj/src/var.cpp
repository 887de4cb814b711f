#include "ltar/var.hpp"

#include <limits>
#include <string>
#include <type_traits>

#include <Eigen/Eigenvalues>

namespace ltar {

template <typename Scalar>
DesignPair<Scalar> build_design(const Matrix<Scalar>& series, std::size_t p) {
  if (p == 0) {
    throw std::invalid_argument("VAR lag order must be at least 1");
  }
  const auto n = static_cast<std::size_t>(series.rows());
  if (n <= p) {
    throw InsufficientDataError("insufficient history: " + std::to_string(n) +
                                " observations for lag order " +
                                std::to_string(p));
  }
  const Eigen::Index dim = series.cols();
  const auto rows = static_cast<Eigen::Index>(n - p);
  const auto lags = static_cast<Eigen::Index>(p);

  DesignPair<Scalar> d;
  d.y = series.bottomRows(rows);
  d.x.resize(rows, dim * lags + 1);
  d.x.col(0).setOnes();
  for (Eigen::Index lag = 1; lag <= lags; ++lag) {
    // Column block lag-1 holds y_{t+p-lag}; in series rows that is the window
    // starting at p - lag.
    d.x.block(0, 1 + (lag - 1) * dim, rows, dim) =
        series.middleRows(lags - lag, rows);
  }
  return d;
}

namespace {

template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

// Upper bound on residual-correction passes reusing the normal-equation
// factorization. Each pass shrinks the error by roughly cond(X^H X) * eps, so
// a handful suffice unless the system is close to singular.
constexpr int kRefinementSteps = 100;

template <typename Scalar>
bool leading_ones(const Matrix<Scalar>& x) {
  return x.cols() > 0 && (x.col(0).array() == Scalar(1)).all();
}

}  // namespace

template <typename Scalar>
Matrix<Scalar> ols_fit(const DesignPair<Scalar>& design,
                       const OlsOptions& options) {
  const auto& x = design.x;
  const auto& y = design.y;
  if (x.rows() != y.rows()) {
    throw ShapeError("design matrices disagree in row count");
  }
  const Eigen::Index cols = x.cols();
  if (x.rows() < cols) {
    throw InsufficientDataError(
        "underdetermined system: " + std::to_string(x.rows()) +
        " regression rows for " + std::to_string(cols) + " coefficients");
  }

  // With an intercept column the lag block is solved on centered data, which
  // has the same minimizer and avoids the near-collinearity between the ones
  // column and a series sitting close to its mean.
  const bool intercept = leading_ones(x);
  const Eigen::Index first = intercept ? 1 : 0;
  Matrix<Scalar> xr = x.rightCols(cols - first);
  Matrix<Scalar> yr = y;
  RowVector<Scalar> x_mean, y_mean;
  if (intercept) {
    x_mean = xr.colwise().mean();
    y_mean = y.colwise().mean();
    xr.rowwise() -= x_mean;
    yr.rowwise() -= y_mean;
  }
  const Eigen::Index k = xr.cols();

  Matrix<Scalar> a = Matrix<Scalar>::Zero(k, y.cols());
  if (k > 0) {
    Matrix<Scalar> gram = Matrix<Scalar>::Zero(k, k);
    gram.template selfadjointView<Eigen::Lower>().rankUpdate(xr.adjoint());
    gram.template triangularView<Eigen::StrictlyUpper>() = gram.adjoint();

    const double eps = std::numeric_limits<double>::epsilon();
    const double trace = x.squaredNorm();  // trace(X^H X)
    // Jacobi scaling so the singularity test sees collinearity rather than
    // disparate column scales. Columns with no variance at the scale of the
    // design make the system singular outright.
    Vector<double> scale = Vector<double>::Ones(k);
    bool degenerate = false;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double g = std::real(gram(i, i));
      if (!(g > eps * trace)) {
        degenerate = true;
      } else {
        scale(i) = 1.0 / std::sqrt(g);
      }
    }
    const auto d = scale.cast<Scalar>().asDiagonal();
    Matrix<Scalar> scaled = d * gram * d;
    Eigen::PartialPivLU<Matrix<Scalar>> lu(scaled);
    const double rcond = lu.rcond();
    double lambda = 0.0;
    if (degenerate || !(rcond > eps)) {
      if (!options.ridge_fallback) {
        throw NumericalError("singular normal equations (rcond " +
                             std::to_string(rcond) + ")");
      }
      lambda = 1e-8 * trace / static_cast<double>(cols);
      gram.diagonal().array() += Scalar(lambda);
      scaled = d * gram * d;
      lu.compute(scaled);
    }
    const auto solve = [&](const Matrix<Scalar>& rhs) {
      return Matrix<Scalar>(d * lu.solve(Matrix<Scalar>(d * rhs)));
    };

    a = solve(xr.adjoint() * yr);
    double last = std::numeric_limits<double>::infinity();
    for (int step = 0; step < kRefinementSteps; ++step) {
      Matrix<Scalar> r = xr.adjoint() * (yr - xr * a);
      if (lambda > 0.0) r -= Scalar(lambda) * a;
      const Matrix<Scalar> delta = solve(r);
      const double size = delta.norm();
      if (!(size < last)) break;
      a += delta;
      last = size;
      if (size <= eps * a.norm()) break;
    }
  }

  if (!intercept) return a;
  Matrix<Scalar> out(cols, y.cols());
  out.row(0) = y_mean - (k > 0 ? RowVector<Scalar>(x_mean * a)
                               : RowVector<Scalar>::Zero(y.cols()));
  out.bottomRows(k) = a;
  return out;
}

template <typename Scalar>
VarParams<Scalar> var_fit(const Matrix<Scalar>& series, std::size_t p,
                          const OlsOptions& options) {
  if (p == 0) {
    throw std::invalid_argument("VAR lag order must be at least 1");
  }
  const auto n = static_cast<std::size_t>(series.rows());
  const auto dim = static_cast<std::size_t>(series.cols());
  if (n <= dim * p + 1) {
    throw InsufficientDataError(
        "insufficient history: " + std::to_string(n) +
        " observations, need more than " + std::to_string(dim * p + 1) +
        " for lag order " + std::to_string(p) + " in dimension " +
        std::to_string(dim));
  }
  const Matrix<Scalar> stacked = ols_fit(build_design(series, p), options);

  const auto l = static_cast<Eigen::Index>(dim);
  VarParams<Scalar> params;
  params.p = p;
  params.intercept = stacked.row(0).transpose();
  params.coeff.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    params.coeff.push_back(
        stacked.block(1 + static_cast<Eigen::Index>(i) * l, 0, l, l)
            .transpose());
  }
  return params;
}

template <typename Scalar>
Vector<Scalar> var_forecast_one(const VarParams<Scalar>& params,
                                const Matrix<Scalar>& history) {
  if (static_cast<std::size_t>(history.rows()) < params.p) {
    throw InsufficientDataError("VAR forecast needs " +
                                std::to_string(params.p) +
                                " history rows, got " +
                                std::to_string(history.rows()));
  }
  if (history.cols() != params.intercept.size()) {
    throw ShapeError("history dimension does not match the VAR dimension");
  }
  Vector<Scalar> out = params.intercept;
  const Eigen::Index last = history.rows() - 1;
  for (std::size_t i = 0; i < params.p; ++i) {
    out += params.coeff[i] *
           history.row(last - static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

template <typename Scalar>
double companion_spectral_radius(const VarParams<Scalar>& params) {
  const auto l = static_cast<Eigen::Index>(params.dim());
  const auto p = static_cast<Eigen::Index>(params.p);
  Matrix<Scalar> companion = Matrix<Scalar>::Zero(l * p, l * p);
  for (Eigen::Index i = 0; i < p; ++i) {
    companion.block(0, i * l, l, l) = params.coeff[static_cast<std::size_t>(i)];
  }
  if (p > 1) {
    companion.block(l, 0, l * (p - 1), l * (p - 1)).setIdentity();
  }
  if constexpr (std::is_same_v<Scalar, double>) {
    Eigen::EigenSolver<Matrix<double>> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  } else {
    Eigen::ComplexEigenSolver<Matrix<Complex>> solver(companion, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
}

template DesignPair<double> build_design(const Matrix<double>&, std::size_t);
template DesignPair<Complex> build_design(const Matrix<Complex>&, std::size_t);
template Matrix<double> ols_fit(const DesignPair<double>&, const OlsOptions&);
template Matrix<Complex> ols_fit(const DesignPair<Complex>&,
                                 const OlsOptions&);
template VarParams<double> var_fit(const Matrix<double>&, std::size_t,
                                   const OlsOptions&);
template VarParams<Complex> var_fit(const Matrix<Complex>&, std::size_t,
                                    const OlsOptions&);
template Vector<double> var_forecast_one(const VarParams<double>&,
                                         const Matrix<double>&);
template Vector<Complex> var_forecast_one(const VarParams<Complex>&,
                                          const Matrix<Complex>&);
template double companion_spectral_radius(const VarParams<double>&);
template double companion_spectral_radius(const VarParams<Complex>&);

}  // namespace ltar
