#pragma once

#include <cstddef>
#include <vector>

#include "ltar/tensor.hpp"

namespace ltar {

/// VAR(p) parameters: y_t = c + A_1 y_{t-1} + ... + A_p y_{t-p}.
template <typename Scalar>
struct VarParams {
  std::size_t p = 0;
  std::vector<Matrix<Scalar>> coeff;  // A_1 .. A_p, each dim x dim
  Vector<Scalar> intercept;           // c

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(intercept.size());
  }
};

/// Regression pair for Y = X A + E.
///
/// Row t of `x` is (1, y_{t+p-1}^T, ..., y_t^T): an intercept column followed
/// by lag blocks, newest first. Row t of `y` is y_{t+p}^T.
template <typename Scalar>
struct DesignPair {
  Matrix<Scalar> y;  // (n - p) x dim
  Matrix<Scalar> x;  // (n - p) x (dim * p + 1)
};

struct OlsOptions {
  /// Add a small ridge to the lag part of the normal equations when they are
  /// numerically singular, instead of failing.
  bool ridge_fallback = true;
};

/// Design matrices from a series given as an n x dim matrix (one observation
/// per row, oldest first). Requires p >= 1 and n > p.
template <typename Scalar>
DesignPair<Scalar> build_design(const Matrix<Scalar>& series, std::size_t p);

/// Least-squares coefficients (dim * p + 1) x dim from the normal equations
/// X^H X A = X^H Y, solved by LU and polished with a few residual-correction
/// steps. A leading column of ones is treated as the intercept and eliminated
/// by centering. When the equations are numerically singular and the fallback
/// is enabled, lambda = 1e-8 * trace(X^H X) / cols is added to the diagonal
/// entries of the non-intercept columns. Throws InsufficientDataError when X
/// has fewer rows than columns and NumericalError when singular with the
/// fallback disabled.
template <typename Scalar>
Matrix<Scalar> ols_fit(const DesignPair<Scalar>& design,
                       const OlsOptions& options = {});

/// build_design + ols_fit + unpacking into (c, A_1..A_p).
/// Requires n > dim * p + 1.
template <typename Scalar>
VarParams<Scalar> var_fit(const Matrix<Scalar>& series, std::size_t p,
                          const OlsOptions& options = {});

/// c + sum_i A_i y_{t-i}; `history` holds at least p rows, newest last.
template <typename Scalar>
Vector<Scalar> var_forecast_one(const VarParams<Scalar>& params,
                                const Matrix<Scalar>& history);

/// Spectral radius of the VAR companion matrix.
template <typename Scalar>
double companion_spectral_radius(const VarParams<Scalar>& params);

extern template DesignPair<double> build_design(const Matrix<double>&,
                                                std::size_t);
extern template DesignPair<Complex> build_design(const Matrix<Complex>&,
                                                 std::size_t);
extern template Matrix<double> ols_fit(const DesignPair<double>&,
                                       const OlsOptions&);
extern template Matrix<Complex> ols_fit(const DesignPair<Complex>&,
                                        const OlsOptions&);
extern template VarParams<double> var_fit(const Matrix<double>&, std::size_t,
                                          const OlsOptions&);
extern template VarParams<Complex> var_fit(const Matrix<Complex>&,
                                           std::size_t, const OlsOptions&);
extern template Vector<double> var_forecast_one(const VarParams<double>&,
                                                const Matrix<double>&);
extern template Vector<Complex> var_forecast_one(const VarParams<Complex>&,
                                                 const Matrix<Complex>&);
extern template double companion_spectral_radius(const VarParams<double>&);
extern template double companion_spectral_radius(const VarParams<Complex>&);

}  // namespace ltar
