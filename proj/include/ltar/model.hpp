#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ltar/differencing.hpp"
#include "ltar/tensor.hpp"
#include "ltar/transforms.hpp"

namespace ltar {

/// Order in which the two differences are applied when both are requested.
/// The operators commute, so this only changes which anchor is stored first.
enum class DifferenceOrder { SeasonalThenLag, LagThenSeasonal };

enum class ForecastMode { SingleStep, MultiStep };

std::string_view to_string(DifferenceOrder order) noexcept;
DifferenceOrder parse_difference_order(std::string_view name);
std::string_view to_string(ForecastMode mode) noexcept;
ForecastMode parse_forecast_mode(std::string_view name);

/// Tensor autoregression
///   Y_t = C + A_1 * Y_{t-1} + ... + A_p * Y_{t-p} + E_t
/// where * is the L-product under `transform`, optionally fitted on a series
/// lag-differenced d times and/or seasonally differenced with period s.
struct LtarModel {
  std::size_t p = 0;
  std::size_t d = 0;
  std::size_t s = 0;
  TransformKind transform = TransformKind::Dct;
  DifferenceOrder difference_order = DifferenceOrder::SeasonalThenLag;
  std::vector<Tensor3> A;  // p tensors, ell x ell x m
  Tensor3 C;               // ell x 1 x m
  /// Differencing states from training, in application order. Their anchors
  /// are the training tails needed to integrate forecasts back.
  std::vector<DifferencingState> retained_tails;
  /// Largest transform-domain companion spectral radius over all slices, when
  /// it was computed at fit time.
  std::optional<double> spectral_radius;

  std::size_t ell() const noexcept { return C.rows(); }
  std::size_t depth() const noexcept { return C.depth(); }
  /// Original-domain observations needed to produce one forecast.
  std::size_t required_history() const noexcept { return p + d + s; }
  bool possibly_unstable() const noexcept {
    return spectral_radius.has_value() && *spectral_radius >= 1.0;
  }

  /// Throws std::invalid_argument / ShapeError when the invariants fail.
  void validate() const;
};

struct FitOptions {
  unsigned workers = 1;
  bool ridge_fallback = true;
  /// Companion spectral radii are computed only when ell * p is at most
  /// this (the eigenproblem is cubic in ell * p).
  std::size_t stability_check_limit = 256;
};

/// Transform every observation, fit one VAR(p) per frontal slice of the
/// transformed series, collect the slice coefficients and invert the
/// transform. Requires n > ell * p + 1.
LtarModel ltar_fit(const TensorSeries& series, std::size_t p,
                   TransformKind transform, const FitOptions& options = {});

/// Applies the requested differences, fits on the result and records the
/// differencing state in the model. d = s = 0 is plain ltar_fit.
LtarModel fit_with_differencing(
    const TensorSeries& series, std::size_t p, std::size_t d, std::size_t s,
    TransformKind transform,
    DifferenceOrder order = DifferenceOrder::SeasonalThenLag,
    const FitOptions& options = {});

/// Series after the requested differences, with states in application order.
std::pair<TensorSeries, std::vector<DifferencingState>> apply_differencing(
    const TensorSeries& series, std::size_t d, std::size_t s,
    DifferenceOrder order);

/// Undo apply_differencing for values following the anchors.
TensorSeries invert_differencing(const TensorSeries& diffed,
                                 const std::vector<DifferencingState>& states);

/// C + sum_i A_i * Y_{t-i} via explicit L-products. `history` holds at least
/// p observations, newest last. Differencing is not applied.
Tensor3 ltar_predict_one(const LtarModel& model,
                         std::span<const Tensor3> history);

struct ForecastResult {
  TensorSeries forecasts;
  /// ||Y_t - Yhat_t||_F per step; empty unless truth was supplied.
  std::vector<double> errors;
};

/// Forecasts `steps` observations following `history`.
///
/// MultiStep feeds each forecast back into the lag window. SingleStep
/// conditions every step on the true observations (history followed by
/// `truth`), which must then cover the horizon; differences are inverted with
/// true values as well. For d > 0 or s > 0 forecasting runs on the
/// differenced series and is integrated back before returning.
ForecastResult forecast(const LtarModel& model, const TensorSeries& history,
                        std::size_t steps, ForecastMode mode,
                        const std::optional<TensorSeries>& truth = {});

struct Noise {
  enum class Kind { None, Uniform };
  Kind kind = Kind::None;
  double low = 0.0;
  double high = 0.0;

  static Noise none() { return {}; }
  static Noise uniform(double low, double high) {
    return {Kind::Uniform, low, high};
  }
};

/// Iterates the model from p initial observations drawn i.i.d. U(-1, 1),
/// adding i.i.d. entrywise noise. With noise, the first max(10 p, 100)
/// steps are discarded as burn-in; without noise the transient is kept so
/// the series still carries information about the parameters.
TensorSeries simulate_ltar(const LtarModel& model, std::size_t n, Noise noise,
                           std::uint64_t seed);

}  // namespace ltar
