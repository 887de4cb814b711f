#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ltar/model.hpp"

namespace ltar {

/// Per-step Frobenius errors of one forecasting run.
struct EvalReport {
  ForecastMode mode = ForecastMode::MultiStep;
  std::size_t horizon = 0;
  std::vector<double> errors;
  double mean_error = 0.0;
  double max_error = 0.0;
  double final_error = 0.0;
};

EvalReport make_eval_report(ForecastMode mode, std::vector<double> errors);

/// Forecasts the whole test horizon following `train` and scores it.
EvalReport evaluate(const LtarModel& model, const TensorSeries& train,
                    const TensorSeries& test, ForecastMode mode);

struct BenchSample {
  unsigned workers = 1;
  std::size_t trial = 0;
  double seconds = 0.0;
};

struct BenchReport {
  std::size_t ell = 0;
  std::size_t depth = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  unsigned parallel_workers = 1;
  std::vector<BenchSample> samples;  // sequential and parallel, interleaved
  double sequential_mean = 0.0;
  double parallel_mean = 0.0;
  double sequential_median = 0.0;
  double parallel_median = 0.0;
  double speedup = 0.0;  // sequential_mean / parallel_mean
  /// Every parallel fit reproduced the sequential coefficients bit for bit.
  bool identical_coefficients = true;
};

/// Times ltar_fit with one worker and with `workers` workers, alternating
/// the two for `trials` rounds. Only the fit call is timed.
BenchReport bench_fit(const TensorSeries& series, std::size_t p,
                      TransformKind transform, unsigned workers,
                      std::size_t trials);

struct ScalingConfig {
  std::size_t ell = 10;
  std::size_t depth = 10;
  std::size_t p = 5;
  std::size_t trials = 5;
  TransformKind transform = TransformKind::Dct;
  std::uint64_t seed = 1;
  /// Include the companion spectral-radius diagnostic in the timed fit. Its
  /// cost is cubic in ell * p and constant in n, so it is off by default.
  bool stability_diagnostic = false;
};

struct ScalingPoint {
  std::size_t n = 0;
  double mean_seconds = 0.0;
  double median_seconds = 0.0;
};

/// Fit time against series length at fixed dimensions, on i.i.d. U(-1, 1)
/// data. The schedule needs at least 4 lengths spanning a factor of 8.
std::vector<ScalingPoint> scaling_probe(std::span<const std::size_t> lengths,
                                        const ScalingConfig& config);

/// Least-squares slope of log(median seconds) against log(n).
double loglog_slope(std::span<const ScalingPoint> points);

double median(std::vector<double> values);

// CSV emitters: header row, LF endings, 17 significant digits.
void write_eval_csv(std::ostream& out, const EvalReport& report);
void write_bench_csv(std::ostream& out, const BenchReport& report);
void write_scaling_csv(std::ostream& out, std::span<const ScalingPoint> points);

}  // namespace ltar
