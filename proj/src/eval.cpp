#include "ltar/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "ltar/io.hpp"

namespace ltar {

namespace {

double mean(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

bool same_coefficients(const LtarModel& a, const LtarModel& b) {
  return a.A == b.A && a.C == b.C;
}

template <typename F>
double time_seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                 : 0.5 * (values[mid - 1] + values[mid]);
}

EvalReport make_eval_report(ForecastMode mode, std::vector<double> errors) {
  EvalReport report;
  report.mode = mode;
  report.horizon = errors.size();
  if (!errors.empty()) {
    report.mean_error = mean(errors);
    report.max_error = *std::max_element(errors.begin(), errors.end());
    report.final_error = errors.back();
  }
  report.errors = std::move(errors);
  return report;
}

EvalReport evaluate(const LtarModel& model, const TensorSeries& train,
                    const TensorSeries& test, ForecastMode mode) {
  const ForecastResult result = forecast(model, train, test.size(), mode, test);
  return make_eval_report(mode, result.errors);
}

BenchReport bench_fit(const TensorSeries& series, std::size_t p,
                      TransformKind transform, unsigned workers,
                      std::size_t trials) {
  if (trials == 0) {
    throw std::invalid_argument("benchmark needs at least one trial");
  }
  if (workers == 0) {
    throw std::invalid_argument("benchmark needs at least one worker");
  }
  BenchReport report;
  report.ell = series.ell();
  report.depth = series.depth();
  report.n = series.size();
  report.p = p;
  report.parallel_workers = workers;

  std::vector<double> sequential;
  std::vector<double> parallel;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    LtarModel reference;
    LtarModel candidate;
    const double t1 = time_seconds(
        [&] { reference = ltar_fit(series, p, transform, FitOptions{1}); });
    const double tw = time_seconds([&] {
      candidate = ltar_fit(series, p, transform, FitOptions{workers});
    });
    sequential.push_back(t1);
    parallel.push_back(tw);
    report.samples.push_back({1, trial, t1});
    report.samples.push_back({workers, trial, tw});
    report.identical_coefficients =
        report.identical_coefficients && same_coefficients(reference, candidate);
  }
  report.sequential_mean = mean(sequential);
  report.parallel_mean = mean(parallel);
  report.sequential_median = median(sequential);
  report.parallel_median = median(parallel);
  report.speedup = report.sequential_mean / report.parallel_mean;
  return report;
}

std::vector<ScalingPoint> scaling_probe(std::span<const std::size_t> lengths,
                                        const ScalingConfig& config) {
  if (lengths.size() < 4) {
    throw std::invalid_argument(
        "scaling schedule needs at least 4 series lengths");
  }
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  if (*lo == 0 || *hi < 8 * *lo) {
    throw std::invalid_argument(
        "scaling schedule must span at least a factor of 8 in n");
  }
  if (config.trials == 0) {
    throw std::invalid_argument("scaling probe needs at least one trial");
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Tensor3> all;
  all.reserve(*hi);
  for (std::size_t j = 0; j < *hi; ++j) {
    std::vector<double> data(config.ell * config.depth);
    for (auto& v : data) {
      v = dist(rng);
    }
    all.emplace_back(config.ell, 1, config.depth, std::move(data));
  }
  const TensorSeries full(std::move(all));

  FitOptions options;
  if (!config.stability_diagnostic) {
    options.stability_check_limit = 0;
  }
  std::vector<std::vector<double>> times(lengths.size());
  // Interleave lengths within each trial round.
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      const TensorSeries series = full.head(lengths[i]);
      times[i].push_back(time_seconds(
          [&] { (void)ltar_fit(series, config.p, config.transform, options); }));
    }
  }
  std::vector<ScalingPoint> points;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    points.push_back({lengths[i], mean(times[i]), median(times[i])});
  }
  return points;
}

double loglog_slope(std::span<const ScalingPoint> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("slope needs at least two points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& pt : points) {
    const double x = std::log(static_cast<double>(pt.n));
    const double y = std::log(pt.median_seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto k = static_cast<double>(points.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void write_eval_csv(std::ostream& out, const EvalReport& report) {
  out << "step,error\n";
  for (std::size_t t = 0; t < report.errors.size(); ++t) {
    out << (t + 1) << ',' << format_double(report.errors[t]) << '\n';
  }
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "workers,trial,seconds\n";
  for (const auto& s : report.samples) {
    out << s.workers << ',' << s.trial << ',' << format_double(s.seconds)
        << '\n';
  }
}

void write_scaling_csv(std::ostream& out,
                       std::span<const ScalingPoint> points) {
  out << "n,seconds\n";
  for (const auto& pt : points) {
    out << pt.n << ',' << format_double(pt.mean_seconds) << '\n';
  }
}

}  // namespace ltar
