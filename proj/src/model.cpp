#include "ltar/model.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "ltar/parallel.hpp"
#include "ltar/var.hpp"

namespace ltar {

namespace {

/// Per-slice VAR fits on transformed observations (each ell x m, column k =
/// slice k), collected back into transform-domain tensors.
template <typename Scalar>
struct TransformDomainFit {
  std::vector<BasicTensor3<Scalar>> A;
  BasicTensor3<Scalar> C;
  std::optional<double> spectral_radius;
};

template <typename Scalar>
TransformDomainFit<Scalar> fit_slices(const std::vector<Matrix<Scalar>>& obs,
                                      std::size_t p,
                                      const FitOptions& options) {
  const auto n = static_cast<Eigen::Index>(obs.size());
  const Eigen::Index l = obs.front().rows();
  const auto m = static_cast<std::size_t>(obs.front().cols());
  const bool check_stability =
      static_cast<std::size_t>(l) * p <= options.stability_check_limit;

  // Complex slices come from the DFT of real data, where slice m - k is the
  // conjugate of slice k; only the first half is fitted and the rest mirrored
  // so the fitted model stays exactly real.
  constexpr bool kMirror = std::is_same_v<Scalar, Complex>;
  const std::size_t fitted = kMirror ? m / 2 + 1 : m;

  std::vector<VarParams<Scalar>> fits(m);
  std::vector<double> radii(m, 0.0);
  parallel_for(fitted, options.workers, [&](std::size_t k) {
    Matrix<Scalar> series(n, l);
    for (Eigen::Index j = 0; j < n; ++j) {
      series.row(j) =
          obs[static_cast<std::size_t>(j)].col(static_cast<Eigen::Index>(k))
              .transpose();
    }
    fits[k] = var_fit(series, p, OlsOptions{options.ridge_fallback});
    if (check_stability) {
      radii[k] = companion_spectral_radius(fits[k]);
    }
  });
  for (std::size_t k = fitted; k < m; ++k) {
    const VarParams<Scalar>& twin = fits[m - k];
    fits[k].p = twin.p;
    fits[k].intercept = twin.intercept.conjugate();
    for (const auto& a : twin.coeff) {
      fits[k].coeff.push_back(a.conjugate());
    }
    radii[k] = radii[m - k];
  }

  TransformDomainFit<Scalar> out;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<Matrix<Scalar>> slices;
    slices.reserve(m);
    for (const auto& f : fits) {
      slices.push_back(f.coeff[i]);
    }
    out.A.push_back(collect(slices));
  }
  std::vector<Matrix<Scalar>> intercepts;
  intercepts.reserve(m);
  for (const auto& f : fits) {
    intercepts.push_back(f.intercept);
  }
  out.C = collect(intercepts);
  if (check_stability) {
    out.spectral_radius = *std::max_element(radii.begin(), radii.end());
  }
  return out;
}

Tensor3 to_real(const Tensor3& t, TransformKind kind) {
  return l_inverse_real(t, kind);
}

Tensor3 to_real(const CTensor3& t, TransformKind kind) {
  return l_inverse(t, kind);
}

template <typename Scalar>
void assemble(LtarModel& model, const TransformDomainFit<Scalar>& fit) {
  model.A.clear();
  for (const auto& a : fit.A) {
    model.A.push_back(to_real(a, model.transform));
  }
  model.C = to_real(fit.C, model.transform);
  model.spectral_radius = fit.spectral_radius;
}

/// Evaluates the model slice by slice in the transform domain. Observations
/// are carried as ell x m matrices whose column k is frontal slice k.
class Predictor {
 public:
  explicit Predictor(const LtarModel& model)
      : transform_(model.transform, model.depth()),
        ell_(model.ell()),
        p_(model.p) {
    const auto m = static_cast<Eigen::Index>(model.depth());
    coeff_.resize(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k) {
      coeff_[static_cast<std::size_t>(k)].reserve(p_);
    }
    for (const auto& a : model.A) {
      // Tube view of an ell x ell x m tensor: row i * ell + j is tube (i, j).
      const Matrix<Complex> tubes =
          transform_.forward(Matrix<Complex>(to_complex(a).tube_view()));
      for (Eigen::Index k = 0; k < m; ++k) {
        Matrix<Complex> slice(static_cast<Eigen::Index>(ell_),
                              static_cast<Eigen::Index>(ell_));
        for (Eigen::Index i = 0; i < slice.rows(); ++i) {
          for (Eigen::Index j = 0; j < slice.cols(); ++j) {
            slice(i, j) = tubes(i * slice.cols() + j, k);
          }
        }
        coeff_[static_cast<std::size_t>(k)].push_back(std::move(slice));
      }
    }
    intercept_ = to_domain(model.C);
  }

  Matrix<Complex> to_domain(const Tensor3& obs) const {
    return transform_.forward(Matrix<Complex>(to_complex(obs).tube_view()));
  }

  Tensor3 from_domain(const Matrix<Complex>& tilde) const {
    return l_inverse(CTensor3::from_tubes(ell_, 1, tilde), transform_.kind());
  }

  /// `window` holds at least p transformed observations, newest last.
  Matrix<Complex> predict(std::span<const Matrix<Complex>> window) const {
    Matrix<Complex> out = intercept_;
    for (Eigen::Index k = 0; k < out.cols(); ++k) {
      const auto& a = coeff_[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < p_; ++i) {
        out.col(k) += a[i] * window[window.size() - 1 - i].col(k);
      }
    }
    return out;
  }

 private:
  TubeTransform transform_;
  std::size_t ell_;
  std::size_t p_;
  std::vector<std::vector<Matrix<Complex>>> coeff_;  // [slice][lag]
  Matrix<Complex> intercept_;
};

void check_series_matches(const LtarModel& model, const TensorSeries& series,
                          const char* what) {
  if (series.ell() != model.ell() || series.depth() != model.depth()) {
    throw ShapeError(std::string(what) + " observations are " +
                     series[0].shape() + " but the model expects " +
                     std::to_string(model.ell()) + "x1x" +
                     std::to_string(model.depth()));
  }
}

/// Multi-step forecast from a window of exactly required_history()
/// original-domain observations.
std::vector<Tensor3> multi_step(const LtarModel& model,
                                const Predictor& predictor,
                                const TensorSeries& window,
                                std::size_t steps) {
  auto [diffed, states] =
      apply_differencing(window, model.d, model.s, model.difference_order);
  std::vector<Matrix<Complex>> lags;
  lags.reserve(diffed.size() + steps);
  for (const auto& obs : diffed) {
    lags.push_back(predictor.to_domain(obs));
  }
  std::vector<Tensor3> out;
  out.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Tensor3 next = predictor.from_domain(predictor.predict(lags));
    lags.push_back(predictor.to_domain(next));
    out.push_back(std::move(next));
  }
  if (states.empty()) {
    return out;
  }
  return invert_differencing(TensorSeries(std::move(out)), states)
      .observations();
}

}  // namespace

std::string_view to_string(DifferenceOrder order) noexcept {
  return order == DifferenceOrder::SeasonalThenLag ? "seasonal-then-lag"
                                                   : "lag-then-seasonal";
}

DifferenceOrder parse_difference_order(std::string_view name) {
  if (name == "seasonal-then-lag") return DifferenceOrder::SeasonalThenLag;
  if (name == "lag-then-seasonal") return DifferenceOrder::LagThenSeasonal;
  throw std::invalid_argument(
      "unknown difference order '" + std::string(name) +
      "' (expected seasonal-then-lag or lag-then-seasonal)");
}

std::string_view to_string(ForecastMode mode) noexcept {
  return mode == ForecastMode::SingleStep ? "single" : "multi";
}

ForecastMode parse_forecast_mode(std::string_view name) {
  if (name == "single" || name == "single-step") return ForecastMode::SingleStep;
  if (name == "multi" || name == "multi-step") return ForecastMode::MultiStep;
  throw std::invalid_argument("unknown forecast mode '" + std::string(name) +
                              "' (expected single or multi)");
}

void LtarModel::validate() const {
  if (p == 0) {
    throw std::invalid_argument("model lag order p must be at least 1");
  }
  if (A.size() != p) {
    throw ShapeError("model has " + std::to_string(A.size()) +
                     " coefficient tensors for p=" + std::to_string(p));
  }
  if (C.empty() || C.cols() != 1) {
    throw ShapeError("model intercept must be ell x 1 x m");
  }
  for (const auto& a : A) {
    if (a.rows() != C.rows() || a.cols() != C.rows() ||
        a.depth() != C.depth()) {
      throw ShapeError("coefficient tensor " + a.shape() +
                       " inconsistent with intercept " + C.shape());
    }
  }
  if (s == 1) {
    throw std::invalid_argument("seasonal period must be 0 or greater than 1");
  }
  std::size_t expected = (d > 0 ? 1 : 0) + (s > 0 ? 1 : 0);
  if (!retained_tails.empty() && retained_tails.size() != expected) {
    throw std::invalid_argument("model carries " +
                                std::to_string(retained_tails.size()) +
                                " differencing states, expected " +
                                std::to_string(expected));
  }
}

std::pair<TensorSeries, std::vector<DifferencingState>> apply_differencing(
    const TensorSeries& series, std::size_t d, std::size_t s,
    DifferenceOrder order) {
  TensorSeries current = series;
  std::vector<DifferencingState> states;
  auto seasonal = [&] {
    if (s > 0) {
      auto [next, state] = seasonal_difference(current, s);
      current = std::move(next);
      states.push_back(std::move(state));
    }
  };
  auto lag = [&] {
    if (d > 0) {
      auto [next, state] = lag_difference(current, d);
      current = std::move(next);
      states.push_back(std::move(state));
    }
  };
  if (order == DifferenceOrder::SeasonalThenLag) {
    seasonal();
    lag();
  } else {
    lag();
    seasonal();
  }
  return {std::move(current), std::move(states)};
}

TensorSeries invert_differencing(const TensorSeries& diffed,
                                 const std::vector<DifferencingState>& states) {
  TensorSeries current = diffed;
  for (auto it = states.rbegin(); it != states.rend(); ++it) {
    current = invert_difference(current, *it);
  }
  return current;
}

LtarModel ltar_fit(const TensorSeries& series, std::size_t p,
                   TransformKind transform, const FitOptions& options) {
  if (p == 0) {
    throw std::invalid_argument("lag order p must be at least 1");
  }
  const std::size_t n = series.size();
  const std::size_t l = series.ell();
  if (n <= l * p + 1) {
    throw InsufficientDataError(
        "insufficient history: " + std::to_string(n) +
        " observations, need more than " + std::to_string(l * p + 1) +
        " for p=" + std::to_string(p) + " with ell=" + std::to_string(l));
  }

  LtarModel model;
  model.p = p;
  model.transform = transform;

  const TubeTransform tr(transform, series.depth());
  if (is_complex_domain(transform)) {
    std::vector<Matrix<Complex>> obs;
    obs.reserve(n);
    for (const auto& y : series) {
      obs.push_back(tr.forward(Matrix<Complex>(to_complex(y).tube_view())));
    }
    assemble(model, fit_slices(obs, p, options));
  } else {
    std::vector<Matrix<double>> obs;
    obs.reserve(n);
    for (const auto& y : series) {
      obs.push_back(tr.forward(Matrix<double>(y.tube_view())));
    }
    assemble(model, fit_slices(obs, p, options));
  }
  return model;
}

LtarModel fit_with_differencing(const TensorSeries& series, std::size_t p,
                                std::size_t d, std::size_t s,
                                TransformKind transform, DifferenceOrder order,
                                const FitOptions& options) {
  if (s == 1) {
    throw std::invalid_argument(
        "seasonal period must be 0 (none) or greater than 1");
  }
  const std::size_t n = series.size();
  if (n <= s + d + series.ell() * p + 1) {
    throw InsufficientDataError(
        "insufficient history after differencing: " + std::to_string(n) +
        " observations, need more than " +
        std::to_string(s + d + series.ell() * p + 1));
  }
  auto [diffed, states] = apply_differencing(series, d, s, order);
  LtarModel model = ltar_fit(diffed, p, transform, options);
  model.d = d;
  model.s = s;
  model.difference_order = order;
  model.retained_tails = std::move(states);
  return model;
}

Tensor3 ltar_predict_one(const LtarModel& model,
                         std::span<const Tensor3> history) {
  model.validate();
  if (history.size() < model.p) {
    throw InsufficientDataError("prediction needs " + std::to_string(model.p) +
                                " observations, got " +
                                std::to_string(history.size()));
  }
  Tensor3 out = model.C;
  for (std::size_t i = 0; i < model.p; ++i) {
    const Tensor3& y = history[history.size() - 1 - i];
    if (!y.same_shape(model.C)) {
      throw ShapeError("history observation " + y.shape() +
                       " does not match model shape " + model.C.shape());
    }
    out = out + l_product(model.A[i], y, model.transform);
  }
  return out;
}

ForecastResult forecast(const LtarModel& model, const TensorSeries& history,
                        std::size_t steps, ForecastMode mode,
                        const std::optional<TensorSeries>& truth) {
  model.validate();
  if (steps < 1) {
    throw std::invalid_argument("forecast horizon must be at least 1");
  }
  check_series_matches(model, history, "history");
  if (truth) {
    check_series_matches(model, *truth, "truth");
  }
  const std::size_t need = model.required_history();
  if (history.size() < need) {
    throw InsufficientDataError(
        "forecasting needs " + std::to_string(need) +
        " history observations (p + d + s), got " +
        std::to_string(history.size()));
  }
  if (mode == ForecastMode::SingleStep && (!truth || truth->size() < steps)) {
    throw std::invalid_argument(
        "single-step forecasting needs true observations covering all " +
        std::to_string(steps) + " steps");
  }

  const Predictor predictor(model);
  std::vector<Tensor3> out;
  if (mode == ForecastMode::MultiStep) {
    out = multi_step(model, predictor, history.tail(need), steps);
  } else {
    std::vector<Tensor3> known(history.end() - static_cast<std::ptrdiff_t>(need),
                               history.end());
    out.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      const TensorSeries window(std::vector<Tensor3>(
          known.end() - static_cast<std::ptrdiff_t>(need), known.end()));
      out.push_back(multi_step(model, predictor, window, 1).front());
      known.push_back((*truth)[t]);
    }
  }

  ForecastResult result{TensorSeries(std::move(out)), {}};
  if (truth) {
    const std::size_t horizon = std::min(steps, truth->size());
    result.errors.reserve(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
      result.errors.push_back(frob_norm((*truth)[t] - result.forecasts[t]));
    }
  }
  return result;
}

TensorSeries simulate_ltar(const LtarModel& model, std::size_t n, Noise noise,
                           std::uint64_t seed) {
  model.validate();
  if (model.d != 0 || model.s != 0) {
    throw std::invalid_argument(
        "simulation is defined for undifferenced models only");
  }
  if (n == 0) {
    throw std::invalid_argument("simulation length must be positive");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> init(-1.0, 1.0);
  std::uniform_real_distribution<double> eps(noise.low, noise.high);
  const std::size_t l = model.ell();
  const std::size_t m = model.depth();

  auto draw = [&](auto& dist) {
    std::vector<double> data(l * m);
    for (auto& v : data) {
      v = dist(rng);
    }
    return Tensor3(l, 1, m, std::move(data));
  };

  const Predictor predictor(model);
  std::vector<Matrix<Complex>> lags;
  for (std::size_t i = 0; i < model.p; ++i) {
    lags.push_back(predictor.to_domain(draw(init)));
  }
  const std::size_t burn_in =
      noise.kind == Noise::Kind::None ? 0 : std::max<std::size_t>(10 * model.p, 100);
  std::vector<Tensor3> out;
  out.reserve(n);
  for (std::size_t t = 0; t < burn_in + n; ++t) {
    Tensor3 next = predictor.from_domain(predictor.predict(lags));
    if (noise.kind == Noise::Kind::Uniform) {
      next = next + draw(eps);
    }
    lags.push_back(predictor.to_domain(next));
    if (lags.size() > 4 * model.p + 16) {
      lags.erase(lags.begin(),
                 lags.end() - static_cast<std::ptrdiff_t>(model.p));
    }
    if (t >= burn_in) {
      out.push_back(std::move(next));
    }
  }
  return TensorSeries(std::move(out));
}

}  // namespace ltar
