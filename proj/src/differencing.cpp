#include "ltar/differencing.hpp"

#include <stdexcept>
#include <string>

namespace ltar {

namespace {

std::vector<Tensor3> first_difference(const std::vector<Tensor3>& xs) {
  std::vector<Tensor3> out;
  out.reserve(xs.size() - 1);
  for (std::size_t j = 1; j < xs.size(); ++j) {
    out.push_back(xs[j] - xs[j - 1]);
  }
  return out;
}

std::vector<Tensor3> last(const TensorSeries& series, std::size_t count) {
  return {series.end() - static_cast<std::ptrdiff_t>(count), series.end()};
}

void check_anchor(const TensorSeries& diffed, const DifferencingState& state,
                  DifferenceKind expected) {
  if (state.kind != expected) {
    throw std::invalid_argument(std::string("expected a ") +
                                std::string(to_string(expected)) +
                                " differencing state, got " +
                                std::string(to_string(state.kind)));
  }
  if (state.order == 0 || state.anchor.size() != state.order) {
    throw std::invalid_argument("differencing state anchor holds " +
                                std::to_string(state.anchor.size()) +
                                " observations, expected " +
                                std::to_string(state.order));
  }
  for (const auto& a : state.anchor) {
    if (!a.same_shape(diffed[0])) {
      throw ShapeError("differencing anchor shape " + a.shape() +
                       " does not match series shape " + diffed[0].shape());
    }
  }
}

}  // namespace

std::string_view to_string(DifferenceKind kind) noexcept {
  return kind == DifferenceKind::Lag ? "lag" : "seasonal";
}

DifferenceKind parse_difference_kind(std::string_view name) {
  if (name == "lag") return DifferenceKind::Lag;
  if (name == "seasonal") return DifferenceKind::Seasonal;
  throw std::invalid_argument("unknown difference kind '" + std::string(name) +
                              "'");
}

std::pair<TensorSeries, DifferencingState> lag_difference(
    const TensorSeries& series, std::size_t d) {
  if (d == 0) {
    throw std::invalid_argument("lag difference order must be at least 1");
  }
  if (series.size() <= d) {
    throw InsufficientDataError(
        "lag difference of order " + std::to_string(d) + " needs more than " +
        std::to_string(d) + " observations, got " +
        std::to_string(series.size()));
  }
  std::vector<Tensor3> xs = series.observations();
  for (std::size_t pass = 0; pass < d; ++pass) {
    xs = first_difference(xs);
  }
  return {TensorSeries(std::move(xs)),
          DifferencingState{DifferenceKind::Lag, d, last(series, d)}};
}

TensorSeries invert_lag_difference(const TensorSeries& diffed,
                                   const DifferencingState& state) {
  check_anchor(diffed, state, DifferenceKind::Lag);
  const std::size_t d = state.order;

  // levels[j] = j-th difference of the anchor, taken at its newest position.
  std::vector<Tensor3> levels;
  levels.reserve(d);
  std::vector<Tensor3> current = state.anchor;
  for (std::size_t j = 0; j < d; ++j) {
    levels.push_back(current.back());
    if (j + 1 < d) {
      current = first_difference(current);
    }
  }

  std::vector<Tensor3> out;
  out.reserve(diffed.size());
  for (const auto& v : diffed) {
    levels[d - 1] = levels[d - 1] + v;
    for (std::size_t j = d - 1; j-- > 0;) {
      levels[j] = levels[j] + levels[j + 1];
    }
    out.push_back(levels[0]);
  }
  return TensorSeries(std::move(out));
}

std::pair<TensorSeries, DifferencingState> seasonal_difference(
    const TensorSeries& series, std::size_t s) {
  if (s <= 1 || s >= series.size()) {
    throw InsufficientDataError(
        "seasonal period must satisfy 1 < s < n; got s=" + std::to_string(s) +
        " with n=" + std::to_string(series.size()));
  }
  std::vector<Tensor3> out;
  out.reserve(series.size() - s);
  for (std::size_t j = s; j < series.size(); ++j) {
    out.push_back(series[j] - series[j - s]);
  }
  return {TensorSeries(std::move(out)),
          DifferencingState{DifferenceKind::Seasonal, s, last(series, s)}};
}

TensorSeries invert_seasonal_difference(const TensorSeries& diffed,
                                        const DifferencingState& state) {
  check_anchor(diffed, state, DifferenceKind::Seasonal);
  const std::size_t s = state.order;
  std::vector<Tensor3> all = state.anchor;
  all.reserve(s + diffed.size());
  for (const auto& v : diffed) {
    all.push_back(v + all[all.size() - s]);
  }
  return TensorSeries(
      std::vector<Tensor3>(all.begin() + static_cast<std::ptrdiff_t>(s),
                           all.end()));
}

TensorSeries invert_difference(const TensorSeries& diffed,
                               const DifferencingState& state) {
  return state.kind == DifferenceKind::Lag
             ? invert_lag_difference(diffed, state)
             : invert_seasonal_difference(diffed, state);
}

}  // namespace ltar
