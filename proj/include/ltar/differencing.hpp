#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "ltar/tensor.hpp"

namespace ltar {

enum class DifferenceKind { Lag, Seasonal };

std::string_view to_string(DifferenceKind kind) noexcept;
DifferenceKind parse_difference_kind(std::string_view name);

/// What is needed to undo a difference.
///
/// `anchor` holds the `order` observations (oldest first) that immediately
/// precede the first value to be reconstructed. For Lag, `order` is the
/// number of times the first difference was applied; for Seasonal it is the
/// period.
struct DifferencingState {
  DifferenceKind kind = DifferenceKind::Lag;
  std::size_t order = 0;
  std::vector<Tensor3> anchor;

  friend bool operator==(const DifferencingState&,
                         const DifferencingState&) = default;
};

/// Applies Y'_j = Y_j - Y_{j-1} `d` times (d >= 1, n > d). The returned state
/// anchors on the last d observations so forecasts can be integrated back.
std::pair<TensorSeries, DifferencingState> lag_difference(
    const TensorSeries& series, std::size_t d);

/// Cumulative-sum inversion: reconstructs the observations that follow the
/// anchor from their d-th differences.
TensorSeries invert_lag_difference(const TensorSeries& diffed,
                                   const DifferencingState& state);

/// Y'_j = Y_j - Y_{j-s} with 1 < s < n; anchors on the last s observations.
std::pair<TensorSeries, DifferencingState> seasonal_difference(
    const TensorSeries& series, std::size_t s);

/// Y_k = Y'_k + Y_{k-s}, starting from the anchor.
TensorSeries invert_seasonal_difference(const TensorSeries& diffed,
                                        const DifferencingState& state);

/// Dispatches on state.kind.
TensorSeries invert_difference(const TensorSeries& diffed,
                               const DifferencingState& state);

}  // namespace ltar
