#pragma once

#include <cstddef>
#include <cstdint>

#include "ltar/model.hpp"

namespace ltar {

/// The 3x3x3 L-TAR(1) example model: A_1 slices diag(-0.2), diag(0.2),
/// diag(-0.2); every entry of C is 0.1.
LtarModel ground_truth_theta(TransformKind transform = TransformKind::Dct);

/// n observations of the example model with U(-1, 1) noise.
TensorSeries gen_ltar1_series(std::size_t n, std::uint64_t seed,
                              TransformKind transform = TransformKind::Dct);

/// Time-varying two-community weighted graph.
///
/// At time x the adjacency entry (a, b) is 0 on the diagonal,
///   (1 + sin(x w1 + S_ab)) / 2 + eps                      within a block,
///   (1 + cos(x w2)) / 2 * (1 + sin(x w1 + S_ab)) / 2 + eps  across blocks,
/// with w1 = 2 pi / edge_period, w2 = 2 pi / community_period, the two blocks
/// being the first and second half of the nodes, S_ab ~ U[0, 2 pi) symmetric,
/// and eps ~ N(0, sigma^2) drawn once per upper-triangle entry and mirrored.
struct GraphGenConfig {
  std::size_t nodes = 20;
  double edge_period = 50.0;
  double community_period = 200.0;
  double sigma = 0.02;
  std::uint64_t seed = 0;
  std::size_t n = 2000;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// One nodes x 1 x nodes tensor per time step; observation(a, 0, b) is the
/// weight of edge (a, b).
TensorSeries gen_graph_series(const GraphGenConfig& cfg);

}  // namespace ltar
