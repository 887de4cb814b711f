#include "ltar/datagen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ltar {

LtarModel ground_truth_theta(TransformKind transform) {
  const std::vector<double> diagonal = {-0.2, 0.2, -0.2};
  std::vector<Matrix<double>> slices;
  for (const double v : diagonal) {
    slices.push_back(v * Matrix<double>::Identity(3, 3));
  }
  LtarModel model;
  model.p = 1;
  model.transform = transform;
  model.A.push_back(collect(slices));
  model.C = Tensor3(3, 1, 3, std::vector<double>(9, 0.1));
  return model;
}

TensorSeries gen_ltar1_series(std::size_t n, std::uint64_t seed,
                              TransformKind transform) {
  return simulate_ltar(ground_truth_theta(transform), n,
                       Noise::uniform(-1.0, 1.0), seed);
}

void GraphGenConfig::validate() const {
  if (nodes < 4 || nodes % 2 != 0) {
    throw std::invalid_argument("graph node count must be even and at least 4");
  }
  if (!(edge_period > 0.0) || !(community_period > 0.0)) {
    throw std::invalid_argument("graph periods must be positive");
  }
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("graph noise sigma must be non-negative");
  }
  if (n == 0) {
    throw std::invalid_argument("graph series length must be positive");
  }
}

TensorSeries gen_graph_series(const GraphGenConfig& cfg) {
  cfg.validate();
  const std::size_t v = cfg.nodes;
  const std::size_t half = v / 2;
  const double two_pi = 2.0 * std::numbers::pi;
  const double w1 = two_pi / cfg.edge_period;
  const double w2 = two_pi / cfg.community_period;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> shift_dist(0.0, two_pi);
  std::normal_distribution<double> unit_normal(0.0, 1.0);

  std::vector<double> shift(v * v, 0.0);
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = a + 1; b < v; ++b) {
      shift[a * v + b] = shift_dist(rng);
      shift[b * v + a] = shift[a * v + b];
    }
  }

  std::vector<Tensor3> out;
  out.reserve(cfg.n);
  for (std::size_t step = 0; step < cfg.n; ++step) {
    const auto x = static_cast<double>(step);
    const double community = (1.0 + std::cos(x * w2)) / 2.0;
    // Tensor (a, 0, b) lives at b * v + a.
    std::vector<double> data(v * v, 0.0);
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = a + 1; b < v; ++b) {
        const double edge = (1.0 + std::sin(x * w1 + shift[a * v + b])) / 2.0;
        const bool same_block = (a < half) == (b < half);
        const double value = (same_block ? edge : community * edge) +
                             cfg.sigma * unit_normal(rng);
        data[b * v + a] = value;
        data[a * v + b] = value;
      }
    }
    out.emplace_back(v, 1, v, std::move(data));
  }
  return TensorSeries(std::move(out));
}

}  // namespace ltar
