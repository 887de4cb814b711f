#include "ltar/tensor.hpp"

namespace ltar {

CTensor3 to_complex(const Tensor3& t) {
  std::vector<Complex> data(t.data().begin(), t.data().end());
  return {t.rows(), t.cols(), t.depth(), std::move(data)};
}

Tensor3 real_part(const CTensor3& t) {
  std::vector<double> data(t.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    data[n] = t.data()[n].real();
  }
  return {t.rows(), t.cols(), t.depth(), std::move(data)};
}

Tensor3 imag_part(const CTensor3& t) {
  std::vector<double> data(t.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    data[n] = t.data()[n].imag();
  }
  return {t.rows(), t.cols(), t.depth(), std::move(data)};
}

TensorSeries::TensorSeries(std::vector<Tensor3> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) {
    throw InsufficientDataError("a tensor series needs at least one observation");
  }
  const auto& first = observations_.front();
  if (first.cols() != 1) {
    throw ShapeError("series observations must have exactly one column, got " +
                     first.shape());
  }
  for (const auto& obs : observations_) {
    if (!obs.same_shape(first)) {
      throw ShapeError("series observations disagree in shape: " +
                       first.shape() + " vs " + obs.shape());
    }
  }
}

TensorSeries TensorSeries::slice(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > size()) {
    throw std::out_of_range("series slice [" + std::to_string(first) + ", " +
                            std::to_string(first + count) +
                            ") out of range for length " +
                            std::to_string(size()));
  }
  const auto begin = observations_.begin() + static_cast<std::ptrdiff_t>(first);
  return TensorSeries(
      std::vector<Tensor3>(begin, begin + static_cast<std::ptrdiff_t>(count)));
}

TensorSeries concat(const TensorSeries& a, const TensorSeries& b) {
  std::vector<Tensor3> all = a.observations();
  all.insert(all.end(), b.begin(), b.end());
  return TensorSeries(std::move(all));
}

}  // namespace ltar
