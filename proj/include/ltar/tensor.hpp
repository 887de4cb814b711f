#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ltar/errors.hpp"

namespace ltar {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;

/// Dense third-order array of shape rows x cols x depth.
///
/// Frontal slice k is the rows x cols matrix T[:, :, k]; tube (i, j) is the
/// length-depth vector T[i, j, :]. Entries are stored row-major within each
/// slice and slices are contiguous by depth, so element (i, j, k) lives at
/// k * rows * cols + i * cols + j. Seen as a column-major
/// (rows * cols) x depth matrix, every row of that view is one tube.
///
/// Values are immutable once constructed; all operations return new tensors.
template <typename Scalar>
class BasicTensor3 {
 public:
  using value_type = Scalar;

  /// Empty placeholder (0 x 0 x 0). Only useful as a target for assignment.
  BasicTensor3() = default;

  /// Zero tensor.
  BasicTensor3(std::size_t rows, std::size_t cols, std::size_t depth)
      : BasicTensor3(rows, cols, depth,
                     std::vector<Scalar>(checked_size(rows, cols, depth))) {}

  BasicTensor3(std::size_t rows, std::size_t cols, std::size_t depth,
               std::vector<Scalar> data)
      : rows_(rows), cols_(cols), depth_(depth), data_(std::move(data)) {
    if (data_.size() != checked_size(rows, cols, depth)) {
      throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                       " does not match " + shape_string(rows, cols, depth));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  const Scalar& operator()(std::size_t i, std::size_t j,
                           std::size_t k) const noexcept {
    return data_[k * rows_ * cols_ + i * cols_ + j];
  }

  const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= rows_ || j >= cols_ || k >= depth_) {
      throw std::out_of_range("tensor index out of range");
    }
    return (*this)(i, j, k);
  }

  std::span<const Scalar> data() const noexcept { return data_; }

  /// Tubes as rows of a (rows * cols) x depth column-major view.
  Eigen::Map<const Matrix<Scalar>> tube_view() const {
    return {data_.data(), static_cast<Eigen::Index>(rows_ * cols_),
            static_cast<Eigen::Index>(depth_)};
  }

  bool same_shape(const BasicTensor3& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           depth_ == other.depth_;
  }

  std::string shape() const { return shape_string(rows_, cols_, depth_); }

  friend bool operator==(const BasicTensor3&, const BasicTensor3&) = default;

  /// Builds a tensor from a (rows * cols) x depth matrix whose rows are tubes.
  template <typename Derived>
  static BasicTensor3 from_tubes(std::size_t rows, std::size_t cols,
                                 const Eigen::MatrixBase<Derived>& tubes) {
    if (static_cast<std::size_t>(tubes.rows()) != rows * cols) {
      throw ShapeError("tube matrix has wrong row count");
    }
    const auto depth = static_cast<std::size_t>(tubes.cols());
    std::vector<Scalar> data(rows * cols * depth);
    Eigen::Map<Matrix<Scalar>>(data.data(), tubes.rows(), tubes.cols()) =
        tubes;
    return {rows, cols, depth, std::move(data)};
  }

 private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols,
                                  std::size_t depth) {
    if (rows == 0 || cols == 0 || depth == 0) {
      throw ShapeError("tensor dimensions must be positive, got " +
                       shape_string(rows, cols, depth));
    }
    return rows * cols * depth;
  }

  static std::string shape_string(std::size_t rows, std::size_t cols,
                                  std::size_t depth) {
    return std::to_string(rows) + "x" + std::to_string(cols) + "x" +
           std::to_string(depth);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t depth_ = 0;
  std::vector<Scalar> data_;
};

using Tensor3 = BasicTensor3<double>;
using CTensor3 = BasicTensor3<Complex>;

// Slicing and reshaping.

template <typename Scalar>
Matrix<Scalar> frontal_slice(const BasicTensor3<Scalar>& t, std::size_t k) {
  if (k >= t.depth()) {
    throw std::out_of_range("frontal slice " + std::to_string(k) +
                            " out of range for depth " +
                            std::to_string(t.depth()));
  }
  using RowMajor =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(t.data().data() + k * t.rows() * t.cols(),
                                    static_cast<Eigen::Index>(t.rows()),
                                    static_cast<Eigen::Index>(t.cols()));
}

/// Frontal slices stacked vertically in depth order: (rows * depth) x cols.
template <typename Scalar>
Matrix<Scalar> mat_vec(const BasicTensor3<Scalar>& t) {
  const auto l = static_cast<Eigen::Index>(t.rows());
  Matrix<Scalar> out(l * static_cast<Eigen::Index>(t.depth()),
                     static_cast<Eigen::Index>(t.cols()));
  for (std::size_t k = 0; k < t.depth(); ++k) {
    out.middleRows(static_cast<Eigen::Index>(k) * l, l) = frontal_slice(t, k);
  }
  return out;
}

/// Block-diagonal (rows * depth) x (cols * depth) matrix of frontal slices.
template <typename Scalar>
Matrix<Scalar> mat_view(const BasicTensor3<Scalar>& t) {
  const auto l = static_cast<Eigen::Index>(t.rows());
  const auto c = static_cast<Eigen::Index>(t.cols());
  const auto m = static_cast<Eigen::Index>(t.depth());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(l * m, c * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    out.block(k * l, k * c, l, c) =
        frontal_slice(t, static_cast<std::size_t>(k));
  }
  return out;
}

/// Inverse of mat_vec.
template <typename Derived>
BasicTensor3<typename Derived::Scalar> fold(
    const Eigen::MatrixBase<Derived>& stacked, std::size_t rows,
    std::size_t depth) {
  using Scalar = typename Derived::Scalar;
  if (rows == 0 || depth == 0 ||
      static_cast<std::size_t>(stacked.rows()) != rows * depth) {
    throw ShapeError("fold: matrix with " + std::to_string(stacked.rows()) +
                     " rows cannot be folded into " + std::to_string(rows) +
                     " rows x " + std::to_string(depth) + " slices");
  }
  const auto cols = static_cast<std::size_t>(stacked.cols());
  std::vector<Scalar> data(rows * cols * depth);
  for (std::size_t k = 0; k < depth; ++k) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        data[k * rows * cols + i * cols + j] =
            stacked(static_cast<Eigen::Index>(k * rows + i),
                    static_cast<Eigen::Index>(j));
      }
    }
  }
  return {rows, cols, depth, std::move(data)};
}

/// Tensor whose frontal slices are `slices`, front to back.
template <typename Scalar>
BasicTensor3<Scalar> collect(std::span<const Matrix<Scalar>> slices) {
  if (slices.empty()) {
    throw ShapeError("collect: empty slice list");
  }
  const auto rows = static_cast<std::size_t>(slices.front().rows());
  const auto cols = static_cast<std::size_t>(slices.front().cols());
  std::vector<Scalar> data;
  data.reserve(rows * cols * slices.size());
  for (const auto& s : slices) {
    if (static_cast<std::size_t>(s.rows()) != rows ||
        static_cast<std::size_t>(s.cols()) != cols) {
      throw ShapeError("collect: slices do not share a common shape");
    }
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      for (Eigen::Index j = 0; j < s.cols(); ++j) {
        data.push_back(s(i, j));
      }
    }
  }
  return {rows, cols, slices.size(), std::move(data)};
}

template <typename Scalar>
BasicTensor3<Scalar> collect(const std::vector<Matrix<Scalar>>& slices) {
  return collect(std::span<const Matrix<Scalar>>(slices));
}

// Elementwise arithmetic.

template <typename Scalar>
double frob_norm(const BasicTensor3<Scalar>& t) {
  double sum = 0.0;
  for (const auto& v : t.data()) {
    sum += std::norm(v);
  }
  return std::sqrt(sum);
}

template <typename Scalar, typename Op>
BasicTensor3<Scalar> zip_with(const BasicTensor3<Scalar>& a,
                              const BasicTensor3<Scalar>& b, Op op) {
  if (!a.same_shape(b)) {
    throw ShapeError("shape mismatch: " + a.shape() + " vs " + b.shape());
  }
  std::vector<Scalar> data(a.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    data[n] = op(a.data()[n], b.data()[n]);
  }
  return {a.rows(), a.cols(), a.depth(), std::move(data)};
}

template <typename Scalar>
BasicTensor3<Scalar> operator+(const BasicTensor3<Scalar>& a,
                               const BasicTensor3<Scalar>& b) {
  return zip_with(a, b, [](Scalar x, Scalar y) { return x + y; });
}

template <typename Scalar>
BasicTensor3<Scalar> operator-(const BasicTensor3<Scalar>& a,
                               const BasicTensor3<Scalar>& b) {
  return zip_with(a, b, [](Scalar x, Scalar y) { return x - y; });
}

template <typename Scalar>
BasicTensor3<Scalar> operator*(Scalar alpha, const BasicTensor3<Scalar>& a) {
  std::vector<Scalar> data(a.data().begin(), a.data().end());
  for (auto& v : data) {
    v *= alpha;
  }
  return {a.rows(), a.cols(), a.depth(), std::move(data)};
}

inline Tensor3 add(const Tensor3& a, const Tensor3& b) { return a + b; }
inline Tensor3 sub(const Tensor3& a, const Tensor3& b) { return a - b; }

template <typename Scalar>
double max_abs_diff(const BasicTensor3<Scalar>& a,
                    const BasicTensor3<Scalar>& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("shape mismatch: " + a.shape() + " vs " + b.shape());
  }
  double worst = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    worst = std::max(worst, std::abs(a.data()[n] - b.data()[n]));
  }
  return worst;
}

CTensor3 to_complex(const Tensor3& t);
Tensor3 real_part(const CTensor3& t);
Tensor3 imag_part(const CTensor3& t);

/// Ordered observations sharing a rows x 1 x depth shape.
class TensorSeries {
 public:
  explicit TensorSeries(std::vector<Tensor3> observations);

  std::size_t size() const noexcept { return observations_.size(); }
  std::size_t ell() const noexcept { return observations_.front().rows(); }
  std::size_t depth() const noexcept {
    return observations_.front().depth();
  }

  const Tensor3& operator[](std::size_t j) const { return observations_[j]; }
  const Tensor3& back() const { return observations_.back(); }
  auto begin() const { return observations_.begin(); }
  auto end() const { return observations_.end(); }
  const std::vector<Tensor3>& observations() const { return observations_; }

  /// Observations [first, first + count).
  TensorSeries slice(std::size_t first, std::size_t count) const;
  TensorSeries head(std::size_t count) const { return slice(0, count); }
  TensorSeries tail(std::size_t count) const {
    return slice(size() - count, count);
  }

  friend bool operator==(const TensorSeries&, const TensorSeries&) = default;

 private:
  std::vector<Tensor3> observations_;
};

/// Concatenation; shapes must agree.
TensorSeries concat(const TensorSeries& a, const TensorSeries& b);

}  // namespace ltar
