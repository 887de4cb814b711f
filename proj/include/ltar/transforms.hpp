#pragma once

#include <cstddef>
#include <string_view>

#include "ltar/tensor.hpp"

namespace ltar {

/// Invertible transform applied along the tubes (third mode) of a tensor.
///
/// Normalizations:
///   Dct  - orthonormal DCT-II forward, orthonormal DCT-III inverse.
///   Dft  - unnormalized forward, 1/m on the inverse.
///   Haar - orthonormal full-depth Haar decomposition. At a level with an odd
///          number of approximation coefficients the last one is carried to
///          the next level unchanged, so any depth is accepted; for
///          power-of-two depths this is the textbook transform.
enum class TransformKind { Dct, Dft, Haar };

std::string_view to_string(TransformKind kind) noexcept;

/// Accepts "dct", "dft", "haar" (also "dwt"). Throws std::invalid_argument.
TransformKind parse_transform_kind(std::string_view name);

constexpr bool is_complex_domain(TransformKind kind) noexcept {
  return kind == TransformKind::Dft;
}

/// Relative imaginary residue allowed when mapping back to real values.
inline constexpr double kImaginaryResidueTolerance = 1e-8;

/// Transform of fixed length, applied to every row of a tube matrix.
class TubeTransform {
 public:
  TubeTransform(TransformKind kind, std::size_t length);

  TransformKind kind() const noexcept { return kind_; }
  std::size_t length() const noexcept { return length_; }

  Matrix<Complex> forward(const Matrix<Complex>& tubes) const;
  Matrix<Complex> inverse(const Matrix<Complex>& tubes) const;

  /// Real-to-real paths; throws std::logic_error for Dft.
  Matrix<double> forward(const Matrix<double>& tubes) const;
  Matrix<double> inverse(const Matrix<double>& tubes) const;

 private:
  void fft_rows(Matrix<Complex>& tubes, bool inverse) const;
  void haar_rows(Matrix<double>& tubes, bool inverse) const;

  TransformKind kind_;
  std::size_t length_;
  Matrix<double> dct_;  // orthonormal DCT-II matrix, rows = basis vectors
  // Radix-2 size and Bluestein chirp for the DFT.
  std::size_t fft_size_ = 0;
  std::vector<Complex> chirp_;
  std::vector<Complex> chirp_spectrum_;
};

/// Forward transform of every tube. The result is complex-typed for every
/// kind; for Dct and Haar all imaginary parts are exactly zero.
CTensor3 l_transform(const Tensor3& t, TransformKind kind);
CTensor3 l_transform(const CTensor3& t, TransformKind kind);

/// Real-valued forward/inverse for Dct and Haar.
Tensor3 l_transform_real(const Tensor3& t, TransformKind kind);
Tensor3 l_inverse_real(const Tensor3& t, TransformKind kind);

/// Inverse transform returning the real part. Throws NumericalError when the
/// imaginary part exceeds kImaginaryResidueTolerance * frob_norm(result).
Tensor3 l_inverse(const CTensor3& t, TransformKind kind);

/// Inverse transform without the realness requirement.
CTensor3 l_inverse_complex(const CTensor3& t, TransformKind kind);

/// Imaginary residue ||Im x||_F / ||x||_F of an inverse transform (0 for the
/// zero tensor).
double relative_imaginary_residue(const CTensor3& t);

/// Slice-wise matrix products: result slice k = a^(k) * b^(k).
template <typename Scalar>
BasicTensor3<Scalar> facewise_product(const BasicTensor3<Scalar>& a,
                                      const BasicTensor3<Scalar>& b) {
  if (a.cols() != b.rows() || a.depth() != b.depth()) {
    throw ShapeError("facewise product of " + a.shape() + " and " + b.shape());
  }
  std::vector<Matrix<Scalar>> slices;
  slices.reserve(a.depth());
  for (std::size_t k = 0; k < a.depth(); ++k) {
    slices.push_back(frontal_slice(a, k) * frontal_slice(b, k));
  }
  return collect(slices);
}

/// L-product a * b = L^-1(facewise_product(L(a), L(b))).
Tensor3 l_product(const Tensor3& a, const Tensor3& b, TransformKind kind);

/// Identity element of the L-product for ell x ell x m tensors: the inverse
/// transform of a tensor with identity frontal slices.
Tensor3 transform_identity(std::size_t ell, std::size_t depth,
                           TransformKind kind);

}  // namespace ltar
