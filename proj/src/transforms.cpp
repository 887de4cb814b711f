#include "ltar/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ltar {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

// In-place iterative radix-2 FFT; `twiddle` holds exp(-2 pi i j / n) for
// j < n / 2.
void radix2(std::vector<Complex>& a, const std::vector<Complex>& twiddle,
            bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) {
      j ^= bit;
    }
    j ^= bit;
    if (i < j) {
      std::swap(a[i], a[j]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex w = twiddle[j * stride];
        if (inverse) {
          w = std::conj(w);
        }
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

std::vector<Complex> make_twiddle(std::size_t n) {
  std::vector<Complex> tw(n / 2);
  for (std::size_t j = 0; j < tw.size(); ++j) {
    tw[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) /
                                static_cast<double>(n));
  }
  return tw;
}

}  // namespace

std::string_view to_string(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::Dct:
      return "dct";
    case TransformKind::Dft:
      return "dft";
    case TransformKind::Haar:
      return "haar";
  }
  return "unknown";
}

TransformKind parse_transform_kind(std::string_view name) {
  if (name == "dct") return TransformKind::Dct;
  if (name == "dft" || name == "fft") return TransformKind::Dft;
  if (name == "haar" || name == "dwt") return TransformKind::Haar;
  throw std::invalid_argument("unknown transform '" + std::string(name) +
                              "' (expected dct, dft or haar)");
}

TubeTransform::TubeTransform(TransformKind kind, std::size_t length)
    : kind_(kind), length_(length) {
  if (length == 0) {
    throw ShapeError("transform length must be positive");
  }
  const auto m = static_cast<Eigen::Index>(length);
  switch (kind) {
    case TransformKind::Dct: {
      dct_.resize(m, m);
      const double pi = std::numbers::pi;
      for (Eigen::Index k = 0; k < m; ++k) {
        const double scale =
            std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(m));
        for (Eigen::Index n = 0; n < m; ++n) {
          dct_(k, n) = scale * std::cos(pi * static_cast<double>(2 * n + 1) *
                                        static_cast<double>(k) /
                                        (2.0 * static_cast<double>(m)));
        }
      }
      break;
    }
    case TransformKind::Dft: {
      if (is_power_of_two(length)) {
        fft_size_ = length;
      } else {
        // Bluestein: a length-m DFT as a circular convolution of size
        // >= 2m - 1.
        fft_size_ = next_power_of_two(2 * length - 1);
        chirp_.resize(length);
        for (std::size_t n = 0; n < length; ++n) {
          const auto n2 = (n * n) % (2 * length);
          chirp_[n] = std::polar(1.0, -std::numbers::pi *
                                          static_cast<double>(n2) /
                                          static_cast<double>(length));
        }
        chirp_spectrum_.assign(fft_size_, Complex{});
        chirp_spectrum_[0] = std::conj(chirp_[0]);
        for (std::size_t n = 1; n < length; ++n) {
          chirp_spectrum_[n] = std::conj(chirp_[n]);
          chirp_spectrum_[fft_size_ - n] = std::conj(chirp_[n]);
        }
        radix2(chirp_spectrum_, make_twiddle(fft_size_), false);
      }
      break;
    }
    case TransformKind::Haar:
      break;
  }
}

void TubeTransform::fft_rows(Matrix<Complex>& tubes, bool inverse) const {
  const std::size_t m = length_;
  const auto twiddle = make_twiddle(fft_size_);
  std::vector<Complex> buf(fft_size_);
  for (Eigen::Index r = 0; r < tubes.rows(); ++r) {
    if (chirp_.empty()) {
      for (std::size_t n = 0; n < m; ++n) {
        buf[n] = tubes(r, static_cast<Eigen::Index>(n));
      }
      radix2(buf, twiddle, inverse);
    } else {
      // The inverse DFT is conj(DFT(conj(x))), scaled afterwards.
      std::fill(buf.begin(), buf.end(), Complex{});
      for (std::size_t n = 0; n < m; ++n) {
        Complex x = tubes(r, static_cast<Eigen::Index>(n));
        if (inverse) {
          x = std::conj(x);
        }
        buf[n] = x * chirp_[n];
      }
      radix2(buf, twiddle, false);
      for (std::size_t n = 0; n < fft_size_; ++n) {
        buf[n] *= chirp_spectrum_[n];
      }
      radix2(buf, twiddle, true);
      const double scale = 1.0 / static_cast<double>(fft_size_);
      for (std::size_t k = 0; k < m; ++k) {
        buf[k] *= chirp_[k] * scale;
        if (inverse) {
          buf[k] = std::conj(buf[k]);
        }
      }
    }
    const double scale = inverse ? 1.0 / static_cast<double>(m) : 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      tubes(r, static_cast<Eigen::Index>(k)) = buf[k] * scale;
    }
  }
}

void TubeTransform::haar_rows(Matrix<double>& tubes, bool inverse) const {
  const std::size_t m = length_;
  std::vector<std::size_t> levels;
  for (std::size_t len = m; len > 1; len = len / 2 + len % 2) {
    levels.push_back(len);
  }
  const double r = std::numbers::sqrt2 / 2.0;
  std::vector<double> x(m);
  std::vector<double> tmp(m);
  for (Eigen::Index row = 0; row < tubes.rows(); ++row) {
    for (std::size_t n = 0; n < m; ++n) {
      x[n] = tubes(row, static_cast<Eigen::Index>(n));
    }
    if (!inverse) {
      for (const std::size_t len : levels) {
        const std::size_t half = len / 2;
        const std::size_t approx = half + len % 2;
        for (std::size_t i = 0; i < half; ++i) {
          tmp[i] = (x[2 * i] + x[2 * i + 1]) * r;
          tmp[approx + i] = (x[2 * i] - x[2 * i + 1]) * r;
        }
        if (len % 2 == 1) {
          tmp[half] = x[len - 1];
        }
        std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(len),
                  x.begin());
      }
    } else {
      for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        const std::size_t len = *it;
        const std::size_t half = len / 2;
        const std::size_t approx = half + len % 2;
        for (std::size_t i = 0; i < half; ++i) {
          tmp[2 * i] = (x[i] + x[approx + i]) * r;
          tmp[2 * i + 1] = (x[i] - x[approx + i]) * r;
        }
        if (len % 2 == 1) {
          tmp[len - 1] = x[half];
        }
        std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(len),
                  x.begin());
      }
    }
    for (std::size_t n = 0; n < m; ++n) {
      tubes(row, static_cast<Eigen::Index>(n)) = x[n];
    }
  }
}

Matrix<double> TubeTransform::forward(const Matrix<double>& tubes) const {
  switch (kind_) {
    case TransformKind::Dct:
      return tubes * dct_.transpose();
    case TransformKind::Haar: {
      Matrix<double> out = tubes;
      haar_rows(out, false);
      return out;
    }
    case TransformKind::Dft:
      break;
  }
  throw std::logic_error("the DFT has no real-to-real form");
}

Matrix<double> TubeTransform::inverse(const Matrix<double>& tubes) const {
  switch (kind_) {
    case TransformKind::Dct:
      return tubes * dct_;
    case TransformKind::Haar: {
      Matrix<double> out = tubes;
      haar_rows(out, true);
      return out;
    }
    case TransformKind::Dft:
      break;
  }
  throw std::logic_error("the DFT has no real-to-real form");
}

Matrix<Complex> TubeTransform::forward(const Matrix<Complex>& tubes) const {
  if (kind_ == TransformKind::Dft) {
    Matrix<Complex> out = tubes;
    fft_rows(out, false);
    return out;
  }
  const Matrix<double> re = forward(Matrix<double>(tubes.real()));
  const Matrix<double> im = forward(Matrix<double>(tubes.imag()));
  Matrix<Complex> out(tubes.rows(), tubes.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

Matrix<Complex> TubeTransform::inverse(const Matrix<Complex>& tubes) const {
  if (kind_ == TransformKind::Dft) {
    Matrix<Complex> out = tubes;
    fft_rows(out, true);
    return out;
  }
  const Matrix<double> re = inverse(Matrix<double>(tubes.real()));
  const Matrix<double> im = inverse(Matrix<double>(tubes.imag()));
  Matrix<Complex> out(tubes.rows(), tubes.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

CTensor3 l_transform(const CTensor3& t, TransformKind kind) {
  const TubeTransform tr(kind, t.depth());
  return CTensor3::from_tubes(t.rows(), t.cols(),
                              tr.forward(Matrix<Complex>(t.tube_view())));
}

CTensor3 l_transform(const Tensor3& t, TransformKind kind) {
  if (!is_complex_domain(kind)) {
    return to_complex(l_transform_real(t, kind));
  }
  return l_transform(to_complex(t), kind);
}

Tensor3 l_transform_real(const Tensor3& t, TransformKind kind) {
  const TubeTransform tr(kind, t.depth());
  return Tensor3::from_tubes(t.rows(), t.cols(),
                             tr.forward(Matrix<double>(t.tube_view())));
}

Tensor3 l_inverse_real(const Tensor3& t, TransformKind kind) {
  const TubeTransform tr(kind, t.depth());
  return Tensor3::from_tubes(t.rows(), t.cols(),
                             tr.inverse(Matrix<double>(t.tube_view())));
}

CTensor3 l_inverse_complex(const CTensor3& t, TransformKind kind) {
  const TubeTransform tr(kind, t.depth());
  return CTensor3::from_tubes(t.rows(), t.cols(),
                              tr.inverse(Matrix<Complex>(t.tube_view())));
}

double relative_imaginary_residue(const CTensor3& t) {
  const double total = frob_norm(t);
  if (total == 0.0) {
    return 0.0;
  }
  return frob_norm(imag_part(t)) / total;
}

Tensor3 l_inverse(const CTensor3& t, TransformKind kind) {
  const CTensor3 back = l_inverse_complex(t, kind);
  const double residue = relative_imaginary_residue(back);
  if (residue > kImaginaryResidueTolerance) {
    throw NumericalError("inverse transform left a relative imaginary residue "
                         "of " + std::to_string(residue) +
                         "; transform-domain data is not conjugate-symmetric");
  }
  return real_part(back);
}

Tensor3 l_product(const Tensor3& a, const Tensor3& b, TransformKind kind) {
  if (a.cols() != b.rows() || a.depth() != b.depth()) {
    throw ShapeError("L-product of " + a.shape() + " and " + b.shape());
  }
  if (!is_complex_domain(kind)) {
    return l_inverse_real(facewise_product(l_transform_real(a, kind),
                                           l_transform_real(b, kind)),
                          kind);
  }
  return l_inverse(
      facewise_product(l_transform(a, kind), l_transform(b, kind)), kind);
}

Tensor3 transform_identity(std::size_t ell, std::size_t depth,
                           TransformKind kind) {
  const std::vector<Matrix<Complex>> slices(
      depth, Matrix<Complex>::Identity(static_cast<Eigen::Index>(ell),
                                       static_cast<Eigen::Index>(ell)));
  return l_inverse(collect(slices), kind);
}

}  // namespace ltar
