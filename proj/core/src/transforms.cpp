#include "palmid/transforms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "palmid/error.hpp"

namespace palmid {
namespace {

using Matrix16 = std::array<double, kBlockArea>;

// basis[u * 16 + m] = alpha_u cos(pi (2m + 1) u / 32)
const Matrix16& dct_basis() {
  static const Matrix16 basis = [] {
    Matrix16 a{};
    const double n = static_cast<double>(kBlockSize);
    for (std::size_t u = 0; u < kBlockSize; ++u) {
      const double alpha = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
      for (std::size_t m = 0; m < kBlockSize; ++m) {
        a[u * kBlockSize + m] =
            alpha * std::cos(std::numbers::pi * (2.0 * static_cast<double>(m) + 1.0) *
                             static_cast<double>(u) / (2.0 * n));
      }
    }
    return a;
  }();
  return basis;
}

// out = lhs * rhs, or lhs * rhs^T when `transpose_rhs`.
void multiply(const Matrix16& lhs, const Matrix16& rhs, bool transpose_rhs, Matrix16& out) {
  for (std::size_t i = 0; i < kBlockSize; ++i) {
    for (std::size_t j = 0; j < kBlockSize; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < kBlockSize; ++k) {
        const double r = transpose_rhs ? rhs[j * kBlockSize + k] : rhs[k * kBlockSize + j];
        acc += lhs[i * kBlockSize + k] * r;
      }
      out[i * kBlockSize + j] = acc;
    }
  }
}

Matrix16 transpose(const Matrix16& m) {
  Matrix16 t{};
  for (std::size_t i = 0; i < kBlockSize; ++i)
    for (std::size_t j = 0; j < kBlockSize; ++j) t[j * kBlockSize + i] = m[i * kBlockSize + j];
  return t;
}

// One-dimensional periodic analysis of `length` samples read with `stride`.
// Low outputs go to out[0..L/2), high outputs to out[L/2..L), same stride.
void analyze_1d(const double* in, double* out, std::size_t length, std::size_t stride) {
  const auto& h = db2_lowpass();
  const auto& g = db2_highpass();
  const std::size_t half = length / 2;
  double low[kBlockSize / 2];
  double high[kBlockSize / 2];
  for (std::size_t n = 0; n < half; ++n) {
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double x = in[((2 * n + k) % length) * stride];
      lo += h[k] * x;
      hi += g[k] * x;
    }
    low[n] = lo;
    high[n] = hi;
  }
  for (std::size_t n = 0; n < half; ++n) {
    out[n * stride] = low[n];
    out[(half + n) * stride] = high[n];
  }
}

// Transpose of `analyze_1d`; since the periodic filter bank is orthonormal this
// is its inverse.
void synthesize_1d(const double* in, double* out, std::size_t length, std::size_t stride) {
  const auto& h = db2_lowpass();
  const auto& g = db2_highpass();
  const std::size_t half = length / 2;
  double x[kBlockSize] = {};
  for (std::size_t n = 0; n < half; ++n) {
    const double lo = in[n * stride];
    const double hi = in[(half + n) * stride];
    for (std::size_t k = 0; k < 4; ++k) x[(2 * n + k) % length] += h[k] * lo + g[k] * hi;
  }
  for (std::size_t i = 0; i < length; ++i) out[i * stride] = x[i];
}

Band extract_band(const Matrix16& work, std::size_t row0, std::size_t col0, std::size_t size) {
  Band band{size, std::vector<double>(size * size)};
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c)
      band.values[r * size + c] = work[(row0 + r) * kBlockSize + col0 + c];
  return band;
}

void place_band(const Band& band, Matrix16& work, std::size_t row0, std::size_t col0,
                std::size_t size) {
  if (band.size != size || band.values.size() != size * size) {
    throw Error(ErrorCode::WrongBlockSize, "band of size " + std::to_string(band.size) +
                                               " where " + std::to_string(size) + " expected");
  }
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c)
      work[(row0 + r) * kBlockSize + col0 + c] = band.values[r * size + c];
}

}  // namespace

template <class Tag>
Tile<Tag> Tile<Tag>::from_span(std::span<const double> data) {
  if (data.size() != kBlockArea) {
    throw Error(ErrorCode::WrongBlockSize,
                "expected 256 values for a 16x16 block, got " + std::to_string(data.size()));
  }
  Tile tile;
  std::copy(data.begin(), data.end(), tile.values.begin());
  return tile;
}

template struct Tile<BlockTag>;
template struct Tile<DctTag>;

double Band::energy() const {
  double e = 0.0;
  for (double v : values) e += v * v;
  return e;
}

DctCoefficients dct2(const Block& block) {
  Matrix16 tmp;
  DctCoefficients out;
  // A X, then (A X) A^T
  multiply(dct_basis(), block.values, false, tmp);
  multiply(tmp, dct_basis(), true, out.values);
  return out;
}

Block idct2(const DctCoefficients& coeffs) {
  static const Matrix16 basis_t = transpose(dct_basis());
  Matrix16 tmp;
  Block out;
  multiply(basis_t, coeffs.values, false, tmp);
  multiply(tmp, basis_t, true, out.values);
  return out;
}

const std::array<std::pair<std::size_t, std::size_t>, kBlockArea>& zigzag_order() {
  static const auto order = [] {
    std::array<std::pair<std::size_t, std::size_t>, kBlockArea> out{};
    constexpr std::size_t last = kBlockSize - 1;
    std::size_t r = 0;
    std::size_t c = 0;
    bool up_right = true;
    for (std::size_t i = 0; i < kBlockArea; ++i) {
      out[i] = {r, c};
      if (up_right) {
        if (c == last) {
          ++r;
          up_right = false;
        } else if (r == 0) {
          ++c;
          up_right = false;
        } else {
          --r;
          ++c;
        }
      } else {
        if (r == last) {
          ++c;
          up_right = true;
        } else if (c == 0) {
          ++r;
          up_right = true;
        } else {
          ++r;
          --c;
        }
      }
    }
    return out;
  }();
  return order;
}

std::vector<double> zigzag_take(const DctCoefficients& coeffs, std::size_t count) {
  if (count < 1 || count > kBlockArea) {
    throw Error(ErrorCode::CountOutOfRange,
                "zig-zag count must be in [1, 256], got " + std::to_string(count));
  }
  const auto& order = zigzag_order();
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = coeffs(order[i].first, order[i].second);
  return out;
}

const std::array<double, 4>& db2_lowpass() {
  static const std::array<double, 4> h = [] {
    const double s3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    return std::array<double, 4>{(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d};
  }();
  return h;
}

const std::array<double, 4>& db2_highpass() {
  static const std::array<double, 4> g = [] {
    const auto& h = db2_lowpass();
    return std::array<double, 4>{h[3], -h[2], h[1], -h[0]};
  }();
  return g;
}

SubbandPyramid dwt2_db2(const Block& block, std::size_t levels) {
  if (levels != kWaveletLevels) {
    throw Error(ErrorCode::UnsupportedDepth,
                "16x16 blocks support exactly 3 levels, got " + std::to_string(levels));
  }
  Matrix16 work = block.values;
  SubbandPyramid pyramid;
  std::size_t size = kBlockSize;
  for (std::size_t level = 0; level < kWaveletLevels; ++level) {
    for (std::size_t r = 0; r < size; ++r) analyze_1d(&work[r * kBlockSize], &work[r * kBlockSize], size, 1);
    for (std::size_t c = 0; c < size; ++c) analyze_1d(&work[c], &work[c], size, kBlockSize);
    const std::size_t half = size / 2;
    pyramid.levels[level].hl = extract_band(work, 0, half, half);
    pyramid.levels[level].lh = extract_band(work, half, 0, half);
    pyramid.levels[level].hh = extract_band(work, half, half, half);
    size = half;
  }
  pyramid.final_ll = extract_band(work, 0, 0, size);
  return pyramid;
}

Block idwt2_db2(const SubbandPyramid& pyramid) {
  Matrix16 work{};
  std::size_t size = kBlockSize >> kWaveletLevels;
  place_band(pyramid.final_ll, work, 0, 0, size);
  for (std::size_t level = kWaveletLevels; level-- > 0;) {
    const auto& bands = pyramid.levels[level];
    place_band(bands.hl, work, 0, size, size);
    place_band(bands.lh, work, size, 0, size);
    place_band(bands.hh, work, size, size, size);
    size *= 2;
    for (std::size_t c = 0; c < size; ++c) synthesize_1d(&work[c], &work[c], size, kBlockSize);
    for (std::size_t r = 0; r < size; ++r) synthesize_1d(&work[r * kBlockSize], &work[r * kBlockSize], size, 1);
  }
  Block out;
  out.values = work;
  return out;
}

std::array<double, kWaveletFeatureCount> subband_energies(const SubbandPyramid& pyramid) {
  std::array<double, kWaveletFeatureCount> out{};
  for (std::size_t level = 0; level < kWaveletLevels; ++level) {
    out[3 * level + 0] = pyramid.levels[level].lh.energy();
    out[3 * level + 1] = pyramid.levels[level].hl.energy();
    out[3 * level + 2] = pyramid.levels[level].hh.energy();
  }
  return out;
}

}  // namespace palmid
