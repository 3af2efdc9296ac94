#ifndef PALMID_TRANSFORMS_HPP
#define PALMID_TRANSFORMS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "palmid/image.hpp"

namespace palmid {

inline constexpr std::size_t kBlockArea = kBlockSize * kBlockSize;
inline constexpr std::size_t kDefaultDctCount = 9;
inline constexpr std::size_t kWaveletLevels = 3;
inline constexpr std::size_t kWaveletFeatureCount = 3 * kWaveletLevels;

/// Row-major 16x16 matrix of reals. The tag keeps pixel tiles and DCT
/// coefficient tiles from being mixed up.
template <class Tag>
struct Tile {
  std::array<double, kBlockArea> values{};

  double operator()(std::size_t row, std::size_t col) const { return values[row * kBlockSize + col]; }
  double& operator()(std::size_t row, std::size_t col) { return values[row * kBlockSize + col]; }

  /// Throws WrongBlockSize unless `data` holds exactly 256 values.
  static Tile from_span(std::span<const double> data);

  friend bool operator==(const Tile&, const Tile&) = default;
};

struct BlockTag {};
struct DctTag {};

using Block = Tile<BlockTag>;
using DctCoefficients = Tile<DctTag>;

/// Square matrix holding one wavelet subband.
struct Band {
  std::size_t size = 0;
  std::vector<double> values;

  double operator()(std::size_t row, std::size_t col) const { return values[row * size + col]; }
  double energy() const;
};

/// Three decomposition levels of detail bands (8x8, 4x4, 2x2) plus the final
/// 2x2 approximation. In band names the first letter is the horizontal
/// (row) filter and the second the vertical (column) filter.
struct SubbandPyramid {
  struct Level {
    Band lh;  // horizontal low, vertical high
    Band hl;  // horizontal high, vertical low
    Band hh;
  };
  std::array<Level, kWaveletLevels> levels;
  Band final_ll;
};

/// Orthonormal 2D DCT-II of a 16x16 block, computed separably as A X A^T.
DctCoefficients dct2(const Block& block);

/// Inverse of `dct2`.
Block idct2(const DctCoefficients& coeffs);

/// (row, col) positions of the 16x16 zig-zag scan, low frequencies first.
const std::array<std::pair<std::size_t, std::size_t>, kBlockArea>& zigzag_order();

/// First `count` coefficients in zig-zag order. Throws CountOutOfRange
/// unless 1 <= count <= 256.
std::vector<double> zigzag_take(const DctCoefficients& coeffs, std::size_t count = kDefaultDctCount);

/// Daubechies-2 analysis low-pass filter.
const std::array<double, 4>& db2_lowpass();
/// High-pass filter g[k] = (-1)^k h[3-k].
const std::array<double, 4>& db2_highpass();

/// Separable 2D db2 decomposition with periodic extension:
/// y[n] = sum_k h[k] x[(2n + k) mod L], rows first then columns, recursing on
/// LL. Only `levels == 3` is supported; anything else throws UnsupportedDepth.
SubbandPyramid dwt2_db2(const Block& block, std::size_t levels = kWaveletLevels);

/// Exact inverse of `dwt2_db2`.
Block idwt2_db2(const SubbandPyramid& pyramid);

/// Detail-band energies in the order L1-LH, L1-HL, L1-HH, L2-LH, ..., L3-HH.
/// The final LL band is not included.
std::array<double, kWaveletFeatureCount> subband_energies(const SubbandPyramid& pyramid);

}  // namespace palmid

#endif  // PALMID_TRANSFORMS_HPP
