#ifndef PALMID_FEATURES_HPP
#define PALMID_FEATURES_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "palmid/dataset.hpp"
#include "palmid/image.hpp"
#include "palmid/transforms.hpp"

namespace palmid {

using FeatureVector = std::vector<double>;

/// Per-image matrix whose m-th column is the feature vector of the m-th
/// row-major block: `dct_count` zig-zag DCT coefficients followed by the 9
/// wavelet subband energies. Stored column after column, so `values()` is
/// already the flattened length-D vector.
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t row, std::size_t col) const { return values_[col * rows_ + row]; }
  double& operator()(std::size_t row, std::size_t col) { return values_[col * rows_ + row]; }

  std::span<const double> column(std::size_t col) const {
    return std::span<const double>(values_).subspan(col * rows_, rows_);
  }
  const FeatureVector& values() const noexcept { return values_; }
  FeatureVector flatten() && { return std::move(values_); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  FeatureVector values_;
};

/// Row-major 16x16 tiling. Throws DimensionNotMultipleOf16.
std::vector<Block> block_partition(const GrayImage& image);

/// Number of features produced per block for a given DCT coefficient count.
constexpr std::size_t features_per_block(std::size_t dct_count = kDefaultDctCount) {
  return dct_count + kWaveletFeatureCount;
}

std::vector<double> block_features(const Block& block, std::size_t dct_count = kDefaultDctCount);

FeatureMatrix image_features(const GrayImage& image, std::size_t dct_count = kDefaultDctCount);

/// Flattened per-spectrum features of one sample.
struct SampleFeatures {
  std::string person_id;
  std::size_t sample_index = 0;
  std::array<FeatureVector, kSpectrumCount> spectra;
};

/// Extracts features for every sample, in dataset order.
std::vector<SampleFeatures> extract_features(const Dataset& dataset,
                                             std::size_t dct_count = kDefaultDctCount);

/// Per-coordinate mean and population standard deviation over a training set.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stddevs;
};

/// Throws TooFewSamples (fewer than 2 vectors) or LengthMismatch.
Standardizer fit_standardizer(std::span<const FeatureVector> training);

/// (v - mean) / stddev per coordinate; zero-stddev coordinates map to 0.
FeatureVector apply_standardizer(const Standardizer& s, std::span<const double> v);

/// CSV with header `person_id,sample_index,spectrum,f_0001..f_<D>`, one row
/// per (sample, spectrum). Values are written with round-trip precision.
void write_feature_csv(std::ostream& out, std::span<const SampleFeatures> features);

std::vector<SampleFeatures> read_feature_csv(std::istream& in);

}  // namespace palmid

#endif  // PALMID_FEATURES_HPP
