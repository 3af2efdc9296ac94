#include "palmid/features.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "palmid/error.hpp"

namespace palmid {

std::vector<Block> block_partition(const GrayImage& image) {
  if (image.width() == 0 || image.height() == 0 || image.width() % kBlockSize != 0 ||
      image.height() % kBlockSize != 0) {
    throw Error(ErrorCode::DimensionNotMultipleOf16, std::to_string(image.width()) + "x" +
                                                         std::to_string(image.height()));
  }
  const std::size_t block_rows = image.height() / kBlockSize;
  const std::size_t block_cols = image.width() / kBlockSize;
  std::vector<Block> blocks(block_rows * block_cols);
  for (std::size_t br = 0; br < block_rows; ++br) {
    for (std::size_t bc = 0; bc < block_cols; ++bc) {
      Block& block = blocks[br * block_cols + bc];
      for (std::size_t r = 0; r < kBlockSize; ++r)
        for (std::size_t c = 0; c < kBlockSize; ++c)
          block(r, c) = image.at(br * kBlockSize + r, bc * kBlockSize + c);
    }
  }
  return blocks;
}

std::vector<double> block_features(const Block& block, std::size_t dct_count) {
  std::vector<double> out = zigzag_take(dct2(block), dct_count);
  const auto energies = subband_energies(dwt2_db2(block));
  out.insert(out.end(), energies.begin(), energies.end());
  return out;
}

FeatureMatrix image_features(const GrayImage& image, std::size_t dct_count) {
  const std::vector<Block> blocks = block_partition(image);
  FeatureMatrix matrix(features_per_block(dct_count), blocks.size());
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    const std::vector<double> f = block_features(blocks[m], dct_count);
    for (std::size_t r = 0; r < f.size(); ++r) matrix(r, m) = f[r];
  }
  return matrix;
}

std::vector<SampleFeatures> extract_features(const Dataset& dataset, std::size_t dct_count) {
  std::vector<SampleFeatures> out;
  out.reserve(dataset.samples.size());
  for (const PalmSample& sample : dataset.samples) {
    SampleFeatures f;
    f.person_id = sample.person_id;
    f.sample_index = sample.sample_index;
    for (std::size_t s = 0; s < kSpectrumCount; ++s)
      f.spectra[s] = image_features(sample.spectra[s], dct_count).flatten();
    out.push_back(std::move(f));
  }
  return out;
}

Standardizer fit_standardizer(std::span<const FeatureVector> training) {
  if (training.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "standardizer needs at least 2 training vectors");
  }
  const std::size_t dim = training.front().size();
  for (const FeatureVector& v : training) {
    if (v.size() != dim) throw Error(ErrorCode::LengthMismatch, "training vectors differ in length");
  }
  const double n = static_cast<double>(training.size());
  Standardizer s{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  for (const FeatureVector& v : training)
    for (std::size_t i = 0; i < dim; ++i) s.means[i] += v[i];
  for (double& m : s.means) m /= n;
  for (const FeatureVector& v : training) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = v[i] - s.means[i];
      s.stddevs[i] += d * d;
    }
  }
  for (double& sd : s.stddevs) sd = std::sqrt(sd / n);
  return s;
}

FeatureVector apply_standardizer(const Standardizer& s, std::span<const double> v) {
  if (v.size() != s.means.size()) {
    throw Error(ErrorCode::LengthMismatch, "vector length " + std::to_string(v.size()) +
                                               " vs standardizer " + std::to_string(s.means.size()));
  }
  FeatureVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = s.stddevs[i] > 0.0 ? (v[i] - s.means[i]) / s.stddevs[i] : 0.0;
  return out;
}

void write_feature_csv(std::ostream& out, std::span<const SampleFeatures> features) {
  const std::size_t dim = features.empty() ? 0 : features.front().spectra[0].size();
  out << "person_id,sample_index,spectrum";
  for (std::size_t i = 1; i <= dim; ++i) out << ",f_" << std::setw(4) << std::setfill('0') << i;
  out << '\n' << std::setfill(' ');
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const SampleFeatures& f : features) {
    for (std::size_t s = 0; s < kSpectrumCount; ++s) {
      if (f.spectra[s].size() != dim) {
        throw Error(ErrorCode::LengthMismatch, "feature vectors differ in length");
      }
      out << f.person_id << ',' << f.sample_index << ',' << spectrum_name(kAllSpectra[s]);
      for (double v : f.spectra[s]) out << ',' << v;
      out << '\n';
    }
  }
}

std::vector<SampleFeatures> read_feature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("person_id,sample_index,spectrum", 0) != 0) {
    throw Error(ErrorCode::UnsupportedFormat, "missing feature CSV header");
  }
  std::map<std::pair<std::string, std::size_t>, std::pair<SampleFeatures, unsigned>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string person, index, spectrum, cell;
    std::getline(fields, person, ',');
    std::getline(fields, index, ',');
    std::getline(fields, spectrum, ',');
    std::size_t s = 0;
    while (s < kSpectrumCount && spectrum_name(kAllSpectra[s]) != spectrum) ++s;
    if (s == kSpectrumCount) throw Error(ErrorCode::UnsupportedFormat, "unknown spectrum " + spectrum);

    FeatureVector values;
    while (std::getline(fields, cell, ',')) values.push_back(std::stod(cell));

    const std::size_t sample_index = std::stoul(index);
    auto& [entry, seen] = rows[{person, sample_index}];
    entry.person_id = person;
    entry.sample_index = sample_index;
    entry.spectra[s] = std::move(values);
    seen |= 1u << s;
  }
  std::vector<SampleFeatures> out;
  for (auto& [key, slot] : rows) {
    if (slot.second != (1u << kSpectrumCount) - 1) {
      throw Error(ErrorCode::MissingSpectrum,
                  key.first + " sample " + std::to_string(key.second) + " lacks a spectrum");
    }
    out.push_back(std::move(slot.first));
  }
  return out;
}

}  // namespace palmid
