#ifndef PALMID_DATASET_HPP
#define PALMID_DATASET_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "palmid/image.hpp"

namespace palmid {

enum class Spectrum : std::size_t { Blue = 0, Green = 1, Red = 2, Nir = 3 };

inline constexpr std::size_t kSpectrumCount = 4;
inline constexpr std::array<Spectrum, kSpectrumCount> kAllSpectra{
    Spectrum::Blue, Spectrum::Green, Spectrum::Red, Spectrum::Nir};

/// Lower-case file-name token: "blue", "green", "red", "nir".
std::string_view spectrum_name(Spectrum s) noexcept;

/// One person-session observation under the four illuminations.
struct PalmSample {
  std::string person_id;
  std::size_t sample_index = 0;
  std::array<GrayImage, kSpectrumCount> spectra;

  const GrayImage& image(Spectrum s) const { return spectra[static_cast<std::size_t>(s)]; }
};

/// Samples grouped by person: persons sorted by label, samples by index,
/// every person contributing the same number of samples.
struct Dataset {
  std::vector<PalmSample> samples;
  std::size_t persons = 0;
  std::size_t samples_per_person = 0;
};

/// Checks the uniform-samples and equal-spectrum-size invariants and fills
/// in the counts. Sorts samples by (person_id, sample_index).
Dataset make_dataset(std::vector<PalmSample> samples);

/// Loads `<root>/<person_id>/<sample_index>_<spectrum>.pgm`.
Dataset load_dataset(const std::filesystem::path& root);

/// Writes a dataset in the layout `load_dataset` reads.
void save_dataset(const Dataset& dataset, const std::filesystem::path& root);

struct SyntheticParams {
  std::size_t persons = 50;
  std::size_t samples_per_person = 12;
  std::size_t width = 128;
  std::size_t height = 128;
  double noise_sigma = 8.0;
  std::uint64_t seed = 42;
};

/// Per person and spectrum, a smooth prototype (sum of random 2D cosines
/// rescaled to [0, 255]); each sample adds clamped i.i.d. Gaussian noise.
Dataset generate_synthetic(const SyntheticParams& params);

enum class SplitMode { FirstN, SeededRandom };

struct SplitSpec {
  std::size_t train_count = 4;
  SplitMode mode = SplitMode::FirstN;
  std::uint64_t seed = 0;
};

/// Positions into `Dataset::samples`. Ascending within each list.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per person, `train_count` samples go to train and the rest to test.
/// FirstN keeps the lowest sample indices; SeededRandom permutes each
/// person's samples with a generator seeded from `spec.seed`.
Split split(const Dataset& dataset, const SplitSpec& spec);

/// Same partition for any collection laid out person-major with
/// `samples_per_person` consecutive samples per person.
Split split(std::size_t persons, std::size_t samples_per_person, const SplitSpec& spec);

}  // namespace palmid

#endif  // PALMID_DATASET_HPP
