#include "palmid/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <iomanip>

#include "palmid/error.hpp"

namespace palmid {
namespace {

constexpr int kPrototypeWaves = 8;

std::mt19937_64 seeded_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> salt) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed),
                                   static_cast<std::uint32_t>(seed >> 32)};
  for (std::uint64_t s : salt) {
    words.push_back(static_cast<std::uint32_t>(s));
    words.push_back(static_cast<std::uint32_t>(s >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

GrayImage make_prototype(const SyntheticParams& params, std::size_t person, std::size_t spectrum) {
  auto rng = seeded_engine(params.seed, {0x70726f746fULL, person, spectrum});
  std::uniform_real_distribution<double> amplitude(0.5, 1.0);
  std::uniform_real_distribution<double> frequency(0.5, 6.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution flip(0.5);

  struct Wave {
    double a, fx, fy, phi;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < kPrototypeWaves; ++i) {
    Wave w{amplitude(rng), frequency(rng), frequency(rng), phase(rng)};
    if (flip(rng)) w.fy = -w.fy;
    waves.push_back(w);
  }

  const std::size_t width = params.width;
  const std::size_t height = params.height;
  std::vector<double> field(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      double v = 0.0;
      for (const Wave& w : waves) {
        v += w.a * std::cos(2.0 * std::numbers::pi *
                                (w.fx * static_cast<double>(x) / static_cast<double>(width) +
                                 w.fy * static_cast<double>(y) / static_cast<double>(height)) +
                            w.phi);
      }
      field[y * width + x] = v;
    }
  }
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  const double min = *lo;
  const double range = *hi - *lo;
  for (double& v : field) v = range > 0.0 ? 255.0 * (v - min) / range : 127.5;
  return GrayImage(width, height, std::move(field));
}

std::string zero_padded(std::size_t value, int width) {
  std::ostringstream os;
  os << std::setw(width) << std::setfill('0') << value;
  return os.str();
}

}  // namespace

std::string_view spectrum_name(Spectrum s) noexcept {
  switch (s) {
    case Spectrum::Blue: return "blue";
    case Spectrum::Green: return "green";
    case Spectrum::Red: return "red";
    case Spectrum::Nir: return "nir";
  }
  return "unknown";
}

Dataset make_dataset(std::vector<PalmSample> samples) {
  std::sort(samples.begin(), samples.end(), [](const PalmSample& a, const PalmSample& b) {
    return std::tie(a.person_id, a.sample_index) < std::tie(b.person_id, b.sample_index);
  });

  Dataset out;
  if (samples.empty()) {
    out.samples = std::move(samples);
    return out;
  }

  const std::size_t width = samples.front().spectra[0].width();
  const std::size_t height = samples.front().spectra[0].height();
  std::map<std::string, std::size_t> per_person;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PalmSample& s = samples[i];
    for (const GrayImage& img : s.spectra) {
      if (img.width() != width || img.height() != height) {
        throw Error(ErrorCode::InvalidDimensions,
                    "sample " + s.person_id + "/" + std::to_string(s.sample_index) +
                        " has a spectrum of a different size");
      }
    }
    if (i > 0 && samples[i - 1].person_id == s.person_id &&
        samples[i - 1].sample_index == s.sample_index) {
      throw Error(ErrorCode::InvalidParameter, "duplicate sample index " +
                                                   std::to_string(s.sample_index) +
                                                   " for person " + s.person_id);
    }
    ++per_person[s.person_id];
  }

  const std::size_t expected = per_person.begin()->second;
  for (const auto& [person, count] : per_person) {
    if (count != expected) {
      throw Error(ErrorCode::RaggedDataset, "person " + person + " has " + std::to_string(count) +
                                                " samples, expected " + std::to_string(expected));
    }
  }
  out.samples = std::move(samples);
  out.persons = per_person.size();
  out.samples_per_person = expected;
  return out;
}

Dataset load_dataset(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw Error(ErrorCode::FileNotFound, root.string());

  static const std::regex kName(R"(^(\d+)_(blue|green|red|nir)\.[A-Za-z0-9]+$)");

  std::vector<fs::path> person_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) person_dirs.push_back(entry.path());
  }
  std::sort(person_dirs.begin(), person_dirs.end());

  std::vector<PalmSample> samples;
  for (const fs::path& dir : person_dirs) {
    // sample_index -> which spectra were found
    std::map<std::size_t, std::pair<PalmSample, std::array<bool, kSpectrumCount>>> found;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().filename().string();
      std::smatch m;
      if (!std::regex_match(name, m, kName)) continue;
      const std::size_t index = std::stoul(m[1].str());
      std::size_t spectrum = 0;
      while (spectrum_name(kAllSpectra[spectrum]) != m[2].str()) ++spectrum;

      auto& [sample, seen] = found[index];
      if (seen[spectrum]) {
        throw Error(ErrorCode::InvalidParameter,
                    "duplicate " + m[2].str() + " image for sample " + std::to_string(index) +
                        " in " + dir.string());
      }
      sample.person_id = dir.filename().string();
      sample.sample_index = index;
      sample.spectra[spectrum] = load_image(entry.path());
      seen[spectrum] = true;
    }
    for (auto& [index, slot] : found) {
      for (std::size_t s = 0; s < kSpectrumCount; ++s) {
        if (!slot.second[s]) {
          throw Error(ErrorCode::MissingSpectrum,
                      dir.filename().string() + " sample " + std::to_string(index) + " lacks " +
                          std::string(spectrum_name(kAllSpectra[s])));
        }
      }
      samples.push_back(std::move(slot.first));
    }
  }
  if (samples.empty()) throw Error(ErrorCode::FileNotFound, "no samples under " + root.string());
  return make_dataset(std::move(samples));
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + root.string() + ": " + ec.message());
  for (const PalmSample& sample : dataset.samples) {
    const fs::path dir = root / sample.person_id;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    for (Spectrum s : kAllSpectra) {
      const std::string file =
          zero_padded(sample.sample_index, 2) + "_" + std::string(spectrum_name(s)) + ".pgm";
      save_image(sample.image(s), dir / file);
    }
  }
}

Dataset generate_synthetic(const SyntheticParams& params) {
  if (params.persons < 2) throw Error(ErrorCode::InvalidParameter, "persons must be >= 2");
  if (params.samples_per_person < 1) {
    throw Error(ErrorCode::InvalidParameter, "samples_per_person must be >= 1");
  }
  if (!(params.noise_sigma >= 0.0) || !std::isfinite(params.noise_sigma)) {
    throw Error(ErrorCode::InvalidParameter, "noise_sigma must be finite and >= 0");
  }
  if (params.width == 0 || params.height == 0 || params.width % kBlockSize != 0 ||
      params.height % kBlockSize != 0) {
    throw Error(ErrorCode::InvalidDimensions, "synthetic dimensions must be positive multiples of 16");
  }

  const int id_width = static_cast<int>(std::to_string(params.persons - 1).size());
  std::vector<PalmSample> samples;
  samples.reserve(params.persons * params.samples_per_person);
  for (std::size_t p = 0; p < params.persons; ++p) {
    std::array<GrayImage, kSpectrumCount> prototypes;
    for (std::size_t s = 0; s < kSpectrumCount; ++s) prototypes[s] = make_prototype(params, p, s);

    for (std::size_t k = 0; k < params.samples_per_person; ++k) {
      PalmSample sample;
      sample.person_id = "p" + zero_padded(p, std::max(id_width, 3));
      sample.sample_index = k;
      auto rng = seeded_engine(params.seed, {0x6e6f697365ULL, p, k});
      std::normal_distribution<double> noise(0.0, params.noise_sigma);
      for (std::size_t s = 0; s < kSpectrumCount; ++s) {
        GrayImage img = prototypes[s];
        if (params.noise_sigma > 0.0) {
          for (double& v : img.pixels()) v = std::clamp(v + noise(rng), 0.0, 255.0);
        }
        sample.spectra[s] = std::move(img);
      }
      samples.push_back(std::move(sample));
    }
  }
  return make_dataset(std::move(samples));
}

Split split(const Dataset& dataset, const SplitSpec& spec) {
  return split(dataset.persons, dataset.samples_per_person, spec);
}

Split split(std::size_t persons, std::size_t samples_per_person, const SplitSpec& spec) {
  if (spec.train_count < 1 || spec.train_count >= samples_per_person) {
    throw Error(ErrorCode::InvalidSplit,
                "train_count " + std::to_string(spec.train_count) + " must lie in [1, " +
                    std::to_string(samples_per_person) + ")");
  }
  Split out;
  const std::size_t n = samples_per_person;
  for (std::size_t person = 0; person < persons; ++person) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = person * n + i;
    if (spec.mode == SplitMode::SeededRandom) {
      auto rng = seeded_engine(spec.seed, {0x73706c6974ULL, person});
      std::shuffle(order.begin(), order.end(), rng);
    }
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.train_count));
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(spec.train_count), order.end());
    out.train.insert(out.train.end(), order.begin(),
                     order.begin() + static_cast<std::ptrdiff_t>(spec.train_count));
    out.test.insert(out.test.end(), order.begin() + static_cast<std::ptrdiff_t>(spec.train_count),
                    order.end());
  }
  return out;
}

}  // namespace palmid
