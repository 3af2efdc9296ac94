#include <benchmark/benchmark.h>

#include <random>

#include "palmid/classifier.hpp"
#include "palmid/features.hpp"
#include "palmid/pca.hpp"
#include "palmid/transforms.hpp"

namespace {

palmid::Block random_block(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pixel(0.0, 255.0);
  palmid::Block b;
  for (double& v : b.values) v = pixel(rng);
  return b;
}

palmid::GrayImage random_image(std::uint64_t seed, std::size_t size) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pixel(0.0, 255.0);
  palmid::GrayImage img(size, size);
  for (double& v : img.pixels()) v = pixel(rng);
  return img;
}

void BM_Dct2(benchmark::State& state) {
  const palmid::Block b = random_block(1);
  for (auto _ : state) benchmark::DoNotOptimize(palmid::dct2(b));
}
BENCHMARK(BM_Dct2);

void BM_Dwt2Db2(benchmark::State& state) {
  const palmid::Block b = random_block(2);
  for (auto _ : state) benchmark::DoNotOptimize(palmid::dwt2_db2(b));
}
BENCHMARK(BM_Dwt2Db2);

void BM_ImageFeatures(benchmark::State& state) {
  const palmid::GrayImage img = random_image(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(palmid::image_features(img));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ImageFeatures)->Arg(128)->Arg(256);

// Gallery of `range(0)` entries, 4 spectra of 1152 features each.
void BM_MajorityVote(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> value(0.0, 1000.0);
  std::vector<palmid::GalleryEntry> entries;
  for (long j = 0; j < state.range(0); ++j) {
    palmid::GalleryEntry e{"p" + std::to_string(j), 0, {}};
    for (int s = 0; s < 4; ++s) {
      palmid::FeatureVector v(1152);
      for (double& x : v) x = value(rng);
      e.spectra.push_back(std::move(v));
    }
    entries.push_back(std::move(e));
  }
  const auto probe = entries.front().spectra;
  const palmid::Gallery gallery = palmid::Gallery::raw(std::move(entries));
  for (auto _ : state) benchmark::DoNotOptimize(palmid::majority_vote_classify(gallery, probe));
}
BENCHMARK(BM_MajorityVote)->Arg(200)->Arg(2000);

void BM_PcaFit(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> value(0.0, 1.0);
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<double>> data(200, std::vector<double>(dim));
  for (auto& v : data)
    for (double& x : v) x = value(rng);
  const auto solver = state.range(1) == 0 ? palmid::PcaSolver::Covariance : palmid::PcaSolver::Gram;
  for (auto _ : state) benchmark::DoNotOptimize(palmid::pca_fit(data, solver));
}
BENCHMARK(BM_PcaFit)->Args({288, 0})->Args({288, 1})->Args({1152, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
