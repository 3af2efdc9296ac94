// palmid: multispectral palmprint identification from block DCT and wavelet
// features.
//
//   palmid synth --out data/ [--persons 50 --samples 12 --size 128 --sigma 8]
//   palmid extract --data data/ --out features.csv
//   palmid table1 --synthetic --split 4/12,5/12,6/12 --out table1.csv
//   palmid pca-curve --synthetic --k 10,50,100 --out curve.csv

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "palmid/dataset.hpp"
#include "palmid/error.hpp"
#include "palmid/features.hpp"
#include "palmid/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string data;
  bool synthetic = false;
  std::string split;
  std::string k;
  std::size_t dct_count = palmid::kDefaultDctCount;
  std::uint64_t seed = 42;
  std::string out;

  std::size_t persons = 50;
  std::size_t samples = 12;
  std::size_t size = 128;
  double sigma = 8.0;
  std::string method = "vote";
  std::string split_mode = "first";
  std::string solver = "covariance";
  bool no_timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_source_options(CLI::App* cmd, Options& opt) {
  auto* data = cmd->add_option("--data", opt.data, "Dataset root (<person>/<index>_<spectrum>.pgm)");
  auto* synth = cmd->add_flag("--synthetic", opt.synthetic, "Generate a synthetic dataset instead");
  data->excludes(synth);
  cmd->add_option("--persons", opt.persons, "Synthetic: number of persons")->capture_default_str();
  cmd->add_option("--samples", opt.samples, "Synthetic: samples per person")->capture_default_str();
  cmd->add_option("--size", opt.size, "Synthetic: image width and height")->capture_default_str();
  cmd->add_option("--sigma", opt.sigma, "Synthetic: pixel noise std-dev")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "Seed for synthetic data and random splits")->capture_default_str();
  cmd->add_option("--dct-count", opt.dct_count, "Zig-zag DCT coefficients per block")->capture_default_str();
}

void add_run_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--split", opt.split, "Training fractions, e.g. 4/12,5/12,6/12");
  cmd->add_option("--split-mode", opt.split_mode, "first | random")
      ->check(CLI::IsMember({"first", "random"}))
      ->capture_default_str();
  cmd->add_flag("--no-timing", opt.no_timing, "Leave the seconds column empty");
}

palmid::SyntheticParams synthetic_params(const Options& opt) {
  palmid::SyntheticParams p;
  p.persons = opt.persons;
  p.samples_per_person = opt.samples;
  p.width = opt.size;
  p.height = opt.size;
  p.noise_sigma = opt.sigma;
  p.seed = opt.seed;
  return p;
}

palmid::RunConfig run_config(const Options& opt) {
  if (opt.data.empty() && !opt.synthetic) throw UsageError("one of --data or --synthetic is required");
  palmid::RunConfig config;
  if (opt.synthetic) {
    config.source = synthetic_params(opt);
  } else {
    config.source = std::filesystem::path(opt.data);
  }
  if (!opt.split.empty()) config.splits = palmid::parse_fractions(opt.split);
  config.split_mode = opt.split_mode == "random" ? palmid::SplitMode::SeededRandom : palmid::SplitMode::FirstN;
  config.method = opt.method == "min-distance" ? palmid::Method::MinDistance : palmid::Method::MajorityVote;
  config.solver = opt.solver == "gram" ? palmid::PcaSolver::Gram : palmid::PcaSolver::Covariance;
  config.dct_count = opt.dct_count;
  config.seed = opt.seed;
  return config;
}

// "all" stands for the full per-spectrum feature dimension.
std::vector<std::size_t> parse_k_list(const std::string& text, std::size_t full_dim) {
  std::vector<std::size_t> ks;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "all") {
      ks.push_back(full_dim);
      continue;
    }
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      ks.push_back(value);
    } catch (const std::logic_error&) {
      throw UsageError("malformed --k entry '" + item + "'");
    }
  }
  if (ks.empty()) throw UsageError("--k needs at least one value");
  return ks;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw palmid::Error(palmid::ErrorCode::IoError, "cannot open " + path);
  fn(out);
}

int run(int argc, char** argv) {
  CLI::App app{"Multispectral palmprint identification with block DCT/wavelet features"};
  app.require_subcommand(1);
  Options opt;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset on disk");
  synth->add_option("--out", opt.out, "Output directory")->required();
  add_source_options(synth, opt);

  auto* extract = app.add_subcommand("extract", "Write per-image feature vectors as CSV");
  add_source_options(extract, opt);
  extract->add_option("--out", opt.out, "Output CSV (stdout when omitted)");

  auto* table1 = app.add_subcommand("table1", "Accuracy per training fraction over all features");
  add_source_options(table1, opt);
  add_run_options(table1, opt);
  table1->add_option("--method", opt.method, "vote | min-distance")
      ->check(CLI::IsMember({"vote", "min-distance"}))
      ->capture_default_str();
  table1->add_option("--out", opt.out, "Report CSV (stdout when omitted)");

  auto* curve = app.add_subcommand("pca-curve", "Minimum-distance accuracy versus PCA components");
  add_source_options(curve, opt);
  add_run_options(curve, opt);
  curve->add_option("--k", opt.k, "Component counts, e.g. 10,50,100,all")->required();
  curve->add_option("--solver", opt.solver, "covariance | gram")
      ->check(CLI::IsMember({"covariance", "gram"}))
      ->capture_default_str();
  curve->add_option("--out", opt.out, "Report CSV (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (synth->parsed()) {
    const palmid::Dataset dataset = palmid::generate_synthetic(synthetic_params(opt));
    palmid::save_dataset(dataset, opt.out);
    std::cerr << "wrote " << dataset.persons << " persons x " << dataset.samples_per_person
              << " samples to " << opt.out << '\n';
  } else if (extract->parsed()) {
    const palmid::RunConfig config = run_config(opt);
    const palmid::FeatureSet features = palmid::prepare_features(config);
    with_output(opt.out, [&](std::ostream& out) { palmid::write_feature_csv(out, features.samples); });
  } else if (table1->parsed()) {
    const palmid::RunConfig config = run_config(opt);
    const palmid::Report report = palmid::run_table1(config);
    with_output(opt.out, [&](std::ostream& out) { palmid::write_report_csv(out, report, !opt.no_timing); });
  } else if (curve->parsed()) {
    palmid::RunConfig config = run_config(opt);
    config.method = palmid::Method::MinDistance;
    const palmid::FeatureSet features = palmid::prepare_features(config);
    config.pca_k = parse_k_list(opt.k, features.dim);
    const palmid::Report report = palmid::run_pca_curve(config, features);
    with_output(opt.out, [&](std::ostream& out) { palmid::write_report_csv(out, report, !opt.no_timing); });
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const palmid::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (palmid::kind_of(e.code())) {
      case palmid::ErrorKind::Usage: return kExitUsage;
      case palmid::ErrorKind::Numerical: return kExitNumerical;
      case palmid::ErrorKind::Data: return kExitData;
    }
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
