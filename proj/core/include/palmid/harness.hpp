#ifndef PALMID_HARNESS_HPP
#define PALMID_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "palmid/classifier.hpp"
#include "palmid/dataset.hpp"
#include "palmid/features.hpp"
#include "palmid/pca.hpp"

namespace palmid {

/// Training fraction written "train/total", e.g. 4/12.
struct Fraction {
  std::size_t train = 0;
  std::size_t total = 0;

  std::string str() const { return std::to_string(train) + "/" + std::to_string(total); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Parses "4/12" or a comma list "4/12,5/12". Throws InvalidParameter.
std::vector<Fraction> parse_fractions(const std::string& text);

struct RunConfig {
  std::variant<std::filesystem::path, SyntheticParams> source = SyntheticParams{};
  /// Empty means 4/12, 5/12, 6/12 for table1 and 4/12 for the PCA curve.
  std::vector<Fraction> splits;
  SplitMode split_mode = SplitMode::FirstN;
  Method method = Method::MajorityVote;
  /// Component counts for the PCA sweep; only valid with MinDistance.
  std::vector<std::size_t> pca_k;
  std::size_t dct_count = kDefaultDctCount;
  std::uint64_t seed = 42;
  PcaSolver solver = PcaSolver::Covariance;
  VoteOptions vote;
};

/// Throws InvalidParameter for inconsistent combinations.
void validate(const RunConfig& config);

/// Features of a whole dataset, person-major as in `Dataset`.
struct FeatureSet {
  std::vector<SampleFeatures> samples;
  std::size_t persons = 0;
  std::size_t samples_per_person = 0;
  std::size_t dim = 0;  // per spectrum
};

FeatureSet make_feature_set(const Dataset& dataset, std::size_t dct_count = kDefaultDctCount);

/// Loads or generates the configured dataset and extracts its features.
FeatureSet prepare_features(const RunConfig& config);

struct ReportRow {
  std::string scenario;
  std::string split;
  std::string k;  // component count, or "all"
  double accuracy = 0.0;
  std::size_t probes = 0;
  double seconds = 0.0;
};

struct Report {
  std::vector<ReportRow> rows;
};

/// Builds the gallery (train side) and probes (test side) of one split.
struct SplitData {
  std::vector<GalleryEntry> gallery;
  std::vector<Probe> probes;
};

SplitData partition(const FeatureSet& features, const SplitSpec& spec);

/// One row per training fraction: the configured matcher over all features.
Report run_table1(const RunConfig& config, const FeatureSet& features);
Report run_table1(const RunConfig& config);

/// One row per (fraction, k), k ascending: per-spectrum PCA on standardized
/// training features, then minimum-distance matching on k components.
Report run_pca_curve(const RunConfig& config, const FeatureSet& features);
Report run_pca_curve(const RunConfig& config);

inline constexpr const char* kReportHeader = "scenario,split,k,accuracy,probes,seconds";

/// Writes the report CSV. With `include_timing == false` the seconds column
/// is left empty so reruns compare byte-for-byte.
void write_report_csv(std::ostream& out, const Report& report, bool include_timing = true);

}  // namespace palmid

#endif  // PALMID_HARNESS_HPP
