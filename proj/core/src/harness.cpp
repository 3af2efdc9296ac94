#include "palmid/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "palmid/error.hpp"

namespace palmid {
namespace {

std::size_t parse_count(const std::string& text, const std::string& whole) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::InvalidParameter, "malformed fraction '" + whole + "'");
  }
  return std::stoul(text);
}

SplitSpec split_spec_for(const RunConfig& config, const FeatureSet& features, const Fraction& f) {
  if (f.total != features.samples_per_person) {
    throw Error(ErrorCode::InvalidSplit, "split " + f.str() + " does not match " +
                                             std::to_string(features.samples_per_person) +
                                             " samples per person");
  }
  return SplitSpec{f.train, config.split_mode, config.seed};
}

std::vector<Fraction> fractions_or(const RunConfig& config, std::vector<Fraction> fallback) {
  return config.splits.empty() ? fallback : config.splits;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<Fraction> parse_fractions(const std::string& text) {
  std::vector<Fraction> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) throw Error(ErrorCode::InvalidParameter, "malformed fraction '" + item + "'");
    Fraction f{parse_count(item.substr(0, slash), item), parse_count(item.substr(slash + 1), item)};
    if (f.train < 1 || f.train >= f.total) {
      throw Error(ErrorCode::InvalidSplit, "fraction " + item + " must satisfy 1 <= a < b");
    }
    out.push_back(f);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidParameter, "empty split list");
  return out;
}

void validate(const RunConfig& config) {
  if (!config.pca_k.empty() && config.method != Method::MinDistance) {
    throw Error(ErrorCode::InvalidParameter, "a PCA sweep requires the minimum-distance method");
  }
  for (std::size_t k : config.pca_k)
    if (k == 0) throw Error(ErrorCode::KOutOfRange, "k must be >= 1");
  if (config.dct_count < 1 || config.dct_count > kBlockArea) {
    throw Error(ErrorCode::CountOutOfRange, "dct count must be in [1, 256]");
  }
}

FeatureSet make_feature_set(const Dataset& dataset, std::size_t dct_count) {
  FeatureSet set;
  set.samples = extract_features(dataset, dct_count);
  set.persons = dataset.persons;
  set.samples_per_person = dataset.samples_per_person;
  set.dim = set.samples.empty() ? 0 : set.samples.front().spectra[0].size();
  return set;
}

FeatureSet prepare_features(const RunConfig& config) {
  validate(config);
  const Dataset dataset = std::holds_alternative<std::filesystem::path>(config.source)
                              ? load_dataset(std::get<std::filesystem::path>(config.source))
                              : generate_synthetic(std::get<SyntheticParams>(config.source));
  return make_feature_set(dataset, config.dct_count);
}

SplitData partition(const FeatureSet& features, const SplitSpec& spec) {
  const Split s = split(features.persons, features.samples_per_person, spec);
  SplitData out;
  out.gallery.reserve(s.train.size());
  for (std::size_t i : s.train) {
    const SampleFeatures& f = features.samples[i];
    out.gallery.push_back({f.person_id, f.sample_index, {f.spectra.begin(), f.spectra.end()}});
  }
  out.probes.reserve(s.test.size());
  for (std::size_t i : s.test) {
    const SampleFeatures& f = features.samples[i];
    out.probes.push_back({f.person_id, {f.spectra.begin(), f.spectra.end()}});
  }
  return out;
}

Report run_table1(const RunConfig& config, const FeatureSet& features) {
  validate(config);
  Report report;
  for (const Fraction& f : fractions_or(config, {{4, 12}, {5, 12}, {6, 12}})) {
    const auto start = std::chrono::steady_clock::now();
    SplitData data = partition(features, split_spec_for(config, features, f));
    const Gallery gallery =
        config.method == Method::MajorityVote
            ? Gallery::raw(std::move(data.gallery))
            : Gallery::projected(data.gallery, fit_projections(data.gallery, false));
    const double accuracy = evaluate(gallery, data.probes, config.method, config.vote);
    report.rows.push_back({"table1", f.str(), "all", accuracy, data.probes.size(), seconds_since(start)});
  }
  return report;
}

Report run_table1(const RunConfig& config) { return run_table1(config, prepare_features(config)); }

Report run_pca_curve(const RunConfig& config, const FeatureSet& features) {
  validate(config);
  if (config.method != Method::MinDistance) {
    throw Error(ErrorCode::InvalidParameter, "the PCA curve uses the minimum-distance method");
  }
  if (config.pca_k.empty()) throw Error(ErrorCode::InvalidParameter, "no k values to sweep");
  std::vector<std::size_t> ks = config.pca_k;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  Report report;
  for (const Fraction& f : fractions_or(config, {{4, 12}})) {
    const auto fit_start = std::chrono::steady_clock::now();
    const SplitData data = partition(features, split_spec_for(config, features, f));
    const std::vector<SpectrumProjection> full = fit_projections(data.gallery, true, config.solver);
    for (const SpectrumProjection& p : full) {
      if (std::all_of(p.pca->eigenvalues.begin(), p.pca->eigenvalues.end(), [](double l) { return l == 0.0; })) {
        throw Error(ErrorCode::DegenerateSpectrum, "training features have zero variance");
      }
    }
    const double fit_seconds = seconds_since(fit_start);
    for (std::size_t k : ks) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<SpectrumProjection> projections = full;
      for (SpectrumProjection& p : projections) {
        if (k > p.pca->component_count()) {
          throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " exceeds " +
                                                  std::to_string(p.pca->component_count()) +
                                                  " available components");
        }
        p.k = k;
      }
      const Gallery gallery = Gallery::projected(data.gallery, std::move(projections));
      const double accuracy = evaluate(gallery, data.probes, Method::MinDistance);
      report.rows.push_back({"pca-curve", f.str(), std::to_string(k), accuracy, data.probes.size(),
                             fit_seconds + seconds_since(start)});
    }
  }
  return report;
}

Report run_pca_curve(const RunConfig& config) { return run_pca_curve(config, prepare_features(config)); }

void write_report_csv(std::ostream& out, const Report& report, bool include_timing) {
  out << kReportHeader << '\n';
  for (const ReportRow& r : report.rows) {
    std::ostringstream accuracy;
    accuracy << std::setprecision(std::numeric_limits<double>::max_digits10) << r.accuracy;
    out << r.scenario << ',' << r.split << ',' << r.k << ',' << accuracy.str() << ',' << r.probes << ',';
    if (include_timing) out << std::fixed << std::setprecision(3) << r.seconds << std::defaultfloat;
    out << '\n';
  }
}

}  // namespace palmid
