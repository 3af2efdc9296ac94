#ifndef PALMID_CLASSIFIER_HPP
#define PALMID_CLASSIFIER_HPP

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "palmid/features.hpp"
#include "palmid/pca.hpp"

namespace palmid {

/// One enrolled training sample: a flattened feature vector per spectrum.
struct GalleryEntry {
  std::string person_id;
  std::size_t sample_index = 0;
  std::vector<FeatureVector> spectra;
};

/// Labeled test sample.
struct Probe {
  std::string person_id;
  std::vector<FeatureVector> spectra;
};

/// Per-spectrum feature map applied to gallery entries and probes alike:
/// optional standardization, then optional projection on the first `k`
/// principal components.
struct SpectrumProjection {
  std::optional<Standardizer> standardizer;
  std::shared_ptr<const PcaModel> pca;
  std::size_t k = 0;

  FeatureVector apply(std::span<const double> v) const;
};

enum class GalleryMode { Raw, Standardized, Pca };

class Gallery {
 public:
  /// Features are used as given. Throws EmptyGallery or DimensionMismatch.
  static Gallery raw(std::vector<GalleryEntry> entries);

  /// Entries are mapped through `projections` (one per spectrum) on entry.
  static Gallery projected(std::vector<GalleryEntry> entries,
                           std::vector<SpectrumProjection> projections);

  GalleryMode mode() const noexcept;
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t spectrum_count() const noexcept { return input_dims_.size(); }
  /// Per-spectrum input dimension expected from probes.
  std::size_t input_dim(std::size_t spectrum) const { return input_dims_[spectrum]; }
  /// Stored entries, already mapped through the projections.
  const std::vector<GalleryEntry>& entries() const noexcept { return entries_; }

  /// Checks the probe against the input dimensions and maps it into gallery
  /// space. Throws DimensionMismatch.
  std::vector<FeatureVector> prepare(std::span<const FeatureVector> probe) const;

 private:
  std::vector<GalleryEntry> entries_;
  std::vector<std::size_t> input_dims_;
  std::vector<SpectrumProjection> projections_;
};

/// Fits one standardizer (and, when `with_pca`, one full PCA model on the
/// standardized features) per spectrum over the training entries. The
/// returned projections have `k` set to the number of components.
std::vector<SpectrumProjection> fit_projections(std::span<const GalleryEntry> training,
                                                bool with_pca,
                                                PcaSolver solver = PcaSolver::Covariance);

struct Match {
  std::string person_id;
  std::size_t entry_index = 0;
  double distance = 0.0;
};

/// Gallery entry minimizing the per-spectrum Euclidean distances summed over
/// spectra; ties go to the lowest entry index.
Match min_distance_classify(const Gallery& gallery, std::span<const FeatureVector> probe);

enum class VoteGranularity {
  /// One vote per scalar feature (D votes per spectrum).
  Scalar,
  /// One vote per block column of `block_width` features.
  Block,
};

enum class VotePooling {
  /// Votes accrue to individual gallery entries.
  Entry,
  /// Votes of all entries of a person are pooled.
  Person,
};

struct VoteOptions {
  /// Per-vote weights, shared by all spectra. Uniform when empty.
  std::optional<std::vector<double>> weights;
  VoteGranularity granularity = VoteGranularity::Scalar;
  std::size_t block_width = features_per_block();
  VotePooling pooling = VotePooling::Entry;
};

struct ScoreRow {
  std::size_t entry_index = 0;
  std::string person_id;
  double score = 0.0;
  /// Euclidean distance to the probe, summed over spectra. Under person
  /// pooling, the smallest such distance among the person's entries, and
  /// `entry_index` names that entry.
  double tiebreak_distance = 0.0;
};

struct Scoreboard {
  std::vector<ScoreRow> rows;
  std::size_t winner = 0;  // position in `rows`

  const ScoreRow& winning_row() const { return rows[winner]; }
  double total_votes() const;
  /// Rows by score descending, then tiebreak distance, then entry index.
  std::vector<ScoreRow> ranked() const;
};

struct VoteResult {
  std::string person_id;
  Scoreboard scoreboard;
};

/// Nearest-neighbor vote per feature and spectrum; the highest tally wins,
/// ties broken by smallest summed distance and then lowest index. Requires
/// a Raw gallery (ModeMismatch otherwise); throws BadWeights or
/// DimensionMismatch.
VoteResult majority_vote_classify(const Gallery& gallery, std::span<const FeatureVector> probe,
                                  const VoteOptions& options = {});

/// CSV `entry_index,person_id,score,tiebreak_distance`, score descending.
void write_scoreboard_csv(std::ostream& out, const Scoreboard& board);

enum class Method { MinDistance, MajorityVote };

/// Fraction of probes whose predicted person matches the label.
double evaluate(const Gallery& gallery, std::span<const Probe> probes, Method method,
                const VoteOptions& options = {});

}  // namespace palmid

#endif  // PALMID_CLASSIFIER_HPP
