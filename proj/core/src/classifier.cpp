#include "palmid/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "palmid/error.hpp"

namespace palmid {
namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double summed_distance(const std::vector<FeatureVector>& a, std::span<const FeatureVector> b) {
  double total = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) total += euclidean(a[s], b[s]);
  return total;
}

std::vector<std::size_t> check_entries(const std::vector<GalleryEntry>& entries) {
  if (entries.empty()) throw Error(ErrorCode::EmptyGallery, "gallery has no entries");
  std::vector<std::size_t> dims;
  for (const FeatureVector& v : entries.front().spectra) dims.push_back(v.size());
  if (dims.empty()) throw Error(ErrorCode::DimensionMismatch, "gallery entries have no spectra");
  for (const GalleryEntry& e : entries) {
    if (e.spectra.size() != dims.size()) {
      throw Error(ErrorCode::DimensionMismatch, "gallery entries differ in spectrum count");
    }
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (e.spectra[s].size() != dims[s]) {
        throw Error(ErrorCode::DimensionMismatch, "gallery entries differ in feature dimension");
      }
    }
  }
  return dims;
}

// Ranking order: larger score, then smaller distance, then smaller index.
bool ranks_before(const ScoreRow& a, const ScoreRow& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.tiebreak_distance != b.tiebreak_distance) return a.tiebreak_distance < b.tiebreak_distance;
  return a.entry_index < b.entry_index;
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    }));
  }
  for (auto& t : tasks) t.get();
}

}  // namespace

FeatureVector SpectrumProjection::apply(std::span<const double> v) const {
  FeatureVector out = standardizer ? apply_standardizer(*standardizer, v)
                                   : FeatureVector(v.begin(), v.end());
  if (pca) out = pca_project(*pca, out, k);
  return out;
}

Gallery Gallery::raw(std::vector<GalleryEntry> entries) {
  Gallery g;
  g.input_dims_ = check_entries(entries);
  g.entries_ = std::move(entries);
  return g;
}

Gallery Gallery::projected(std::vector<GalleryEntry> entries,
                           std::vector<SpectrumProjection> projections) {
  Gallery g;
  g.input_dims_ = check_entries(entries);
  if (projections.size() != g.input_dims_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "need one projection per spectrum");
  }
  g.projections_ = std::move(projections);
  for (GalleryEntry& e : entries)
    for (std::size_t s = 0; s < e.spectra.size(); ++s) e.spectra[s] = g.projections_[s].apply(e.spectra[s]);
  g.entries_ = std::move(entries);
  return g;
}

GalleryMode Gallery::mode() const noexcept {
  if (projections_.empty()) return GalleryMode::Raw;
  for (const auto& p : projections_)
    if (p.pca) return GalleryMode::Pca;
  return GalleryMode::Standardized;
}

std::vector<FeatureVector> Gallery::prepare(std::span<const FeatureVector> probe) const {
  if (probe.size() != input_dims_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "probe has " + std::to_string(probe.size()) +
                                                  " spectra, gallery " +
                                                  std::to_string(input_dims_.size()));
  }
  std::vector<FeatureVector> out;
  out.reserve(probe.size());
  for (std::size_t s = 0; s < probe.size(); ++s) {
    if (probe[s].size() != input_dims_[s]) {
      throw Error(ErrorCode::DimensionMismatch,
                  "probe spectrum " + std::to_string(s) + " has dimension " +
                      std::to_string(probe[s].size()) + ", expected " + std::to_string(input_dims_[s]));
    }
    out.push_back(projections_.empty() ? probe[s] : projections_[s].apply(probe[s]));
  }
  return out;
}

std::vector<SpectrumProjection> fit_projections(std::span<const GalleryEntry> training, bool with_pca,
                                                PcaSolver solver) {
  if (training.empty()) throw Error(ErrorCode::EmptyGallery, "no training entries");
  const std::size_t spectra = training.front().spectra.size();
  std::vector<SpectrumProjection> out(spectra);
  for (std::size_t s = 0; s < spectra; ++s) {
    std::vector<FeatureVector> column;
    column.reserve(training.size());
    for (const GalleryEntry& e : training) column.push_back(e.spectra.at(s));
    out[s].standardizer = fit_standardizer(column);
    if (with_pca) {
      for (FeatureVector& v : column) v = apply_standardizer(*out[s].standardizer, v);
      auto model = std::make_shared<const PcaModel>(pca_fit(column, solver));
      out[s].k = model->component_count();
      out[s].pca = std::move(model);
    }
  }
  return out;
}

Match min_distance_classify(const Gallery& gallery, std::span<const FeatureVector> probe) {
  if (gallery.size() == 0) throw Error(ErrorCode::EmptyGallery, "gallery has no entries");
  const std::vector<FeatureVector> mapped = gallery.prepare(probe);
  Match best;
  best.distance = std::numeric_limits<double>::infinity();
  const auto& entries = gallery.entries();
  for (std::size_t j = 0; j < entries.size(); ++j) {
    const double d = summed_distance(entries[j].spectra, mapped);
    if (d < best.distance) best = {entries[j].person_id, j, d};
  }
  return best;
}

double Scoreboard::total_votes() const {
  double total = 0.0;
  for (const ScoreRow& r : rows) total += r.score;
  return total;
}

std::vector<ScoreRow> Scoreboard::ranked() const {
  std::vector<ScoreRow> out = rows;
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

VoteResult majority_vote_classify(const Gallery& gallery, std::span<const FeatureVector> probe,
                                  const VoteOptions& options) {
  if (gallery.size() == 0) throw Error(ErrorCode::EmptyGallery, "gallery has no entries");
  if (gallery.mode() != GalleryMode::Raw) {
    throw Error(ErrorCode::ModeMismatch, "majority voting runs on raw features");
  }
  const std::vector<FeatureVector> mapped = gallery.prepare(probe);
  const auto& entries = gallery.entries();

  const std::size_t width = options.granularity == VoteGranularity::Scalar ? 1 : options.block_width;
  if (width == 0) throw Error(ErrorCode::InvalidParameter, "block width must be positive");
  for (std::size_t s = 0; s < mapped.size(); ++s) {
    if (mapped[s].size() != mapped.front().size() || mapped[s].size() % width != 0) {
      throw Error(ErrorCode::DimensionMismatch,
                  "feature dimension must match across spectra and divide into vote groups");
    }
  }
  const std::size_t voters = mapped.front().size() / width;
  if (options.weights) {
    const auto& w = *options.weights;
    if (w.size() != voters) {
      throw Error(ErrorCode::BadWeights, "expected " + std::to_string(voters) + " weights, got " +
                                             std::to_string(w.size()));
    }
    for (double x : w) {
      if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::BadWeights, "weights must be finite and >= 0");
    }
  }

  std::vector<double> scores(entries.size(), 0.0);
  std::vector<double> best(voters);
  std::vector<std::size_t> arg(voters);
  for (std::size_t s = 0; s < mapped.size(); ++s) {
    const FeatureVector& p = mapped[s];
    std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
    std::fill(arg.begin(), arg.end(), 0);
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const FeatureVector& e = entries[j].spectra[s];
      for (std::size_t i = 0; i < voters; ++i) {
        double d;
        if (width == 1) {
          d = std::abs(p[i] - e[i]);
        } else {
          d = 0.0;
          for (std::size_t t = i * width; t < (i + 1) * width; ++t) d += (p[t] - e[t]) * (p[t] - e[t]);
        }
        // Strict comparison: the lowest index keeps a tied vote.
        if (d < best[i]) {
          best[i] = d;
          arg[i] = j;
        }
      }
    }
    for (std::size_t i = 0; i < voters; ++i) scores[arg[i]] += options.weights ? (*options.weights)[i] : 1.0;
  }

  Scoreboard board;
  if (options.pooling == VotePooling::Entry) {
    for (std::size_t j = 0; j < entries.size(); ++j)
      board.rows.push_back({j, entries[j].person_id, scores[j], summed_distance(entries[j].spectra, mapped)});
  } else {
    std::map<std::string, std::size_t> row_of;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const double d = summed_distance(entries[j].spectra, mapped);
      auto [it, inserted] = row_of.try_emplace(entries[j].person_id, board.rows.size());
      if (inserted) {
        board.rows.push_back({j, entries[j].person_id, scores[j], d});
        continue;
      }
      ScoreRow& row = board.rows[it->second];
      row.score += scores[j];
      if (d < row.tiebreak_distance) {
        row.tiebreak_distance = d;
        row.entry_index = j;
      }
    }
  }
  for (std::size_t r = 1; r < board.rows.size(); ++r)
    if (ranks_before(board.rows[r], board.rows[board.winner])) board.winner = r;

  VoteResult result{board.winning_row().person_id, std::move(board)};
  return result;
}

void write_scoreboard_csv(std::ostream& out, const Scoreboard& board) {
  out << "entry_index,person_id,score,tiebreak_distance\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const ScoreRow& r : board.ranked())
    out << r.entry_index << ',' << r.person_id << ',' << r.score << ',' << r.tiebreak_distance << '\n';
}

double evaluate(const Gallery& gallery, std::span<const Probe> probes, Method method,
                const VoteOptions& options) {
  if (probes.empty()) throw Error(ErrorCode::InvalidParameter, "no probes to evaluate");
  std::vector<char> correct(probes.size(), 0);
  std::vector<std::exception_ptr> failures(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    try {
      const std::string predicted =
          method == Method::MinDistance
              ? min_distance_classify(gallery, probes[i].spectra).person_id
              : majority_vote_classify(gallery, probes[i].spectra, options).person_id;
      correct[i] = predicted == probes[i].person_id;
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  const auto hits = std::count(correct.begin(), correct.end(), 1);
  return static_cast<double>(hits) / static_cast<double>(probes.size());
}

}  // namespace palmid
