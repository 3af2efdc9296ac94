#include "palmid/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "palmid/error.hpp"

namespace palmid {
namespace {

constexpr std::array<char, 8> kMagic{'P', 'A', 'L', 'M', 'P', 'C', 'A', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "model serialization assumes a little-endian host");

void canonicalize_sign(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  if (!v.empty() && v[arg] < 0.0)
    for (double& x : v) x = -x;
}

void clamp_spectrum(std::vector<double>& eigenvalues) {
  const double largest = eigenvalues.empty() ? 0.0 : std::max(eigenvalues.front(), 0.0);
  for (double& l : eigenvalues)
    if (l < kEigenvalueFloor * largest || l < 0.0) l = 0.0;
}

template <class T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error(ErrorCode::UnsupportedFormat, "truncated PCA model");
  return value;
}

void write_doubles(std::ostream& out, std::span<const double> values) {
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::vector<double> read_doubles(std::istream& in, std::size_t count) {
  std::vector<double> values(count);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw Error(ErrorCode::UnsupportedFormat, "truncated PCA model");
  return values;
}

}  // namespace

PcaModel pca_fit(std::span<const std::vector<double>> vectors, PcaSolver solver) {
  if (vectors.size() < 2) throw Error(ErrorCode::TooFewSamples, "PCA needs at least 2 vectors");
  const std::size_t dim = vectors.front().size();
  const std::size_t n = vectors.size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw Error(ErrorCode::LengthMismatch, "PCA inputs differ in length");
  }

  Eigen::MatrixXd centered(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i)
    centered.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(vectors[i].data(), static_cast<Eigen::Index>(dim));
  const Eigen::RowVectorXd mean = centered.colwise().mean();
  centered.rowwise() -= mean;

  PcaModel model;
  model.dim = dim;
  model.mean.assign(mean.data(), mean.data() + dim);

  if (solver == PcaSolver::Covariance) {
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim));
    scatter.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scatter, Eigen::ComputeEigenvectors);
    if (eig.info() != Eigen::Success) {
      throw Error(ErrorCode::DegenerateSpectrum, "eigendecomposition did not converge");
    }
    // Eigen sorts ascending.
    for (Eigen::Index j = static_cast<Eigen::Index>(dim); j-- > 0;) {
      model.eigenvalues.push_back(eig.eigenvalues()(j));
      const auto col = eig.eigenvectors().col(j);
      model.components.emplace_back(col.data(), col.data() + dim);
    }
    clamp_spectrum(model.eigenvalues);
  } else {
    const Eigen::MatrixXd gram = centered * centered.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::ComputeEigenvectors);
    if (eig.info() != Eigen::Success) {
      throw Error(ErrorCode::DegenerateSpectrum, "eigendecomposition did not converge");
    }
    const double largest = std::max(eig.eigenvalues()(static_cast<Eigen::Index>(n) - 1), 0.0);
    for (Eigen::Index j = static_cast<Eigen::Index>(n); j-- > 0;) {
      const double lambda = eig.eigenvalues()(j);
      if (!(lambda > kEigenvalueFloor * largest) || lambda <= 0.0) break;
      // C (Z^T u) = Z^T (Z Z^T) u = lambda Z^T u, and |Z^T u| = sqrt(lambda).
      const Eigen::VectorXd component = centered.transpose() * eig.eigenvectors().col(j) / std::sqrt(lambda);
      model.eigenvalues.push_back(lambda);
      model.components.emplace_back(component.data(), component.data() + dim);
    }
  }
  for (auto& c : model.components) canonicalize_sign(c);
  return model;
}

std::vector<double> pca_project(const PcaModel& model, std::span<const double> v, std::size_t k) {
  if (k < 1 || k > model.component_count()) {
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside [1, " +
                                            std::to_string(model.component_count()) + "]");
  }
  if (v.size() != model.dim) {
    throw Error(ErrorCode::LengthMismatch, "vector length " + std::to_string(v.size()) +
                                               " vs model dimension " + std::to_string(model.dim));
  }
  std::vector<double> centered(v.begin(), v.end());
  for (std::size_t i = 0; i < centered.size(); ++i) centered[i] -= model.mean[i];
  std::vector<double> coords(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const std::vector<double>& c = model.components[j];
    double acc = 0.0;
    for (std::size_t i = 0; i < centered.size(); ++i) acc += centered[i] * c[i];
    coords[j] = acc;
  }
  return coords;
}

std::vector<double> pca_reconstruct(const PcaModel& model, std::span<const double> coords) {
  if (coords.size() > model.component_count()) {
    throw Error(ErrorCode::KOutOfRange, "more coordinates than components");
  }
  std::vector<double> out = model.mean;
  for (std::size_t j = 0; j < coords.size(); ++j)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coords[j] * model.components[j][i];
  return out;
}

double retained_energy(const PcaModel& model, std::size_t k) {
  if (k < 1 || k > model.dim) {
    throw Error(ErrorCode::KOutOfRange,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(model.dim) + "]");
  }
  double kept = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < model.eigenvalues.size(); ++i) {
    total += model.eigenvalues[i];
    if (i < k) kept += model.eigenvalues[i];
  }
  if (!(total > 0.0)) throw Error(ErrorCode::DegenerateSpectrum, "all eigenvalues are zero");
  return kept / total;
}

void save_pca_model(const PcaModel& model, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  write_pod(out, kFormatVersion);
  write_pod(out, static_cast<std::uint64_t>(model.dim));
  write_pod(out, static_cast<std::uint64_t>(model.component_count()));
  write_doubles(out, model.mean);
  write_doubles(out, model.eigenvalues);
  for (const auto& c : model.components) write_doubles(out, c);
  if (!out) throw Error(ErrorCode::IoError, "failed to write PCA model");
}

PcaModel load_pca_model(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(ErrorCode::UnsupportedFormat, "not a PCA model file");
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kFormatVersion) {
    throw Error(ErrorCode::UnsupportedFormat, "unsupported PCA model version " + std::to_string(version));
  }
  PcaModel model;
  model.dim = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
  const auto count = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
  if (count > model.dim) throw Error(ErrorCode::UnsupportedFormat, "corrupt PCA model header");
  model.mean = read_doubles(in, model.dim);
  model.eigenvalues = read_doubles(in, count);
  model.components.reserve(count);
  for (std::size_t j = 0; j < count; ++j) model.components.push_back(read_doubles(in, model.dim));
  return model;
}

void save_pca_model(const PcaModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  save_pca_model(model, out);
}

PcaModel load_pca_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  return load_pca_model(in);
}

}  // namespace palmid
