#ifndef PALMID_PCA_HPP
#define PALMID_PCA_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace palmid {

/// Mean vector plus eigenpairs of the scatter matrix C = sum_i z_i z_i^T of
/// the centered training vectors, eigenvalues non-increasing.
struct PcaModel {
  std::size_t dim = 0;
  std::vector<double> mean;
  std::vector<double> eigenvalues;
  /// Unit-norm eigenvectors, one per eigenvalue. The coordinate of largest
  /// magnitude in each is positive.
  std::vector<std::vector<double>> components;

  std::size_t component_count() const noexcept { return components.size(); }
};

enum class PcaSolver {
  /// Diagonalize the D x D scatter matrix. Yields a complete basis of D
  /// components, so projecting onto all of them is an isometry.
  Covariance,
  /// Diagonalize the N x N Gram matrix Z Z^T. Cheaper when N << D, but only
  /// returns components with non-zero eigenvalue.
  Gram,
};

/// Eigenvalues below this fraction of the largest are clamped to zero.
inline constexpr double kEigenvalueFloor = 1e-12;

/// Throws TooFewSamples (N < 2) or LengthMismatch.
PcaModel pca_fit(std::span<const std::vector<double>> vectors,
                 PcaSolver solver = PcaSolver::Covariance);

/// Coordinates <v - mean, component_i> for the first k components.
/// Throws KOutOfRange unless 1 <= k <= component_count().
std::vector<double> pca_project(const PcaModel& model, std::span<const double> v, std::size_t k);

/// mean + sum_i coords[i] * component_i.
std::vector<double> pca_reconstruct(const PcaModel& model, std::span<const double> coords);

/// Share of the eigenvalue sum carried by the first k eigenvalues.
/// Throws KOutOfRange unless 1 <= k <= dim, DegenerateSpectrum when every
/// eigenvalue is zero.
double retained_energy(const PcaModel& model, std::size_t k);

/// Versioned little-endian binary dump; the round trip is lossless.
void save_pca_model(const PcaModel& model, std::ostream& out);
PcaModel load_pca_model(std::istream& in);
void save_pca_model(const PcaModel& model, const std::filesystem::path& path);
PcaModel load_pca_model(const std::filesystem::path& path);

}  // namespace palmid

#endif  // PALMID_PCA_HPP
