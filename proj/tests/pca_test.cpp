#include "palmid/pca.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "test_util.hpp"

namespace palmid {
namespace {

std::vector<std::vector<double>> random_vectors(std::uint64_t seed, std::size_t n, std::size_t d) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> out(n, std::vector<double>(d));
  // Anisotropic scales so the spectrum is well separated.
  for (auto& v : out)
    for (std::size_t i = 0; i < d; ++i) v[i] = 10.0 + dist(rng) * (1.0 + 0.5 * static_cast<double>(i));
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

TEST(Jacobi, OracleSanity) {
  const oracle::Matrix m{{2, 1, 0}, {1, 2, 0}, {0, 0, 5}};
  const auto eig = oracle::jacobi_eigenvalues(m);
  EXPECT_NEAR(eig[0], 5.0, 1e-14);
  EXPECT_NEAR(eig[1], 3.0, 1e-14);
  EXPECT_NEAR(eig[2], 1.0, 1e-14);
}

TEST(PcaFit, IdenticalVectorsHaveZeroSpectrum) {
  const std::vector<std::vector<double>> v(5, std::vector<double>{1.0, -2.0, 3.0});
  const PcaModel m = pca_fit(v);
  EXPECT_EQ(m.mean, (std::vector<double>{1.0, -2.0, 3.0}));
  for (double l : m.eigenvalues) EXPECT_EQ(l, 0.0);
  EXPECT_PALMID_ERROR(retained_energy(m, 1), ErrorCode::DegenerateSpectrum);
}

TEST(PcaFit, RankOneDiagonal) {
  const std::vector<std::vector<double>> v{{1, 1}, {-1, -1}, {2, 2}, {-2, -2}};
  const PcaModel m = pca_fit(v);
  ASSERT_EQ(m.component_count(), 2u);
  EXPECT_NEAR(m.components[0][0], 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(m.components[0][1], 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(m.eigenvalues[0], 20.0, 1e-12);  // sum of squared projections: 2+2+8+8
  EXPECT_EQ(m.eigenvalues[1], 0.0);
}

TEST(PcaFit, EigenvaluesMatchJacobiOracle) {
  const auto v = random_vectors(20, 20, 5);
  const PcaModel m = pca_fit(v);
  const auto expected = oracle::jacobi_eigenvalues(oracle::scatter_matrix(v));
  ASSERT_EQ(m.eigenvalues.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_NEAR(m.eigenvalues[i], expected[i], 1e-8 * std::abs(expected[i])) << i;
}

TEST(PcaFit, OrthonormalCanonicalComponents) {
  const auto v = random_vectors(21, 30, 8);
  const PcaModel m = pca_fit(v);
  for (std::size_t i = 0; i < m.component_count(); ++i) {
    for (std::size_t j = 0; j < m.component_count(); ++j)
      EXPECT_NEAR(dot(m.components[i], m.components[j]), i == j ? 1.0 : 0.0, 1e-8);
    const auto& c = m.components[i];
    const auto it = std::max_element(c.begin(), c.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    EXPECT_GT(*it, 0.0);
    if (i > 0) EXPECT_LE(m.eigenvalues[i], m.eigenvalues[i - 1]);
  }
}

TEST(PcaFit, VarianceOrderingOfProjectedTrainingData) {
  const auto v = random_vectors(22, 50, 6);
  const PcaModel m = pca_fit(v);
  std::vector<double> var(6, 0.0);
  for (const auto& x : v) {
    const auto c = pca_project(m, x, 6);
    for (std::size_t i = 0; i < 6; ++i) var[i] += c[i] * c[i];
  }
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(var[i], m.eigenvalues[i], 1e-8 * m.eigenvalues[0]);
    if (i > 0) EXPECT_LE(var[i], var[i - 1] * (1 + 1e-12));
  }
}

TEST(PcaFit, ScaleCovariance) {
  const auto v = random_vectors(23, 25, 5);
  auto scaled = v;
  for (auto& x : scaled)
    for (double& e : x) e *= 3.0;
  const PcaModel a = pca_fit(v);
  const PcaModel b = pca_fit(scaled);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(b.eigenvalues[i], 9.0 * a.eigenvalues[i], 1e-9 * b.eigenvalues[0]);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_NEAR(retained_energy(a, k), retained_energy(b, k), 1e-12);
}

TEST(PcaFit, GramRouteAgreesUpToSign) {
  const auto v = random_vectors(24, 10, 30);  // N < D
  const PcaModel cov = pca_fit(v, PcaSolver::Covariance);
  const PcaModel gram = pca_fit(v, PcaSolver::Gram);
  ASSERT_EQ(gram.component_count(), 9u);  // rank N - 1
  EXPECT_EQ(cov.component_count(), 30u);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_NEAR(gram.eigenvalues[i], cov.eigenvalues[i], 1e-8 * cov.eigenvalues[0]);
    EXPECT_NEAR(std::abs(dot(gram.components[i], cov.components[i])), 1.0, 1e-8);
  }
  for (std::size_t i = 9; i < 30; ++i) EXPECT_EQ(cov.eigenvalues[i], 0.0);
  EXPECT_NEAR(retained_energy(gram, 5), retained_energy(cov, 5), 1e-12);
  EXPECT_EQ(retained_energy(gram, 30), 1.0);
}

TEST(PcaFit, Errors) {
  const std::vector<std::vector<double>> one{{1, 2}};
  EXPECT_PALMID_ERROR(pca_fit(one), ErrorCode::TooFewSamples);
  const std::vector<std::vector<double>> ragged{{1, 2}, {1}};
  EXPECT_PALMID_ERROR(pca_fit(ragged), ErrorCode::LengthMismatch);
}

TEST(PcaProject, CenteringAndEigenCoordinate) {
  const auto v = random_vectors(25, 30, 4);
  const PcaModel m = pca_fit(v);
  for (std::size_t k = 1; k <= 4; ++k)
    for (double c : pca_project(m, m.mean, k)) EXPECT_EQ(c, 0.0);

  std::vector<double> probe = m.mean;
  for (std::size_t i = 0; i < 4; ++i) probe[i] += 3.0 * m.components[0][i];
  const auto c = pca_project(m, probe, 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c[0], 3.0, 1e-12);
}

TEST(PcaProject, FullRankRoundTripAndIsometry) {
  const auto v = random_vectors(26, 40, 7);
  const PcaModel m = pca_fit(v);
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(7);
    for (double& e : x) e = dist(rng);
    const auto coords = pca_project(m, x, 7);
    const auto back = pca_reconstruct(m, coords);
    double norm_c = 0.0, norm_x = 0.0;
    for (std::size_t i = 0; i < 7; ++i) {
      EXPECT_NEAR(back[i], x[i], 1e-8);
      norm_c += coords[i] * coords[i];
      norm_x += (x[i] - m.mean[i]) * (x[i] - m.mean[i]);
    }
    EXPECT_NEAR(std::sqrt(norm_c), std::sqrt(norm_x), 1e-8);
  }
}

TEST(PcaProject, Errors) {
  const PcaModel m = pca_fit(random_vectors(28, 5, 3));
  EXPECT_PALMID_ERROR(pca_project(m, m.mean, 0), ErrorCode::KOutOfRange);
  EXPECT_PALMID_ERROR(pca_project(m, m.mean, 4), ErrorCode::KOutOfRange);
  EXPECT_PALMID_ERROR(pca_project(m, std::vector<double>{1.0}, 1), ErrorCode::LengthMismatch);
}

TEST(RetainedEnergy, Arithmetic) {
  PcaModel m;
  m.dim = 3;
  m.eigenvalues = {3, 1, 0};
  EXPECT_EQ(retained_energy(m, 1), 0.75);
  EXPECT_EQ(retained_energy(m, 2), 1.0);
  EXPECT_EQ(retained_energy(m, 3), 1.0);
  EXPECT_PALMID_ERROR(retained_energy(m, 0), ErrorCode::KOutOfRange);
  EXPECT_PALMID_ERROR(retained_energy(m, 4), ErrorCode::KOutOfRange);
}

TEST(RetainedEnergy, MonotoneAndMatchesOracleSpectrum) {
  const auto v = random_vectors(29, 60, 9);
  const PcaModel m = pca_fit(v);
  const auto spectrum = oracle::jacobi_eigenvalues(oracle::scatter_matrix(v));
  double total = 0.0;
  for (double l : spectrum) total += l;
  double prev = 0.0, kept = 0.0;
  for (std::size_t k = 1; k <= 9; ++k) {
    kept += spectrum[k - 1];
    const double r = retained_energy(m, k);
    EXPECT_GE(r, prev);
    EXPECT_NEAR(r, kept / total, 1e-10);
    prev = r;
  }
  EXPECT_EQ(retained_energy(m, 9), 1.0);
}

TEST(PcaModelIo, LosslessRoundTrip) {
  const PcaModel m = pca_fit(random_vectors(30, 12, 6));
  std::stringstream buf;
  save_pca_model(m, buf);
  const PcaModel back = load_pca_model(buf);
  EXPECT_EQ(back.dim, m.dim);
  EXPECT_EQ(back.mean, m.mean);
  EXPECT_EQ(back.eigenvalues, m.eigenvalues);
  EXPECT_EQ(back.components, m.components);

  std::stringstream junk("not a model");
  EXPECT_PALMID_ERROR(load_pca_model(junk), ErrorCode::UnsupportedFormat);
  std::string bytes = buf.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
  EXPECT_PALMID_ERROR(load_pca_model(truncated), ErrorCode::UnsupportedFormat);
}

}  // namespace
}  // namespace palmid
