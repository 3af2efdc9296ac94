// Brute-force reference implementations used only by the test suites. Each
// one follows the textbook definition directly and shares no code with the
// library path it checks.
#ifndef PALMID_TESTS_ORACLES_HPP
#define PALMID_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace palmid::oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix zeros(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<double>(cols, 0.0));
}

inline Matrix random_block(std::mt19937_64& rng, std::size_t n = 16, double lo = 0.0, double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m = zeros(n, n);
  for (auto& row : m)
    for (double& v : row) v = dist(rng);
  return m;
}

// F(u,v) = a_u a_v sum_m sum_n f(m,n) cos(pi(2m+1)u/2M) cos(pi(2n+1)v/2N)
inline Matrix dct2_direct(const Matrix& f) {
  const std::size_t M = f.size();
  const std::size_t N = f.front().size();
  Matrix out = zeros(M, N);
  for (std::size_t u = 0; u < M; ++u) {
    const double au = u == 0 ? std::sqrt(1.0 / M) : std::sqrt(2.0 / M);
    for (std::size_t v = 0; v < N; ++v) {
      const double av = v == 0 ? std::sqrt(1.0 / N) : std::sqrt(2.0 / N);
      double acc = 0.0;
      for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < N; ++n)
          acc += f[m][n] * std::cos(std::numbers::pi * (2.0 * m + 1.0) * u / (2.0 * M)) *
                 std::cos(std::numbers::pi * (2.0 * n + 1.0) * v / (2.0 * N));
      out[u][v] = au * av * acc;
    }
  }
  return out;
}

// Zig-zag positions by enumerating anti-diagonals: on diagonal d the row
// runs upward for even d and downward for odd d.
inline std::vector<std::pair<std::size_t, std::size_t>> zigzag_by_diagonals(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t d = 0; d <= 2 * (n - 1); ++d) {
    std::vector<std::pair<std::size_t, std::size_t>> diag;
    for (std::size_t r = 0; r < n; ++r) {
      if (d >= r && d - r < n) diag.emplace_back(r, d - r);
    }
    if (d % 2 == 0) std::reverse(diag.begin(), diag.end());
    out.insert(out.end(), diag.begin(), diag.end());
  }
  return out;
}

inline std::vector<double> db2_h() {
  const double s3 = std::sqrt(3.0);
  const double d = 4.0 * std::sqrt(2.0);
  return {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
}

// L x L periodic analysis operator: rows 0..L/2 low-pass, L/2..L high-pass,
// y[n] = sum_k h[k] x[(2n + k) mod L].
inline Matrix analysis_matrix(std::size_t L) {
  const auto h = db2_h();
  Matrix W = zeros(L, L);
  for (std::size_t n = 0; n < L / 2; ++n) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double g = (k % 2 == 0 ? 1.0 : -1.0) * h[3 - k];
      W[n][(2 * n + k) % L] += h[k];
      W[L / 2 + n][(2 * n + k) % L] += g;
    }
  }
  return W;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix out = zeros(a.size(), b.front().size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b.front().size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t = zeros(a.front().size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.front().size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix sub(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t n) {
  Matrix out = zeros(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out[r][c] = a[r0 + r][c0 + c];
  return out;
}

struct OracleLevel {
  Matrix lh, hl, hh;
};

struct OraclePyramid {
  std::vector<OracleLevel> levels;
  Matrix ll;
};

// Each level is Y = W X W^T on the current approximation: horizontal
// filtering acts on columns of X (right factor), vertical on rows (left).
inline OraclePyramid dwt2_by_matrices(const Matrix& block, std::size_t levels) {
  OraclePyramid p;
  Matrix x = block;
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t L = x.size();
    const Matrix W = analysis_matrix(L);
    const Matrix y = matmul(matmul(W, x), transpose(W));
    const std::size_t h = L / 2;
    p.levels.push_back({sub(y, h, 0, h), sub(y, 0, h, h), sub(y, h, h, h)});
    x = sub(y, 0, 0, h);
  }
  p.ll = x;
  return p;
}

inline double energy(const Matrix& m) {
  double e = 0.0;
  for (const auto& row : m)
    for (double v : row) e += v * v;
  return e;
}

// Cyclic Jacobi rotations; returns eigenvalues sorted descending.
inline std::vector<double> jacobi_eigenvalues(Matrix a, int max_sweeps = 100) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.rbegin(), eig.rend());
  return eig;
}

// C = sum_i (x_i - mean)(x_i - mean)^T, built entry by entry.
inline Matrix scatter_matrix(const std::vector<std::vector<double>>& xs) {
  const std::size_t d = xs.front().size();
  std::vector<double> mean(d, 0.0);
  for (const auto& x : xs)
    for (std::size_t i = 0; i < d; ++i) mean[i] += x[i];
  for (double& m : mean) m /= static_cast<double>(xs.size());
  Matrix c = zeros(d, d);
  for (const auto& x : xs)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) c[i][j] += (x[i] - mean[i]) * (x[j] - mean[j]);
  return c;
}

struct VoteTally {
  std::vector<double> scores;
  std::size_t winner = 0;
};

// gallery[j][s] is entry j's feature vector for spectrum s.
inline VoteTally enumerate_votes(const std::vector<std::vector<std::vector<double>>>& gallery,
                                 const std::vector<std::vector<double>>& probe,
                                 const std::vector<double>& weights) {
  const std::size_t entries = gallery.size();
  VoteTally t;
  t.scores.assign(entries, 0.0);
  for (std::size_t s = 0; s < probe.size(); ++s) {
    for (std::size_t i = 0; i < probe[s].size(); ++i) {
      std::vector<double> d(entries);
      for (std::size_t j = 0; j < entries; ++j) d[j] = std::abs(probe[s][i] - gallery[j][s][i]);
      const double lowest = *std::min_element(d.begin(), d.end());
      for (std::size_t j = 0; j < entries; ++j) {
        if (d[j] == lowest) {
          t.scores[j] += weights[i];
          break;
        }
      }
    }
  }
  std::vector<double> dist(entries, 0.0);
  for (std::size_t j = 0; j < entries; ++j) {
    for (std::size_t s = 0; s < probe.size(); ++s) {
      double acc = 0.0;
      for (std::size_t i = 0; i < probe[s].size(); ++i)
        acc += (probe[s][i] - gallery[j][s][i]) * (probe[s][i] - gallery[j][s][i]);
      dist[j] += std::sqrt(acc);
    }
  }
  const double top = *std::max_element(t.scores.begin(), t.scores.end());
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < entries; ++j) {
    if (t.scores[j] == top && dist[j] < best_dist) {
      best_dist = dist[j];
      t.winner = j;
    }
  }
  return t;
}

}  // namespace palmid::oracle

#endif  // PALMID_TESTS_ORACLES_HPP
