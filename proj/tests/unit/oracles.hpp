#pragma once

// Reference computations used to check the library. These deliberately
// avoid the library's code paths: plain arrays, long double, brute force.

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using Vec3 = std::array<long double, 3>;
using Mat3 = std::array<std::array<long double, 3>, 3>;

inline Vec3 normalized(long double x, long double y, long double z) {
  const long double n = std::sqrt(x * x + y * y + z * z);
  return {x / n, y / n, z / n};
}

// The four <111> axes written out by hand.
inline std::array<Vec3, 4> valley_axes() {
  return {normalized(1, 1, 1), normalized(-1, 1, 1), normalized(1, -1, 1), normalized(-1, -1, 1)};
}

// Rotate diag(g_perp, g_perp, g_par) from a frame whose third axis is n:
// build an orthonormal frame explicitly and sum R diag R^T entry by entry.
inline Mat3 rotated_valley_tensor(long double g_perp, long double g_par, const Vec3& n) {
  Vec3 helper = std::abs(n[0]) < 0.9L ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  // u = helper - (helper.n) n, normalized
  long double d = helper[0] * n[0] + helper[1] * n[1] + helper[2] * n[2];
  Vec3 u{helper[0] - d * n[0], helper[1] - d * n[1], helper[2] - d * n[2]};
  long double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  for (auto& c : u) c /= un;
  Vec3 v{n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]};
  const std::array<Vec3, 3> frame{u, v, n};
  const std::array<long double, 3> diag{g_perp, g_perp, g_par};
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m[i][j] += frame[k][i] * diag[k] * frame[k][j];
  return m;
}

inline long double g_along(const Mat3& m, const Vec3& b) {
  long double s = 0;
  for (int i = 0; i < 3; ++i) {
    long double r = 0;
    for (int j = 0; j < 3; ++j) r += m[i][j] * b[j];
    s += r * r;
  }
  return std::sqrt(s);
}

inline Mat3 weighted_tensor(long double g_perp, long double g_par,
                            const std::array<long double, 4>& w) {
  Mat3 out{};
  const auto axes = valley_axes();
  for (int v = 0; v < 4; ++v) {
    const auto t = rotated_valley_tensor(g_perp, g_par, axes[v]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i][j] += w[v] * t[i][j];
  }
  return out;
}

// Weighted least squares by normal equations and Gauss-Jordan elimination
// in long double. Returns {coefficients, covariance (A^T W A)^-1}.
struct LsqSolution {
  std::vector<long double> coeff;
  std::vector<std::vector<long double>> inverse_normal;
};

inline LsqSolution normal_equations(const std::vector<std::vector<long double>>& design,
                                    const std::vector<long double>& y,
                                    const std::vector<long double>& weights) {
  const std::size_t p = design.front().size();
  std::vector<std::vector<long double>> aug(p, std::vector<long double>(2 * p + 1, 0.0L));
  for (std::size_t r = 0; r < design.size(); ++r) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) aug[i][j] += weights[r] * design[r][i] * design[r][j];
      aug[i][2 * p] += weights[r] * design[r][i] * y[r];
    }
  }
  for (std::size_t i = 0; i < p; ++i) aug[i][p + i] = 1.0L;
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::abs(aug[r][c]) > std::abs(aug[piv][c])) piv = r;
    std::swap(aug[c], aug[piv]);
    const long double d = aug[c][c];
    for (auto& x : aug[c]) x /= d;
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      const long double f = aug[r][c];
      for (std::size_t k = 0; k < aug[r].size(); ++k) aug[r][k] -= f * aug[c][k];
    }
  }
  LsqSolution s;
  s.inverse_normal.assign(p, std::vector<long double>(p));
  for (std::size_t i = 0; i < p; ++i) {
    s.coeff.push_back(aug[i][2 * p]);
    for (std::size_t j = 0; j < p; ++j) s.inverse_normal[i][j] = aug[i][p + j];
  }
  return s;
}

inline std::array<double, 3> random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  double x = n(rng), y = n(rng), z = n(rng);
  const double norm = std::sqrt(x * x + y * y + z * z);
  return {x / norm, y / norm, z / norm};
}

}  // namespace oracle
