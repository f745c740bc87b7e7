#include <doctest.h>

#include <cmath>
#include <random>

#include "gestark/error.hpp"
#include "gestark/g_tensor.hpp"
#include "oracles.hpp"

using namespace gestark;

namespace {

const ValleyGTensor kAs = ValleyGTensor::arsenic();

double max_abs_diff(const Eigen::Matrix3d& a, const oracle::Mat3& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a(i, j) - static_cast<double>(b[i][j])));
  return d;
}

}  // namespace

TEST_CASE("valley tensor along z is diag(g_perp, g_perp, g_par)") {
  const auto t = valley_tensor_in_crystal_frame(kAs, to_unit_vector({0, 0, 1}));
  const Eigen::Matrix3d expected = Eigen::Vector3d(1.92, 1.92, 0.82).asDiagonal();
  CHECK((t.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("isotropic valley tensor is g I for any axis") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const auto u = oracle::random_unit(rng);
    const auto t =
        valley_tensor_in_crystal_frame({1.7, 1.7}, UnitVector3::normalize({u[0], u[1], u[2]}));
    CHECK((t.matrix() - 1.7 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("valley tensor along [111]") {
  const auto t = valley_tensor_in_crystal_frame(kAs, to_unit_vector({1, 1, 1}));
  // n n^T = ones / 3
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double expected = i == j ? 1.92 + (0.82 - 1.92) / 3.0 : (0.82 - 1.92) / 3.0;
      CHECK(std::abs(t.matrix()(i, j) - expected) < 1e-14);
    }
  }
  CHECK(t.matrix()(0, 0) == doctest::Approx(1.5533333333333333).epsilon(1e-14));
  CHECK(t.matrix()(0, 1) == doctest::Approx(-0.3666666666666667).epsilon(1e-14));
}

TEST_CASE("valley tensors match an explicit frame rotation") {
  const auto axes = oracle::valley_axes();
  const auto& valleys = ValleySet::germanium();
  for (std::size_t v = 0; v < 4; ++v) {
    const auto t = valley_tensor_in_crystal_frame(kAs, valleys[v]);
    CHECK(max_abs_diff(t.matrix(), oracle::rotated_valley_tensor(1.92L, 0.82L, axes[v])) < 1e-14);
  }
}

TEST_CASE("equal weights give an isotropic tensor (2 g_perp + g_par) / 3") {
  const auto t = effective_g_tensor(kAs, ValleySet::germanium(), ValleyWeights::equal());
  CHECK((t.matrix() - 1.5533333333333333 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
        1e-12);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g(0.2, 2.5);
  for (int i = 0; i < 200; ++i) {
    const double a = g(rng), b = g(rng);
    const ValleyGTensor vg(std::max(a, b), std::min(a, b));
    const auto m = effective_g_tensor(vg, ValleySet::germanium(), ValleyWeights::equal()).matrix();
    CHECK((m - vg.isotropic_average() * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("single-valley and isotropic weighting") {
  const auto& valleys = ValleySet::germanium();
  const auto single = effective_g_tensor(kAs, valleys, ValleyWeights({1.0, 0.0, 0.0, 0.0}));
  CHECK(single.matrix() == valley_tensor_in_crystal_frame(kAs, valleys[0]).matrix());

  const auto iso = effective_g_tensor({1.3, 1.3}, valleys, ValleyWeights::equal());
  CHECK((iso.matrix() - 1.3 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("effective tensor matches the brute-force weighted sum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 4> w{};
    double s = 0.0;
    for (auto& x : w) s += (x = u(rng));
    for (auto& x : w) x /= s;
    w[3] = 1.0 - w[0] - w[1] - w[2];
    const auto m = effective_g_tensor(kAs, ValleySet::germanium(), ValleyWeights(w)).matrix();
    const auto ref = oracle::weighted_tensor(1.92L, 0.82L, {w[0], w[1], w[2], w[3]});
    CHECK(max_abs_diff(m, ref) < 1e-14);
  }
}

TEST_CASE("invalid weights") {
  CHECK_THROWS_AS(ValleyWeights({0.3, 0.3, 0.3, 0.3}), Error);
  CHECK_THROWS_AS(ValleyWeights({1.1, -0.1, 0.0, 0.0}), Error);
  try {
    ValleyWeights({0.5, 0.5, 0.5, 0.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidWeights);
  }
}

TEST_CASE("asymmetric tensors are rejected") {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(EffectiveGTensor{m}, Error);
}

TEST_CASE("g_along examples") {
  const EffectiveGTensor iso(1.5533 * Eigen::Matrix3d::Identity());
  CHECK(g_along(iso, to_unit_vector({1, 2, 3})) == doctest::Approx(1.5533).epsilon(1e-15));
  const EffectiveGTensor axial(Eigen::Vector3d(1.92, 1.92, 0.82).asDiagonal().toDenseMatrix());
  CHECK(g_along(axial, to_unit_vector({0, 0, 1})) == doctest::Approx(0.82).epsilon(1e-15));
  CHECK(g_along(axial, to_unit_vector({1, 0, 0})) == doctest::Approx(1.92).epsilon(1e-15));
}

TEST_CASE("g_along stays within [g_par, g_perp]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::array<double, 4> w{};
    double s = 0.0;
    for (auto& x : w) s += (x = u(rng));
    for (auto& x : w) x /= s;
    w[3] = 1.0 - w[0] - w[1] - w[2];
    if (w[3] < 0) continue;
    const auto b = oracle::random_unit(rng);
    const double g = g_along(effective_g_tensor(kAs, ValleySet::germanium(), ValleyWeights(w)),
                             UnitVector3::normalize({b[0], b[1], b[2]}));
    CHECK(g >= 0.82 - 1e-12);
    CHECK(g <= 1.92 + 1e-12);
  }
}

TEST_CASE("resonance frequency") {
  CHECK(resonance_frequency(1.57, 0.437) == doctest::Approx(9.60e9).epsilon(0.005));
  CHECK(resonance_frequency(2.0023, 0.3427) == doctest::Approx(9.6e9).epsilon(0.005));
  CHECK(resonance_frequency(0.0, 0.4) == 0.0);
  // g mu_B B / h with CODATA values, evaluated independently.
  CHECK(resonance_frequency(1.57, 0.437) == doctest::Approx(9602683688.190125).epsilon(1e-13));
  CHECK(resonance_field(1.57, resonance_frequency(1.57, 0.437)) ==
        doctest::Approx(0.437).epsilon(1e-14));
}

TEST_CASE("repopulation weights: examples") {
  const auto& valleys = ValleySet::germanium();
  const auto e111 = to_unit_vector({1, 1, 1});
  auto zero = repopulation_weights({3.0}, e111, 0.0, valleys);
  for (double a : zero.alpha()) CHECK(a == 0.25);

  for (double kappa : {-50.0, 0.0, 1.0, 1000.0}) {
    for (double e : {0.01, 0.1, 1.0}) {
      for (MillerDirection d :
           {MillerDirection{0, 0, 1}, MillerDirection{1, 0, 0}, MillerDirection{0, -1, 0}}) {
        const auto w = repopulation_weights({kappa}, to_unit_vector(d), e, valleys);
        for (double a : w.alpha()) CHECK(a == 0.25);
      }
    }
  }

  const auto w = repopulation_weights({1.0}, e111, 0.1, valleys);
  CHECK(w[0] == doctest::Approx(0.25 + (2.0 / 3.0) * 0.01).epsilon(1e-14));
  for (int i = 1; i < 4; ++i)
    CHECK(w[i] == doctest::Approx(0.25 - (2.0 / 9.0) * 0.01).epsilon(1e-14));
}

TEST_CASE("repopulation weights are even in E and in e_hat") {
  const auto& valleys = ValleySet::germanium();
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = oracle::random_unit(rng);
    const auto e = UnitVector3::normalize({u[0], u[1], u[2]});
    const auto a = repopulation_weights({4.0}, e, 0.2, valleys);
    const auto b = repopulation_weights({4.0}, e, -0.2, valleys);
    const auto c = repopulation_weights({4.0}, -e, 0.2, valleys);
    for (int i = 0; i < 4; ++i) {
      CHECK(a[i] == b[i]);
      CHECK(a[i] == doctest::Approx(c[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("repopulation weights clamp and renormalize") {
  const auto w =
      repopulation_weights({1e6}, to_unit_vector({1, 1, 1}), 1.0, ValleySet::germanium());
  CHECK(w[0] == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(w[i] == 0.0);
}

TEST_CASE("B along <100>: g is first-order immune to weight redistribution") {
  const auto& valleys = ValleySet::germanium();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  const double h = 1e-6;
  for (MillerDirection d :
       {MillerDirection{1, 0, 0}, MillerDirection{0, 1, 0}, MillerDirection{0, 0, 1}}) {
    const auto b = to_unit_vector(d);
    for (int trial = 0; trial < 20; ++trial) {
      std::array<double, 4> delta{};
      double mean = 0.0;
      for (auto& x : delta) mean += (x = n(rng)) / 4.0;
      double norm = 0.0;
      for (auto& x : delta) norm += (x -= mean) * x;
      for (auto& x : delta) x /= std::sqrt(norm);
      std::array<double, 4> plus{}, minus{};
      for (int i = 0; i < 4; ++i) {
        plus[i] = 0.25 + h * delta[i];
        minus[i] = 0.25 - h * delta[i];
      }
      const double gp = g_along(effective_g_tensor(kAs, valleys, ValleyWeights(plus)), b);
      const double gm = g_along(effective_g_tensor(kAs, valleys, ValleyWeights(minus)), b);
      CHECK(std::abs((gp - gm) / (2 * h)) < 1e-8);
    }
  }
  // Counter-check: along [111] redistribution does move g.
  const auto b111 = to_unit_vector({1, 1, 1});
  const std::array<double, 4> plus{0.25 + h, 0.25 - h / 3, 0.25 - h / 3, 0.25 - h / 3};
  const double slope = (g_along(effective_g_tensor(kAs, valleys, ValleyWeights(plus)), b111) -
                        g_along(effective_g_tensor(kAs, valleys, ValleyWeights::equal()), b111)) /
                       h;
  CHECK(std::abs(slope) > 0.1);
}

TEST_CASE("weight gradient matches central differences of the oracle") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::array<double, 4> w{};
    double s = 0.0;
    for (auto& x : w) s += (x = u(rng));
    for (auto& x : w) x /= s;
    w[3] = 1.0 - w[0] - w[1] - w[2];
    const auto bu = oracle::random_unit(rng);
    const auto b = UnitVector3::normalize({bu[0], bu[1], bu[2]});
    const auto grad = g_along_weight_gradient(kAs, ValleySet::germanium(), ValleyWeights(w), b);
    const oracle::Vec3 bl{bu[0], bu[1], bu[2]};
    for (int i = 0; i < 4; ++i) {
      const long double h = 1e-6L;
      std::array<long double, 4> p{w[0], w[1], w[2], w[3]}, m = p;
      p[i] += h;
      m[i] -= h;
      const long double fd = (oracle::g_along(oracle::weighted_tensor(1.92L, 0.82L, p), bl) -
                              oracle::g_along(oracle::weighted_tensor(1.92L, 0.82L, m), bl)) /
                             (2 * h);
      CHECK(std::abs(grad[i] - static_cast<double>(fd)) <=
            1e-6 * std::abs(static_cast<double>(fd)) + 1e-12);
    }
  }
}

TEST_CASE("kappa calibration reproduces the target shift") {
  const auto& valleys = ValleySet::germanium();
  const auto axis = to_unit_vector({1, 1, 1});
  for (double eta : {3.9e-2, -3.0e-2, 1.7e-2, 0.19}) {
    const auto model = calibrate_repopulation(eta, kAs, valleys);
    const double e = 1e-2;
    const double f0 = 9.6e9;
    const double df = repopulation_shift(model, kAs, valleys, axis, axis, e, f0);
    CHECK(df == doctest::Approx(eta * f0 * e * e).epsilon(1e-9));
    // Aligned valley has the small g_par along B, so a positive eta needs
    // the aligned valley depopulated.
    CHECK((eta > 0) == (model.kappa < 0));
  }
  CHECK_THROWS_AS(calibrate_repopulation(1e6, kAs, valleys), Error);
}

TEST_CASE("repopulation shift vanishes for E along <100>") {
  const auto& valleys = ValleySet::germanium();
  const double df = repopulation_shift({123.0}, kAs, valleys, to_unit_vector({0, 0, 1}),
                                       to_unit_vector({1, 1, 0}), 0.05, 9.6e9);
  CHECK(df == 0.0);
}
