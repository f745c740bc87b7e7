#include "gestark/geometry.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "gestark/error.hpp"

namespace gestark {

namespace {
constexpr double kUnitTolerance = 1e-12;
constexpr double kAngleTolerance = 1e-9;
}  // namespace

MillerDirection::MillerDirection(int h, int k, int l) : idx_{h, k, l} {
  if (h == 0 && k == 0 && l == 0) {
    throw Error(ErrorKind::ZeroDirection, "Miller direction [0,0,0] has no orientation");
  }
}

MillerDirection MillerDirection::canonical() const {
  const int g = std::gcd(std::gcd(std::abs(idx_[0]), std::abs(idx_[1])), std::abs(idx_[2]));
  return {idx_[0] / g, idx_[1] / g, idx_[2] / g};
}

MillerDirection MillerDirection::headless() const {
  auto c = canonical();
  for (int v : c.idx_) {
    if (v > 0) return c;
    if (v < 0) return {-c.idx_[0], -c.idx_[1], -c.idx_[2]};
  }
  return c;
}

std::string MillerDirection::label() const {
  return fmt::format("[{},{},{}]", idx_[0], idx_[1], idx_[2]);
}

UnitVector3 UnitVector3::normalize(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::ZeroDirection, "cannot normalize a zero or non-finite vector");
  }
  return UnitVector3(v / n, Trusted{});
}

UnitVector3::UnitVector3(const Eigen::Vector3d& v) : v_(v) {
  if (std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("vector norm {} is not 1 within {}", v.norm(), kUnitTolerance));
  }
}

const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::Parallel:
      return "parallel";
    case Geometry::Perpendicular:
      return "perpendicular";
    case Geometry::Oblique:
      return "oblique";
  }
  return "?";
}

const ValleySet& ValleySet::germanium() {
  static const ValleySet set({
      UnitVector3::normalize({1.0, 1.0, 1.0}),
      UnitVector3::normalize({-1.0, 1.0, 1.0}),
      UnitVector3::normalize({1.0, -1.0, 1.0}),
      UnitVector3::normalize({-1.0, -1.0, 1.0}),
  });
  return set;
}

UnitVector3 to_unit_vector(const MillerDirection& d) {
  const auto& i = d.indices();
  return UnitVector3::normalize(Eigen::Vector3d(i[0], i[1], i[2]));
}

double projection_squared(const UnitVector3& e_hat, const UnitVector3& valley_axis) {
  const double c = e_hat.dot(valley_axis);
  return std::min(1.0, c * c);
}

Geometry classify_geometry(const MillerDirection& e_dir, const MillerDirection& b_dir) {
  const double c = std::abs(to_unit_vector(e_dir).dot(to_unit_vector(b_dir)));
  if (c > 1.0 - kAngleTolerance) return Geometry::Parallel;
  if (c < kAngleTolerance) return Geometry::Perpendicular;
  return Geometry::Oblique;
}

}  // namespace gestark
