#pragma once

#include <Eigen/Core>
#include <array>
#include <string>

namespace gestark {

/// Integer crystal direction [hkl]. Construction rejects [000].
class MillerDirection {
 public:
  MillerDirection(int h, int k, int l);

  int h() const noexcept { return idx_[0]; }
  int k() const noexcept { return idx_[1]; }
  int l() const noexcept { return idx_[2]; }
  const std::array<int, 3>& indices() const noexcept { return idx_; }

  /// Divides out the gcd of the absolute values: [2,2,0] -> [1,1,0].
  MillerDirection canonical() const;

  /// canonical() with the sign folded so the first nonzero index is
  /// positive. d and -d describe the same line.
  MillerDirection headless() const;

  /// Compact label with explicit signs, e.g. "[-1,1,1]".
  std::string label() const;

  friend bool operator==(const MillerDirection&, const MillerDirection&) = default;

 private:
  std::array<int, 3> idx_;
};

/// Vector of unit length (checked to 1e-12 at construction).
class UnitVector3 {
 public:
  /// Normalizes v; throws ZeroDirection for the zero vector.
  static UnitVector3 normalize(const Eigen::Vector3d& v);
  /// Wraps v; throws InvalidArgument unless |v| = 1 within 1e-12.
  explicit UnitVector3(const Eigen::Vector3d& v);

  const Eigen::Vector3d& vec() const noexcept { return v_; }
  double x() const noexcept { return v_.x(); }
  double y() const noexcept { return v_.y(); }
  double z() const noexcept { return v_.z(); }
  double dot(const UnitVector3& o) const noexcept { return v_.dot(o.v_); }
  UnitVector3 operator-() const { return UnitVector3(-v_); }

 private:
  struct Trusted {};
  UnitVector3(const Eigen::Vector3d& v, Trusted) : v_(v) {}
  Eigen::Vector3d v_;
};

enum class Geometry { Parallel, Perpendicular, Oblique };

const char* to_string(Geometry g);

/// The four <111> conduction-band valley axes of germanium. Axes are
/// headless; consumers only use n n^T.
class ValleySet {
 public:
  static constexpr std::size_t count = 4;

  static const ValleySet& germanium();

  const std::array<UnitVector3, count>& axes() const noexcept { return axes_; }
  const UnitVector3& operator[](std::size_t i) const { return axes_[i]; }

 private:
  explicit ValleySet(std::array<UnitVector3, count> axes) : axes_(std::move(axes)) {}
  std::array<UnitVector3, count> axes_;
};

UnitVector3 to_unit_vector(const MillerDirection& d);

/// (e . n)^2, in [0, 1]. Insensitive to the sign of either vector.
double projection_squared(const UnitVector3& e_hat, const UnitVector3& valley_axis);

Geometry classify_geometry(const MillerDirection& e_dir, const MillerDirection& b_dir);

}  // namespace gestark
