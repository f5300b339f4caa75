#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace degsol {

using cd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Event time and coordinates are in natural units (hbar = c = 1) unless a
// name carries an explicit SI suffix.
struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  // Axis order: 0 = t, 1 = x, 2 = y, 3 = z.
  double operator[](int axis) const {
    switch (axis) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
  double& operator[](int axis) {
    switch (axis) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Symmetric sampling box: |t| <= t_max, ..., |z| <= z_max.
struct Box {
  double t_max = 2.0;
  double x_max = 2.0;
  double y_max = 2.0;
  double z_max = 2.0;

  double extent(int axis) const {
    switch (axis) {
      case 0: return t_max;
      case 1: return x_max;
      case 2: return y_max;
      default: return z_max;
    }
  }
};

// splitmix64: deterministic, platform-independent 64-bit generator step.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1), derived only from integer arithmetic so results
// are identical across compilers.
inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::uint64_t& state, double lo, double hi) {
  return lo + (hi - lo) * uniform01(state);
}

// Low-discrepancy points in the box. Kronecker sequence based on the
// generalized golden ratio, with a seeded toroidal shift.
std::vector<SpacetimePoint> sample_points(const Box& box, int n,
                                          std::uint64_t seed);

// Locale-independent decimal formatting with 17 significant digits.
std::string format_double(double value);

inline constexpr const char* artifact_version = "1.0.0";

}  // namespace degsol
