#include "degsol/core.hpp"

#include <charconv>

namespace degsol {

std::vector<SpacetimePoint> sample_points(const Box& box, int n,
                                          std::uint64_t seed) {
  // Generalized golden ratio for d = 4 (root of x^5 = x + 1).
  double g = 1.0;
  for (int i = 0; i < 64; ++i) g = std::pow(1.0 + g, 1.0 / 5.0);
  double alpha[4];
  for (int k = 0; k < 4; ++k) alpha[k] = std::fmod(std::pow(1.0 / g, k + 1), 1.0);

  std::uint64_t state = seed;
  double shift[4];
  for (double& s : shift) s = uniform01(state);

  std::vector<SpacetimePoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SpacetimePoint p;
    for (int k = 0; k < 4; ++k) {
      double u = std::fmod(shift[k] + (i + 1) * alpha[k], 1.0);
      p[k] = (2.0 * u - 1.0) * box.extent(k);
    }
    pts.push_back(p);
  }
  return pts;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace degsol
