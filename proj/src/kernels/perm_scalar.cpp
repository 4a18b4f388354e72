#include "mgl/perm_kernels.hpp"

namespace mgl::kernels::scalar {

void compose(std::span<const Point> first, std::span<const Point> second, std::span<Point> out) {
  const std::size_t n = first.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = second[first[i]];
}

bool equal(std::span<const Point> x, std::span<const Point> y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] != y[i]) return false;
  return true;
}

bool is_identity(std::span<const Point> x) { return first_moved(x) == x.size(); }

std::size_t first_moved(std::span<const Point> x) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] != i) return i;
  return n;
}

}  // namespace mgl::kernels::scalar

namespace mgl::kernels {

void invert(std::span<const Point> x, std::span<Point> out) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) out[x[i]] = static_cast<Point>(i);
}

}  // namespace mgl::kernels
