#include <numeric>
#include <string>

#include "mgl/errors.hpp"
#include "mgl/permgroup.hpp"

namespace mgl::perm {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (const Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw DomainError("image list is not a bijection on " + std::to_string(images_.size()) +
                        " points");
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
  Permutation out = identity(degree);
  for (const auto& cycle : cycles) {
    std::vector<Point> pts(cycle);
    if (pts.empty()) continue;
    std::vector<Point> step = identity(degree).images_;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] >= degree) throw DomainError("cycle point outside the degree");
      step[pts[i]] = pts[(i + 1) % pts.size()];
    }
    out = out * Permutation(std::move(step));
  }
  return out;
}

bool Permutation::is_identity() const { return kernels::active().is_identity(images_); }

std::size_t Permutation::first_moved() const { return kernels::active().first_moved(images_); }

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) throw DomainError("degree mismatch in product");
  std::vector<Point> out(images_.size());
  kernels::active().compose(images_, rhs.images_, out);
  return Permutation(std::move(out), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<Point> out(images_.size());
  kernels::invert(images_, out);
  return Permutation(std::move(out), Unchecked{});
}

Permutation Permutation::pow(const BigInt& exponent) const {
  Permutation base = exponent < 0 ? inverse() : *this;
  BigInt e = exponent < 0 ? BigInt(-exponent) : exponent;
  // Exponents are often astronomically large; only e mod o(x) matters.
  if (e > images_.size()) e %= element_order(*this);
  Permutation acc = identity(degree());
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

bool Permutation::operator==(const Permutation& rhs) const {
  return degree() == rhs.degree() && kernels::active().equal(images_, rhs.images_);
}

Permutation commutator(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

Permutation conjugate(const Permutation& x, const Permutation& by) {
  return by.inverse() * x * by;
}

BigInt element_order(const Permutation& x) {
  const std::size_t n = x.degree();
  std::vector<bool> seen(n, false);
  BigInt order = 1;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (Point p = static_cast<Point>(start); !seen[p]; p = x[p]) {
      seen[p] = true;
      ++len;
    }
    if (len > 1) order = boost::multiprecision::lcm(order, BigInt(len));
  }
  return order;
}

}  // namespace mgl::perm
