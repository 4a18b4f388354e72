#pragma once

// Data-parallel inner loops over permutation image arrays. Every kernel has
// a portable scalar reference; AVX2 variants are compiled with a function-level
// target attribute and picked at runtime when the CPU supports them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mgl::kernels {

using Point = std::uint32_t;

/// out[i] = second[first[i]]: apply `first`, then `second`.
using ComposeFn = void (*)(std::span<const Point> first, std::span<const Point> second,
                           std::span<Point> out);
using EqualFn = bool (*)(std::span<const Point> x, std::span<const Point> y);
using IsIdentityFn = bool (*)(std::span<const Point> x);
/// Smallest i with x[i] != i, or x.size() when none.
using FirstMovedFn = std::size_t (*)(std::span<const Point> x);

struct KernelTable {
  std::string_view name;
  ComposeFn compose;
  EqualFn equal;
  IsIdentityFn is_identity;
  FirstMovedFn first_moved;
};

namespace scalar {
void compose(std::span<const Point> first, std::span<const Point> second, std::span<Point> out);
bool equal(std::span<const Point> x, std::span<const Point> y);
bool is_identity(std::span<const Point> x);
std::size_t first_moved(std::span<const Point> x);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
#define MGL_HAVE_AVX2_KERNELS 1
namespace avx2 {
void compose(std::span<const Point> first, std::span<const Point> second, std::span<Point> out);
bool equal(std::span<const Point> x, std::span<const Point> y);
bool is_identity(std::span<const Point> x);
std::size_t first_moved(std::span<const Point> x);
}  // namespace avx2
#endif

/// Inversion is a scatter; AVX2 has no scatter store, so it stays scalar.
void invert(std::span<const Point> x, std::span<Point> out);

const KernelTable& scalar_table();
/// Null when the AVX2 variants are unavailable on this build or CPU.
const KernelTable* avx2_table();

/// Table used by Permutation. AVX2 when supported, unless the environment
/// variable MGL_FORCE_SCALAR is set to a non-empty value other than "0".
const KernelTable& active();

}  // namespace mgl::kernels
