#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mgl {

using BigInt = boost::multiprecision::cpp_int;

/// Canonical residue of x in [0, modulus).
inline BigInt mod_floor(const BigInt& x, const BigInt& modulus) {
  BigInt r = x % modulus;
  if (r < 0) r += modulus;
  return r;
}

inline BigInt big_pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace mgl
