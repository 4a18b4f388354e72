#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgl {

/// Input outside an operation's mathematical domain (alpha = 1, a <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured budget (factorization bound, coset cap, time) was exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class EnumerationLimitError : public ResourceError {
 public:
  EnumerationLimitError(const std::string& what, std::size_t high_water)
      : ResourceError(what), high_water_(high_water) {}

  std::size_t high_water() const noexcept { return high_water_; }

 private:
  std::size_t high_water_;
};

}  // namespace mgl
