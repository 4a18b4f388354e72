#include "test_support.hpp"

#include <string>

namespace mgl::test {

namespace {
std::uint64_t g_seed = kDefaultSeed;
}

std::uint64_t seed() { return g_seed; }

std::vector<char*> take_seed_flag(int argc, char** argv) {
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--seed=", 0) == 0) {
      g_seed = std::stoull(arg.substr(7));
    } else if (arg == "--seed" && i + 1 < argc) {
      g_seed = std::stoull(argv[++i]);
    } else {
      rest.push_back(argv[i]);
    }
  }
  return rest;
}

}  // namespace mgl::test
