#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace guiforge {

// Seeded stream with platform-independent draws. std:: distributions are
// implementation-defined, so uniform sampling is done here by rejection.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform real in [0, 1).
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  std::size_t index(std::size_t size) {
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(size) - 1));
  }

  // k distinct indices out of [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// Seed derivation: hash of the parts, for per-page and per-stage streams.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view a, std::uint64_t b = 0,
                          std::string_view stage = {});

}  // namespace guiforge
