#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace quasihyper {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed plus the labelled path that derived it. Children are derived by
/// hashing the label into the parent seed, so every sampled object can be
/// regenerated from (root seed, path).
class SeedPath {
 public:
  explicit SeedPath(std::uint64_t root) : seed_(root), path_(std::to_string(root)) {}

  SeedPath child(std::string_view label) const;
  SeedPath child(std::uint64_t index) const { return child(std::to_string(index)); }

  std::uint64_t seed() const { return seed_; }
  const std::string& path() const { return path_; }
  std::mt19937_64 engine() const { return std::mt19937_64(seed_); }

 private:
  SeedPath(std::uint64_t seed, std::string path) : seed_(seed), path_(std::move(path)) {}
  std::uint64_t seed_;
  std::string path_;
};

/// True with probability exactly p for p in [0,1] with a 64-bit denominator;
/// wider denominators fall back to a double comparison.
bool bernoulli(std::mt19937_64& rng, const mpq_class& p);

}  // namespace quasihyper
