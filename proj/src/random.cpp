#include "quasihyper/random.hpp"

#include "quasihyper/error.hpp"

namespace quasihyper {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeedPath SeedPath::child(std::string_view label) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return SeedPath(splitmix64(seed_ ^ splitmix64(h)), path_ + "/" + std::string(label));
}

bool bernoulli(std::mt19937_64& rng, const mpq_class& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  if (mpz_fits_ulong_p(p.get_den_mpz_t()) != 0) {
    unsigned long den = p.get_den().get_ui();
    unsigned long num = p.get_num().get_ui();
    std::uniform_int_distribution<std::uint64_t> dist(0, den - 1);
    return dist(rng) < num;
  }
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(rng) < p.get_d();
}

}  // namespace quasihyper
