#pragma once

// Shared helpers for the test suites: seeded RNG and random generators.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "hyperdyn/exactnum.hpp"
#include "hyperdyn/symbolic.hpp"
#include "hyperdyn/toral.hpp"

namespace hyperdyn::testing {

/// HYPERDYN_SEED overrides the fixed default.
inline std::uint64_t test_seed() {
  if (const char* env = std::getenv("HYPERDYN_SEED")) return std::stoull(env);
  return 20240611ULL;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(test_seed());
  return gen;
}

inline long long uniform(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline Rational random_rational(long long max_num = 40, long long max_den = 30) {
  return Rational(BigInt(uniform(-max_num, max_num)), BigInt(uniform(1, max_den)));
}

inline QuadNum random_quad() { return {random_rational(), random_rational()}; }

inline TorusPoint random_rational_point(long long max_den = 30) {
  const long long q = uniform(1, max_den);
  return {QuadNum(Rational(BigInt(uniform(0, q - 1)), BigInt(q))),
          QuadNum(Rational(BigInt(uniform(0, q - 1)), BigInt(q)))};
}

inline TorusPoint random_point() { return {random_quad(), random_quad()}; }

inline Word random_word(std::size_t min_len, std::size_t max_len, int alphabet = 2) {
  Word w(static_cast<std::size_t>(uniform(static_cast<long long>(min_len),
                                          static_cast<long long>(max_len))));
  for (auto& s : w) s = static_cast<Symbol>(uniform(0, alphabet - 1));
  return w;
}

inline BiSeq random_biseq(std::size_t max_period = 6, std::size_t max_center = 6,
                          int alphabet = 2) {
  return {random_word(1, max_period, alphabet), random_word(0, max_center, alphabet),
          random_word(1, max_period, alphabet), uniform(-5, 5), alphabet};
}

}  // namespace hyperdyn::testing
