#pragma once

#include <random>
#include <string>

#include "iterid/certsearch.hpp"

namespace iterid::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long long uniform(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline Word random_word(std::size_t alphabet, std::size_t max_len, bool reduced = false) {
  std::vector<Letter> letters;
  const auto len = static_cast<std::size_t>(uniform(0, static_cast<long long>(max_len)));
  while (letters.size() < len) {
    Letter l{static_cast<std::uint32_t>(uniform(0, static_cast<long long>(alphabet) - 1)), uniform(0, 1) ? 1 : -1};
    if (reduced && !letters.empty() && letters.back().cancels(l)) continue;
    letters.push_back(l);
  }
  return Word(alphabet, std::move(letters));
}

inline Word random_nontrivial(std::size_t alphabet, std::size_t max_len) {
  for (;;) {
    Word w = random_word(alphabet, max_len, true);
    if (!w.empty()) return w;
  }
}

/// Product of random elementary matrices: det 1, then a random sign flip of one row.
inline IntMatrix2 random_unimodular(int steps = 4) {
  IntMatrix2 m;
  for (int i = 0; i < steps; ++i) {
    const BigInt k = uniform(-3, 3);
    m = m * (uniform(0, 1) ? IntMatrix2{1, k, 0, 1} : IntMatrix2{1, 0, k, 1});
  }
  if (uniform(0, 1)) m = IntMatrix2{m.a, m.b, -m.c, -m.d};
  return m;
}

inline ModPoly random_poly(std::uint64_t q, std::size_t n, unsigned max_deg, int terms, bool no_constant = false) {
  ModPoly p(PrimeFieldRing{q}, n);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(n, 0);
    const auto deg = static_cast<unsigned>(uniform(no_constant ? 1 : 0, max_deg));
    for (unsigned i = 0; i < deg; ++i) ++e[static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1))];
    p.add_term(Monomial(e), static_cast<std::uint64_t>(uniform(1, static_cast<long long>(q) - 1)));
  }
  return p;
}

inline Elem random_elem(const Field& F) { return F.at(static_cast<std::uint64_t>(uniform(0, static_cast<long long>(F.order()) - 1))); }

}  // namespace iterid::testing
