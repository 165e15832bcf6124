#pragma once

/**
 * @file symbolic.hpp
 * @brief The polynomial matrix of a two-letter word: with x generic and y a
 * fixed unimodular integer matrix, w(x, y) = H / det(x)^s where H has integer
 * polynomial entries in x11, x12, x21, x22 (text variables x1..x4) and s is
 * the number of x^-1 letters in the reduced word.
 */

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "iterid/freegroup.hpp"
#include "iterid/polyring.hpp"

namespace iterid {

struct IntMatrix2 {
  BigInt a = 1, b = 0, c = 0, d = 1;

  BigInt det() const { return a * d - b * c; }
  IntMatrix2 adjugate() const { return {d, -b, -c, a}; }
  /// Exact inverse; requires det = ±1.
  IntMatrix2 inverse() const;
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  BigInt max_abs() const;
  std::string str() const;

  friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend IntMatrix2 operator*(const BigInt& k, const IntMatrix2& x) { return {k * x.a, k * x.b, k * x.c, k * x.d}; }
  bool operator==(const IntMatrix2&) const = default;
};

/// [[1,0],[2,1]]: together with [[1,2],[0,1]] it generates a free subgroup of SL(2, Z).
IntMatrix2 default_y();
/// [[1,2],[0,1]].
IntMatrix2 sanov_x();
bool commute(const IntMatrix2& x, const IntMatrix2& y);

/// Variable order of the generic matrix x: x11, x12, x21, x22.
inline constexpr std::size_t kMatrixVars = 4;

struct RationalMatrix {
  std::array<IntPoly, 4> H;  // H11, H12, H21, H22
  unsigned s = 0;
  IntMatrix2 y;
  Word word;  // reduced

  unsigned max_degree() const;
  BigInt max_abs_coeff() const;
  bool is_identity() const;
};

RationalMatrix word_to_H(const Word& w, const IntMatrix2& y = default_y());

/// Literal matrix product of the word at (x, y).
IntMatrix2 eval_int(const Word& w, const IntMatrix2& x, const IntMatrix2& y = default_y());

/// Evaluates H at an integer matrix and divides by det(x)^s; det(x) = ±1.
IntMatrix2 eval_rational(const RationalMatrix& rm, const IntMatrix2& x);

struct ModMatrix {
  std::array<ModPoly, 4> H;
  unsigned s = 0;
  std::uint64_t q = 0;
  /// y mod q is scalar, so it commutes with every x and the verbal map degenerates.
  bool y_degenerate = false;
};

ModMatrix reduce_mod(const RationalMatrix& rm, std::uint64_t q);
/// y mod q is a scalar matrix.
bool y_degenerate_mod(const IntMatrix2& y, std::uint64_t q);

nlohmann::json to_json(const RationalMatrix& rm);
nlohmann::json to_json(const ModMatrix& mm);

}  // namespace iterid
