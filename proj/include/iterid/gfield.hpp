#pragma once

/**
 * @file gfield.hpp
 * @brief Explicit finite fields F_{q^k} = F_q[t]/(m(t)) with a deterministic
 * choice of modulus, Frobenius, square roots with on-demand quadratic
 * extension, and indexed enumeration of SL(2, F).
 *
 * Elements are packed as integers whose base-q digits are the coordinates in
 * the power basis 1, t, ..., t^{k-1} (lowest degree in the least significant
 * digit). A Field is a cheap, shared, immutable handle; all arithmetic goes
 * through it.
 */

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace iterid {

/// Packed field element. Only meaningful together with the Field that made it.
struct Elem {
  std::uint32_t code = 0;
  bool operator==(const Elem&) const = default;
};

bool is_prime(std::uint64_t n);

class Field {
 public:
  /// F_{q^k} with the lexicographically smallest monic irreducible modulus.
  static Field build(std::uint64_t q, unsigned k);
  /// Rebuilds a field from a serialized monic modulus (low-to-high, leading 1
  /// included); validates primality and irreducibility.
  static Field from_modulus(std::uint64_t q, std::vector<std::uint32_t> modulus);

  std::uint64_t q() const;
  unsigned k() const;
  std::uint64_t order() const;
  /// Monic modulus, low-to-high, length k+1.
  const std::vector<std::uint32_t>& modulus() const;

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  /// Image of an integer under Z -> F_q ⊂ F.
  Elem from_int(long long v) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  /// The class of t (the power-basis generator).
  Elem basis_root() const;
  Elem at(std::uint64_t code) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^q; `times` applications give a^(q^times).
  Elem frobenius(Elem a, unsigned times = 1) const;

  bool is_square(Elem a) const;
  /// A square root if one exists in this field; the smaller of ±r in
  /// coordinate order.
  std::optional<Elem> sqrt(Elem a) const;

  /// Lexicographic order on coordinate vectors, lowest degree first.
  bool coord_less(Elem a, Elem b) const;
  /// Generator of the multiplicative group (smallest code that works).
  Elem primitive() const;

  std::string describe() const;
  std::string to_string(Elem a) const;

  bool operator==(const Field& other) const;

 private:
  struct Data;
  static std::shared_ptr<const Data> make_data(std::uint64_t q, std::vector<std::uint32_t> modulus);
  explicit Field(std::shared_ptr<const Data> data) : d_(std::move(data)) {}
  std::shared_ptr<const Data> d_;
};

/// Field map F -> E fixing F_q, determined by the image of t.
struct Embedding {
  Field from;
  Field to;
  Elem image_of_root;

  Elem apply(Elem a) const;
};

/// The canonical embedding of F_{q^k} into F_{q^{kd}}: t goes to the smallest
/// root (coordinate order) of F's modulus in the larger field.
Embedding canonical_embedding(const Field& from, const Field& to);

struct SqrtResult {
  Field field;  // F itself, or the degree-2k extension
  Elem root;    // root^2 == embed(a) in `field`
  bool extended = false;
  bool degenerate = false;  // a == 0
  Embedding embedding;      // identity map when not extended
};

SqrtResult sqrt_or_extend(Elem a, const Field& f);

struct Matrix2 {
  Elem a, b, c, d;  // [[a, b], [c, d]]
  bool operator==(const Matrix2&) const = default;
};

Matrix2 identity2(const Field& f);
Matrix2 mul(const Field& f, const Matrix2& x, const Matrix2& y);
Elem det(const Field& f, const Matrix2& x);
/// Inverse of an invertible matrix (adjugate scaled by 1/det).
Matrix2 inverse(const Field& f, const Matrix2& x);
Matrix2 scale(const Field& f, const Matrix2& x, Elem s);
Matrix2 map_matrix(const Matrix2& x, const std::function<Elem(Elem)>& fn);
bool is_scalar(const Matrix2& x);
bool commute(const Field& f, const Matrix2& x, const Matrix2& y);
std::string to_string(const Field& f, const Matrix2& x);

/// N^3 - N.
std::uint64_t sl2_order(std::uint64_t field_order);

inline constexpr std::uint64_t kDefaultSl2Budget = 1'000'000;

/// Bijection between SL(2, F) and [0, N^3 - N).
class Sl2Indexer {
 public:
  explicit Sl2Indexer(Field f, std::uint64_t budget = kDefaultSl2Budget);

  std::uint64_t size() const { return size_; }
  Matrix2 at(std::uint64_t index) const;
  std::uint64_t index(const Matrix2& m) const;
  const Field& field() const { return f_; }

 private:
  Field f_;
  std::uint64_t n_;
  std::uint64_t size_;
};

/// Visits every element of SL(2, F) exactly once, in index order.
void sl2_enumerate(const Field& f, const std::function<void(const Matrix2&)>& visit,
                   std::uint64_t budget = kDefaultSl2Budget);

}  // namespace iterid
