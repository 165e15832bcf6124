#pragma once

/**
 * @file dynamics.hpp
 * @brief Iteration of polynomial maps over F_q and of verbal maps on SL(2, F).
 *
 * Symbolic side: j-th iterates of a polynomial map and the congruence
 * f_i^{(j)} = x_i^{Q^j} modulo the twisted ideal. Enumerative side: solutions
 * of f_i(a) = a_i^Q over small extensions, and the functional graph of
 * x -> w(x, y) on SL(2, F) (or of an s-word system on SL(2, F)^s).
 */

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "iterid/freegroup.hpp"
#include "iterid/gfield.hpp"
#include "iterid/polyring.hpp"
#include "iterid/symbolic.hpp"

namespace iterid {

using PolyMap = std::vector<ModPoly>;

inline constexpr std::size_t kDefaultTermCap = 10'000;

/// y mod q is scalar in SL(2, F): the verbal map ignores y.
class DegenerateGenerator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identity map on n variables over F_q.
PolyMap identity_map(std::size_t n, std::uint64_t q);

/// f^{(j)}, the j-fold composite. Throws BudgetExceeded past `max_terms`.
PolyMap compose_map(const PolyMap& f, int j, std::size_t max_terms = kDefaultTermCap);

/// Applies f pointwise over F.
std::vector<Elem> apply_map(const PolyMap& f, const Field& F, std::span<const Elem> point);
Elem evaluate(const ModPoly& p, const Field& F, std::span<const Elem> point);

/// Checks f_i^{(j)} - x_i^{Q^j} ∈ I_Q for all i and all j <= j_max by normal forms.
bool verify_iteration_congruence(const TwistedBasis& tb, int j_max, std::size_t max_terms = kDefaultTermCap);

struct TwistedSolution {
  Field field;
  std::vector<Elem> point;
  std::uint64_t Q = 0;
};

bool satisfies(const TwistedBasis& tb, const TwistedSolution& sol);

inline constexpr std::uint64_t kDefaultPointBudget = 1'000'000;

/// Solutions of f_i(a) = a_i^Q over F_{q^k}, 1 <= k <= k_max, with D(a) != 0.
/// Each point is reported once, over the smallest field containing it. This is
/// only the part of the solution set visible in these small fields.
std::vector<TwistedSolution> twisted_solutions(const TwistedBasis& tb, unsigned k_max, const ModPoly& D,
                                               std::uint64_t budget = kDefaultPointBudget);

/// block * l for the least l >= 1 with a^{Q^l} = a coordinatewise.
std::uint64_t frobenius_period(const TwistedSolution& sol, std::uint64_t block);

/// x -> w(x, y mod q) on invertible matrices over F.
class VerbalMap {
 public:
  VerbalMap(const Word& w, const IntMatrix2& y, Field F);

  Matrix2 operator()(const Matrix2& x) const;
  /// w∘n(x): n applications.
  Matrix2 iterate(const Matrix2& x, std::uint64_t n) const;
  const Field& field() const { return f_; }
  const Matrix2& y() const { return y_; }
  bool y_degenerate() const { return is_scalar(y_); }

 private:
  Field f_;
  std::vector<Letter> letters_;
  Matrix2 y_, y_inv_;
};

/// y reduced into F, as a matrix over F.
Matrix2 reduce_matrix(const IntMatrix2& y, const Field& F);

struct OrbitRecord {
  Matrix2 start;
  std::uint64_t tail_length = 0;
  std::uint64_t period = 0;
  std::vector<Matrix2> cycle;
};

/// Forward orbit of `start` under the verbal map until it closes up.
OrbitRecord orbit(const VerbalMap& phi, const Matrix2& start, std::uint64_t budget = kDefaultSl2Budget);

struct CyclePoint {
  Matrix2 x;
  std::uint64_t period = 0;
};

struct CycleInventory {
  std::uint64_t group_order = 0;
  std::uint64_t cycles = 0;           // including the identity's, if any
  std::uint64_t cycle_elements = 0;   // including the identity, if periodic
  std::vector<CyclePoint> points;     // non-identity periodic points, index order
};

/// Every non-identity periodic point of x -> w(x, y) on SL(2, F), with minimal
/// periods. Throws DegenerateGenerator for scalar y mod q, BudgetExceeded when
/// |SL(2, F)| exceeds the budget.
CycleInventory cycle_search_sl2(const Word& w, const IntMatrix2& y, const Field& F,
                                std::uint64_t budget = kDefaultSl2Budget);

struct TupleCycle {
  std::vector<Matrix2> tuple;
  std::uint64_t period = 0;
};

/// Periodic tuples of (a_1..a_s) -> (w_1(a), .., w_s(a)) on SL(2, F)^s whose
/// whole cycle avoids the identity in every coordinate.
std::vector<TupleCycle> cycle_search_tuples(const WordSystem& ws, const Field& F,
                                            std::uint64_t budget = kDefaultSl2Budget);

/// Evaluates a word on s letters at matrices over F.
Matrix2 eval_word(const Word& w, const Field& F, std::span<const Matrix2> values);

}  // namespace iterid
