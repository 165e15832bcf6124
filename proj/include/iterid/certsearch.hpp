#pragma once

/**
 * @file certsearch.hpp
 * @brief Finite counterexample groups for iterated identities.
 *
 * Words with a nonzero exponent sum fail in a cyclic group Z/M. Words in the
 * commutator subgroup are searched for a periodic non-identity point of
 * x -> w(x, y) in SL(2, F_{q^k}), fields in ascending order. Results are
 * self-contained JSON certificates that verify_certificate re-checks from
 * scratch.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iterid/dynamics.hpp"
#include "iterid/freegroup.hpp"
#include "iterid/gfield.hpp"
#include "iterid/symbolic.hpp"

namespace iterid {

inline constexpr int kCertificateSchemaVersion = 1;

enum class CertKind { sl2, cyclic };

/// Structurally malformed certificate JSON (as opposed to a well-formed
/// certificate whose claims are false).
class CertificateFormatError : public InputError {
 public:
  using InputError::InputError;
};

struct Certificate {
  int schema_version = kCertificateSchemaVersion;
  std::string word;
  CertKind kind = CertKind::sl2;

  // sl2
  std::uint64_t q = 0;
  unsigned k = 0;
  std::vector<std::uint32_t> modulus;  // low-to-high, monic
  IntMatrix2 y;
  std::array<std::vector<std::uint32_t>, 4> witness;  // entries x11, x12, x21, x22, coefficients low-to-high

  // cyclic
  std::uint64_t M = 0;
  std::vector<std::uint64_t> residues;  // one per letter of the alphabet

  std::uint64_t period = 0;
  BigInt group_order = 0;
  nlohmann::json search_meta = nlohmann::json::object();
};

nlohmann::json to_json(const Certificate& c);
/// Throws CertificateFormatError on missing or mistyped fields.
Certificate certificate_from_json(const nlohmann::json& j);

struct VerifyResult {
  bool ok = false;
  std::string reason;  // empty when ok
  explicit operator bool() const { return ok; }
};

/// Re-derives every claim of the certificate: field, witness, orbit, order.
VerifyResult verify_certificate(const Certificate& c);

/// Z/M certificate for a word with some nonzero exponent sum. The word acts as
/// x -> a*x + sum_j b_j*y_j (mod M).
Certificate cyclic_counterexample(const Word& w);

struct SearchBudget {
  std::uint64_t max_field_order = 10'000;
  std::uint64_t max_prime = 10'000;
  unsigned max_extension_degree = 4;
  std::uint64_t sl2_budget = kDefaultSl2Budget;
  double time_limit_seconds = 0;  // 0: none
};

struct FieldAttempt {
  std::uint64_t q = 0;
  unsigned k = 0;
  std::string outcome;  // "degenerate-y", "no-cycle", "found"
};

struct SearchOutcome {
  std::optional<Certificate> certificate;
  std::vector<FieldAttempt> attempts;
  /// Why the search stopped without a certificate: the next field that was
  /// over budget, or the end of the candidate list.
  std::string frontier;
};

/// Fields F_{q^k} with q >= 3 prime, ascending by order, within the budget.
std::vector<std::pair<std::uint64_t, unsigned>> candidate_fields(const SearchBudget& budget);

SearchOutcome counterexample_search(const Word& w, const SearchBudget& budget = {},
                                    const IntMatrix2& y = default_y());

struct Normalized {
  Field field;
  Matrix2 x;
  bool extended = false;
  Embedding embedding;
};

/// x / sqrt(det x), over F or its quadratic extension. Throws InputError if det x = 0.
Normalized normalize_to_sl2(const Matrix2& x, const Field& F);

struct BridgeCheck {
  Normalized normalized;
  Matrix2 z;                  // w(x', y): lies on a cycle
  bool frobenius_twist = false;  // w(x', y) = ±Frob_Q(x')
  std::uint64_t bound = 0;    // frobenius_period(sol, block)
  std::uint64_t period = 0;   // minimal period of z, 0 if not periodic within bound
  bool ok = false;
};

/// For a solution of H(a) = a^(Q) (H from word_to_H(w, y) reduced mod q),
/// normalizes a to SL(2) and checks that w(x', y) is a non-identity periodic
/// point whose period divides the Frobenius bound.
BridgeCheck twisted_bridge(const TwistedSolution& sol, const Word& w, const IntMatrix2& y, std::uint64_t block);

/// The twisted system H_ij = x_ij^Q of a word over F_q.
TwistedBasis twisted_system(const Word& w, const IntMatrix2& y, std::uint64_t q, std::uint64_t Q);

/// x12*det and x21*det over F_q.
std::array<ModPoly, 2> nondegeneracy_filters(std::uint64_t q);

struct BoundsReport {
  std::size_t l = 0;
  std::size_t s = 1;
  std::size_t n = 4;
  std::size_t d = 0;
  std::size_t D0 = 3;
  std::uint64_t q_bound = 0;
  std::uint64_t q = 0;
  BigInt threshold;  // D0 * n(n+1) * d^(n^2+1)
  BigInt Q_min;      // least power of q above threshold
  unsigned Q_exponent = 0;
  BigInt k_lemma;  // (n+1) d^(n^2)
  BigInt K_lemma;  // (k-1) n + 1
  std::string cardinality_bound_expr;

  bool inequality_holds() const { return Q_min > threshold; }
};

BoundsReport theoretical_bounds(const Word& w, std::size_t s = 1);
nlohmann::json to_json(const BoundsReport& b);

/// Largest prime <= n (0 if none).
std::uint64_t largest_prime_at_most(std::uint64_t n);

}  // namespace iterid
