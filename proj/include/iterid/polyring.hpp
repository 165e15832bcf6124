#pragma once

/**
 * @file polyring.hpp
 * @brief Sparse multivariate polynomials over Z and F_q in graded-lex order,
 * the multivariate division algorithm, and the ideal machinery of twisted
 * systems f_i - x_i^Q: Buchberger verification, normal forms, standard
 * monomials and algebraic dependence of n+1 polynomials in n variables.
 *
 * Text format: terms "c*x1^a1*x2^a2" joined by " + " / " - ", exponent
 * omitted when 1, variable omitted when its exponent is 0, coefficient
 * omitted when it is 1 on a non-constant monomial. The zero polynomial is "0".
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iterid/errors.hpp"

namespace iterid {

using BigInt = boost::multiprecision::cpp_int;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps)
      : exps_(std::move(exps)), degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0})) {}
  static Monomial one(std::size_t n) { return Monomial(std::vector<std::uint32_t>(n, 0)); }
  static Monomial var(std::size_t n, std::size_t i, std::uint32_t e = 1) {
    std::vector<std::uint32_t> v(n, 0);
    v.at(i) = e;
    return Monomial(std::move(v));
  }

  std::size_t nvars() const { return exps_.size(); }
  std::uint64_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / this, requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint64_t degree_ = 0;
};

/// Graded lex: total degree first, then lexicographic on the exponent vector.
std::strong_ordering grlex_cmp(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_cmp(a, b) > 0; }
};

struct IntegerRing {
  using Coeff = BigInt;
  Coeff zero() const { return 0; }
  Coeff one() const { return 1; }
  Coeff from_int(long long v) const { return v; }
  Coeff from_big(const BigInt& v) const { return v; }
  Coeff add(const Coeff& a, const Coeff& b) const { return a + b; }
  Coeff sub(const Coeff& a, const Coeff& b) const { return a - b; }
  Coeff neg(const Coeff& a) const { return -a; }
  Coeff mul(const Coeff& a, const Coeff& b) const { return a * b; }
  bool is_zero(const Coeff& a) const { return a == 0; }
  bool operator==(const IntegerRing&) const { return true; }
};

struct PrimeFieldRing {
  using Coeff = std::uint64_t;
  std::uint64_t q = 2;

  Coeff zero() const { return 0; }
  Coeff one() const { return 1 % q; }
  Coeff from_int(long long v) const {
    long long r = v % static_cast<long long>(q);
    return static_cast<Coeff>(r < 0 ? r + static_cast<long long>(q) : r);
  }
  Coeff from_big(const BigInt& v) const {
    BigInt r = v % q;
    if (r < 0) r += q;
    return static_cast<Coeff>(r);
  }
  Coeff add(Coeff a, Coeff b) const { return (a + b) % q; }
  Coeff sub(Coeff a, Coeff b) const { return (a + q - b) % q; }
  Coeff neg(Coeff a) const { return (q - a) % q; }
  Coeff mul(Coeff a, Coeff b) const { return static_cast<Coeff>(static_cast<unsigned __int128>(a) * b % q); }
  Coeff inv(Coeff a) const;
  bool is_zero(Coeff a) const { return a == 0; }
  bool operator==(const PrimeFieldRing& o) const { return q == o.q; }
};

template <class Ring>
class Polynomial {
 public:
  using Coeff = typename Ring::Coeff;
  using Terms = std::map<Monomial, Coeff, GrlexGreater>;

  Polynomial() = default;
  Polynomial(Ring ring, std::size_t nvars) : ring_(std::move(ring)), nvars_(nvars) {}

  static Polynomial constant(Ring ring, std::size_t nvars, const Coeff& c) {
    Polynomial p(ring, nvars);
    p.add_term(Monomial::one(nvars), c);
    return p;
  }
  static Polynomial variable(Ring ring, std::size_t nvars, std::size_t i) {
    Polynomial p(ring, nvars);
    p.add_term(Monomial::var(nvars, i), ring.one());
    return p;
  }
  static Polynomial term(Ring ring, const Monomial& m, const Coeff& c) {
    Polynomial p(ring, m.nvars());
    p.add_term(m, c);
    return p;
  }

  const Ring& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  long long degree() const { return terms_.empty() ? -1 : static_cast<long long>(terms_.begin()->first.degree()); }
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Coeff& leading_coeff() const { return terms_.begin()->second; }

  Coeff coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ring_.zero() : it->second;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (m.nvars() != nvars_) throw InputError("monomial arity does not match polynomial ring");
    if (ring_.is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, ring_.neg(c));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r(ring_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, ring_.neg(c));
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial r(a.ring_, a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, a.ring_.mul(ca, cb));
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Coeff& c) const {
    Polynomial r(ring_, nvars_);
    if (ring_.is_zero(c)) return r;
    for (const auto& [m, v] : terms_) r.add_term(m, ring_.mul(v, c));
    return r;
  }

  /// this * c * m
  Polynomial times_term(const Monomial& m, const Coeff& c) const {
    Polynomial r(ring_, nvars_);
    for (const auto& [mm, v] : terms_) r.add_term(mm * m, ring_.mul(v, c));
    return r;
  }

  /// this - c * m * g, in place.
  void subtract_term_multiple(const Monomial& m, const Coeff& c, const Polynomial& g) {
    for (const auto& [mm, v] : g.terms_) add_term(mm * m, ring_.neg(ring_.mul(v, c)));
  }

  Polynomial pow(std::uint64_t e) const {
    Polynomial r = constant(ring_, nvars_, ring_.one());
    Polynomial b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Substitutes subs[i] for x_i. All subs must share a ring and arity.
  Polynomial compose(const std::vector<Polynomial>& subs, std::size_t max_terms = 0) const {
    if (subs.size() != nvars_) throw InputError("composition arity mismatch");
    const std::size_t target = subs.empty() ? 0 : subs.front().nvars();
    Polynomial r(ring_, target);
    // powers[i][e] = subs[i]^e, filled lazily
    std::vector<std::vector<Polynomial>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(ring_, target, ring_.one()));
    for (const auto& [m, c] : terms_) {
      Polynomial t = constant(ring_, target, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        auto& pw = powers[i];
        while (pw.size() <= m[i]) {
          pw.push_back(pw.back() * subs[i]);
          if (max_terms && pw.back().size() > max_terms)
            throw BudgetExceeded("composition exceeds the term cap of " + std::to_string(max_terms));
        }
        if (m[i]) t *= pw[m[i]];
      }
      r += t;
      if (max_terms && r.size() > max_terms)
        throw BudgetExceeded("composition exceeds the term cap of " + std::to_string(max_terms));
    }
    return r;
  }

  /// Evaluates at a point in any commutative ring given by the callbacks.
  template <class V, class Lift, class Add, class Mul>
  V evaluate(const std::vector<V>& point, const V& zero, const V& one, Lift lift, Add add, Mul mul) const {
    if (point.size() != nvars_) throw InputError("evaluation point has wrong arity");
    std::vector<std::vector<V>> powers(nvars_, std::vector<V>{one});
    V acc = zero;
    for (const auto& [m, c] : terms_) {
      V t = lift(c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        auto& pw = powers[i];
        while (pw.size() <= m[i]) pw.push_back(mul(pw.back(), point[i]));
        if (m[i]) t = mul(t, pw[m[i]]);
      }
      acc = add(acc, t);
    }
    return acc;
  }

  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

 private:
  void check_compatible(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || !(ring_ == o.ring_)) throw InputError("polynomials from different rings");
  }

  Ring ring_{};
  std::size_t nvars_ = 0;
  Terms terms_;
};

using IntPoly = Polynomial<IntegerRing>;
using ModPoly = Polynomial<PrimeFieldRing>;

ModPoly reduce_mod(const IntPoly& p, std::uint64_t q);
IntPoly lift_to_int(const ModPoly& p);

std::string to_string(const IntPoly& p);
std::string to_string(const ModPoly& p);
/// Parses the text format; the variable count is max(nvars, highest index used).
IntPoly parse_int_poly(std::string_view text, std::size_t nvars);
ModPoly parse_mod_poly(std::string_view text, std::size_t nvars, std::uint64_t q);

/// Largest absolute coefficient.
BigInt max_abs_coeff(const IntPoly& p);

struct DivisionResult {
  std::vector<ModPoly> quotients;
  ModPoly remainder;
};

/// Multivariate division in grlex order, choosing the smallest dividing index.
DivisionResult divide(const ModPoly& f, const std::vector<ModPoly>& divisors);

ModPoly s_polynomial(const ModPoly& f, const ModPoly& g);

/// Buchberger's criterion: every S-polynomial reduces to zero.
bool buchberger_criterion(const std::vector<ModPoly>& generators);

/// The polynomials f_1..f_n over F_q and Q = q^e, standing for the
/// generators f_i - x_i^Q of the ideal I_Q.
class TwistedBasis {
 public:
  TwistedBasis(std::vector<ModPoly> polys, std::uint64_t Q);

  const std::vector<ModPoly>& polys() const { return polys_; }
  std::uint64_t Q() const { return Q_; }
  std::uint64_t q() const { return polys_.front().ring().q; }
  std::size_t n() const { return polys_.size(); }
  /// f_i - x_i^Q.
  const std::vector<ModPoly>& generators() const { return gens_; }
  /// max deg f_i < Q, under which the generators have leading monomials x_i^Q.
  bool degree_condition() const;

 private:
  std::vector<ModPoly> polys_;
  std::uint64_t Q_;
  std::vector<ModPoly> gens_;
};

struct GroebnerCheck {
  bool degree_ok = false;
  bool leading_terms_coprime = false;
  std::size_t s_pairs = 0;
  bool s_polys_reduce_to_zero = false;
  bool is_groebner() const { return degree_ok && s_polys_reduce_to_zero; }
};

GroebnerCheck groebner_check_detail(const TwistedBasis& tb);
bool check_groebner_xq(const TwistedBasis& tb);

/// Unique remainder modulo I_Q. Throws InputError unless the basis satisfies
/// the degree condition.
ModPoly normal_form(const ModPoly& f, const TwistedBasis& tb);
bool ideal_member(const ModPoly& f, const TwistedBasis& tb);

std::uint64_t standard_monomial_count(std::size_t n, std::uint64_t Q);
/// Monomials with every exponent < Q, in grlex-descending order.
std::vector<Monomial> standard_monomials(std::size_t n, std::uint64_t Q);

BigInt binomial(std::uint64_t n, std::uint64_t k);

struct DependenceBounds {
  std::uint64_t weak_s = 0;    // smallest s with C(s+n+1,n+1) >= C(sd+n,n)
  std::uint64_t strict_s = 0;  // smallest s with C(s+n+1,n+1) >  C(sd+n,n)
  BigInt crude_s;              // (n+1) d^n
};

DependenceBounds dependence_bounds(std::size_t n, std::uint64_t d);

struct AlgebraicDependence {
  ModPoly psi;           // in n+1 variables
  std::uint64_t s = 0;   // degree budget at which the relation was found
  DependenceBounds bounds;
};

/// Nonzero Psi with Psi(F_1..F_{n+1}) = 0, of least degree budget s; found
/// by linear algebra over F_q on Psi's unknown coefficients.
AlgebraicDependence algebraic_dependence(const std::vector<ModPoly>& fs, std::uint64_t d);

}  // namespace iterid
