#include "iterid/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace iterid {

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  std::vector<std::uint32_t> e(o.exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::lcm(const Monomial& o) const {
  std::vector<std::uint32_t> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(e[i], o.exps_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && o.exps_[i]) return false;
  return true;
}

std::strong_ordering grlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw InputError("grlex comparison of monomials with different arity");
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.exponents() <=> b.exponents();
}

PrimeFieldRing::Coeff PrimeFieldRing::inv(Coeff a) const {
  if (a == 0) throw std::domain_error("inversion of zero coefficient");
  Coeff r = 1, b = a, e = q - 2;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

ModPoly reduce_mod(const IntPoly& p, std::uint64_t q) {
  PrimeFieldRing ring{q};
  ModPoly r(ring, p.nvars());
  for (const auto& [m, c] : p.terms()) r.add_term(m, ring.from_big(c));
  return r;
}

IntPoly lift_to_int(const ModPoly& p) {
  IntPoly r(IntegerRing{}, p.nvars());
  for (const auto& [m, c] : p.terms()) r.add_term(m, BigInt(c));
  return r;
}

namespace {

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

template <class Ring>
std::string poly_text(const Polynomial<Ring>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    BigInt v(c);
    const bool negative = v < 0;
    if (negative) v = -v;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const std::string mono = monomial_text(m);
    if (mono.empty())
      os << v;
    else if (v == 1)
      os << mono;
    else
      os << v << "*" << mono;
  }
  return os.str();
}

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : nvars_(nvars) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  IntPoly parse() {
    struct RawTerm {
      BigInt coeff;
      std::vector<std::uint32_t> exps;
    };
    std::vector<RawTerm> raw;
    if (s_.empty()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      RawTerm t{1, {}};
      bool have_factor = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.coeff = number();
        have_factor = true;
        if (peek() == '*') {
          get();
          if (peek() != 'x') fail("expected variable after '*'");
        }
      }
      while (peek() == 'x') {
        get();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
        const auto idx = static_cast<std::size_t>(number());
        if (idx == 0) fail("variables are numbered from x1");
        if (idx > nvars_) fail("variable x" + std::to_string(idx) + " outside x1..x" + std::to_string(nvars_));
        std::uint32_t e = 1;
        if (peek() == '^') {
          get();
          if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
          e = static_cast<std::uint32_t>(number());
        }
        if (t.exps.size() < idx) t.exps.resize(idx, 0);
        t.exps[idx - 1] += e;
        have_factor = true;
        if (peek() == '*') {
          get();
          if (peek() != 'x') fail("expected variable after '*'");
        }
      }
      if (!have_factor) fail("empty term");
      t.coeff *= sign;
      nvars_ = std::max(nvars_, t.exps.size());
      raw.push_back(std::move(t));
    }
    IntPoly p(IntegerRing{}, nvars_);
    for (auto& t : raw) {
      t.exps.resize(nvars_, 0);
      p.add_term(Monomial(std::move(t.exps)), t.coeff);
    }
    return p;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  BigInt number() {
    BigInt v = 0;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial parse error at position " + std::to_string(pos_) + ": " + what);
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
};

}  // namespace

std::string to_string(const IntPoly& p) { return poly_text(p); }
std::string to_string(const ModPoly& p) { return poly_text(p); }

IntPoly parse_int_poly(std::string_view text, std::size_t nvars) { return PolyParser(text, nvars).parse(); }

ModPoly parse_mod_poly(std::string_view text, std::size_t nvars, std::uint64_t q) {
  return reduce_mod(parse_int_poly(text, nvars), q);
}

BigInt max_abs_coeff(const IntPoly& p) {
  BigInt best = 0;
  for (const auto& [m, c] : p.terms()) best = std::max(best, BigInt(abs(c)));
  return best;
}

DivisionResult divide(const ModPoly& f, const std::vector<ModPoly>& divisors) {
  const auto& ring = f.ring();
  std::vector<Monomial> leads;
  std::vector<PrimeFieldRing::Coeff> lead_inv;
  for (const auto& g : divisors) {
    if (g.is_zero()) throw InputError("division by the zero polynomial");
    if (g.nvars() != f.nvars()) throw InputError("divisor from a different ring");
    leads.push_back(g.leading_monomial());
    lead_inv.push_back(ring.inv(g.leading_coeff()));
  }

  DivisionResult out{std::vector<ModPoly>(divisors.size(), ModPoly(ring, f.nvars())), ModPoly(ring, f.nvars())};
  ModPoly p = f;
  while (!p.is_zero()) {
    const Monomial lm = p.leading_monomial();
    const auto lc = p.leading_coeff();
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (!leads[i].divides(lm)) continue;
      const Monomial m = leads[i].quotient_of(lm);
      const auto c = ring.mul(lc, lead_inv[i]);
      out.quotients[i].add_term(m, c);
      p.subtract_term_multiple(m, c, divisors[i]);
      divided = true;
      break;
    }
    if (!divided) {
      out.remainder.add_term(lm, lc);
      p.add_term(lm, ring.neg(lc));
    }
  }
  return out;
}

ModPoly s_polynomial(const ModPoly& f, const ModPoly& g) {
  const auto& ring = f.ring();
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  ModPoly s = f.times_term(f.leading_monomial().quotient_of(l), ring.inv(f.leading_coeff()));
  s -= g.times_term(g.leading_monomial().quotient_of(l), ring.inv(g.leading_coeff()));
  return s;
}

bool buchberger_criterion(const std::vector<ModPoly>& generators) {
  std::vector<ModPoly> gens;
  for (const auto& g : generators)
    if (!g.is_zero()) gens.push_back(g);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!divide(s_polynomial(gens[i], gens[j]), gens).remainder.is_zero()) return false;
  return true;
}

TwistedBasis::TwistedBasis(std::vector<ModPoly> polys, std::uint64_t Q) : polys_(std::move(polys)), Q_(Q) {
  if (polys_.empty()) throw InputError("twisted basis needs at least one polynomial");
  const std::uint64_t q = polys_.front().ring().q;
  std::uint64_t p = q;
  while (p < Q) p *= q;
  if (Q < q || p != Q) throw InputError("Q = " + std::to_string(Q) + " is not a power of q = " + std::to_string(q));
  if (Q > (std::uint64_t{1} << 31)) throw InputError("Q too large");
  for (const auto& f : polys_)
    if (f.nvars() != polys_.size() || f.ring().q != q)
      throw InputError("twisted basis: n polynomials in n variables over one prime field");
  const std::size_t n = polys_.size();
  for (std::size_t i = 0; i < n; ++i) {
    ModPoly g = polys_[i];
    g.add_term(Monomial::var(n, i, static_cast<std::uint32_t>(Q)), g.ring().neg(g.ring().one()));
    gens_.push_back(std::move(g));
  }
}

bool TwistedBasis::degree_condition() const {
  return std::all_of(polys_.begin(), polys_.end(),
                     [this](const ModPoly& f) { return f.degree() < static_cast<long long>(Q_); });
}

GroebnerCheck groebner_check_detail(const TwistedBasis& tb) {
  GroebnerCheck out;
  out.degree_ok = tb.degree_condition();
  const auto& gens = tb.generators();
  bool any_zero = false;
  out.leading_terms_coprime = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) {
      any_zero = true;
      continue;
    }
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!gens[j].is_zero() && !gens[i].leading_monomial().coprime(gens[j].leading_monomial()))
        out.leading_terms_coprime = false;
  }
  if (any_zero) out.leading_terms_coprime = false;
  const std::size_t live = static_cast<std::size_t>(
      std::count_if(gens.begin(), gens.end(), [](const ModPoly& g) { return !g.is_zero(); }));
  out.s_pairs = live * (live - (live ? 1 : 0)) / 2;
  out.s_polys_reduce_to_zero = buchberger_criterion(gens);
  return out;
}

bool check_groebner_xq(const TwistedBasis& tb) { return groebner_check_detail(tb).is_groebner(); }

ModPoly normal_form(const ModPoly& f, const TwistedBasis& tb) {
  if (!tb.degree_condition())
    throw InputError("twisted basis is not a Groebner basis (some deg f_i >= Q)");
  if (f.nvars() != tb.n() || !(f.ring() == tb.polys().front().ring()))
    throw InputError("polynomial and basis live in different rings");
  return divide(f, tb.generators()).remainder;
}

bool ideal_member(const ModPoly& f, const TwistedBasis& tb) { return normal_form(f, tb).is_zero(); }

std::uint64_t standard_monomial_count(std::size_t n, std::uint64_t Q) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) c *= Q;
  return c;
}

std::vector<Monomial> standard_monomials(std::size_t n, std::uint64_t Q) {
  if (Q == 0) return {};
  long double approx = 1;
  for (std::size_t i = 0; i < n; ++i) approx *= static_cast<long double>(Q);
  if (approx > 1e7) throw BudgetExceeded("too many standard monomials to list");
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(n, 0);
  while (true) {
    out.emplace_back(e);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++e[i] < Q) break;
      e[i] = 0;
    }
    if (i == n) break;
  }
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

DependenceBounds dependence_bounds(std::size_t n, std::uint64_t d) {
  if (d == 0) throw InputError("degree bound must be positive");
  DependenceBounds b;
  b.crude_s = (n + 1) * boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(n));
  for (std::uint64_t s = 1;; ++s) {
    const BigInt unknowns = binomial(s + n + 1, n + 1);
    const BigInt equations = binomial(s * d + n, n);
    if (!b.weak_s && unknowns >= equations) b.weak_s = s;
    if (unknowns > equations) {
      b.strict_s = s;
      break;
    }
  }
  return b;
}

namespace {

std::vector<std::vector<std::uint32_t>> exponent_vectors_up_to(std::size_t nv, std::uint64_t s) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> e(nv, 0);
  // Recursive fill by total degree budget.
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
    if (i == nv) {
      out.push_back(e);
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      e[i] = static_cast<std::uint32_t>(v);
      self(self, i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(rec, 0, s);
  return out;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Nonzero kernel vector of a matrix over F_q, if any.
std::optional<std::vector<std::uint64_t>> kernel_vector(std::vector<std::vector<std::uint64_t>> m,
                                                        std::size_t cols, const PrimeFieldRing& ring) {
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const auto inv = ring.inv(m[row][col]);
    for (auto& v : m[row]) v = ring.mul(v, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const auto factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] = ring.sub(m[r][c], ring.mul(factor, m[row][c]));
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::size_t free = 0;
  while (free < cols && is_pivot[free]) ++free;
  if (free == cols) return std::nullopt;
  std::vector<std::uint64_t> v(cols, 0);
  v[free] = 1;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = ring.neg(m[r][free]);
  return v;
}

}  // namespace

AlgebraicDependence algebraic_dependence(const std::vector<ModPoly>& fs, std::uint64_t d) {
  if (fs.size() < 2) throw InputError("algebraic dependence needs n+1 >= 2 polynomials");
  const std::size_t n = fs.size() - 1;
  const auto ring = fs.front().ring();
  bool any_nonzero = false;
  for (const auto& f : fs) {
    if (f.nvars() != n || !(f.ring() == ring)) throw InputError("need n+1 polynomials in n variables over one field");
    if (f.degree() > static_cast<long long>(d)) throw InputError("polynomial degree exceeds the stated bound d");
    any_nonzero = any_nonzero || !f.is_zero();
  }
  if (!any_nonzero) throw InputError("all polynomials are zero");

  const DependenceBounds bounds = dependence_bounds(n, d);
  std::unordered_map<std::vector<std::uint32_t>, ModPoly, VecHash> products;
  products.emplace(std::vector<std::uint32_t>(n + 1, 0), ModPoly::constant(ring, n, ring.one()));
  auto product = [&](const std::vector<std::uint32_t>& alpha) -> const ModPoly& {
    if (auto it = products.find(alpha); it != products.end()) return it->second;
    // Built up along the exponent vector so every prefix is memoized.
    std::vector<std::uint32_t> cur(n + 1, 0);
    const ModPoly* prev = &products.at(cur);
    for (std::size_t i = 0; i <= n; ++i) {
      while (cur[i] < alpha[i]) {
        ++cur[i];
        auto it = products.find(cur);
        if (it == products.end()) it = products.emplace(cur, *prev * fs[i]).first;
        prev = &it->second;
      }
    }
    return *prev;
  };

  for (std::uint64_t s = 1; s <= bounds.strict_s; ++s) {
    const auto unknowns = exponent_vectors_up_to(n + 1, s);
    std::map<Monomial, std::size_t, GrlexGreater> row_of;
    std::vector<const ModPoly*> cols;
    for (const auto& alpha : unknowns) {
      const ModPoly& p = product(alpha);
      cols.push_back(&p);
      for (const auto& [m, c] : p.terms()) row_of.try_emplace(m, row_of.size());
    }
    std::vector<std::vector<std::uint64_t>> matrix(row_of.size(), std::vector<std::uint64_t>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [m, c] : cols[j]->terms()) matrix[row_of.at(m)][j] = c;

    if (auto v = kernel_vector(std::move(matrix), cols.size(), ring)) {
      ModPoly psi(ring, n + 1);
      for (std::size_t j = 0; j < unknowns.size(); ++j) psi.add_term(Monomial(unknowns[j]), (*v)[j]);
      return {std::move(psi), s, bounds};
    }
  }
  throw std::logic_error("no algebraic relation within the guaranteed degree");  // cannot happen
}

}  // namespace iterid
