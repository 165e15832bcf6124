#include "iterid/gfield.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "iterid/errors.hpp"

namespace iterid {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;
constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

using UPoly = std::vector<std::uint64_t>;  // univariate over F_q, low-to-high

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<unsigned __int128>(r) * b % m;
    b = static_cast<unsigned __int128>(b) * b % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t q) { return mod_pow(a, q - 2, q); }

// r = r mod f, f monic.
void poly_mod(UPoly& r, const UPoly& f, std::uint64_t q) {
  trim(r);
  const std::size_t df = f.size() - 1;
  while (r.size() > df) {
    const std::uint64_t lead = r.back();
    const std::size_t shift = r.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      r[shift + i] = (r[shift + i] + (q - lead) * f[i]) % q;
    trim(r);
  }
}

UPoly poly_mulmod(const UPoly& a, const UPoly& b, const UPoly& f, std::uint64_t q) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q;
  }
  poly_mod(r, f, q);
  return r;
}

UPoly poly_powmod(UPoly base, std::uint64_t e, const UPoly& f, std::uint64_t q) {
  UPoly r{1};
  poly_mod(base, f, q);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, q);
    base = poly_mulmod(base, base, f, q);
    e >>= 1;
  }
  return r;
}

UPoly poly_gcd(UPoly a, UPoly b, std::uint64_t q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    const std::uint64_t inv = mod_inv(b.back(), q);
    for (auto& c : b) c = c * inv % q;
    poly_mod(a, b, q);
    std::swap(a, b);
  }
  return a;
}

// Ben-Or: f of degree k is irreducible iff gcd(t^{q^i} - t, f) = 1 for i <= k/2.
bool is_irreducible(const UPoly& f, std::uint64_t q) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  UPoly t{0, 1};
  UPoly power = t;
  for (std::size_t i = 1; i <= k / 2; ++i) {
    power = poly_powmod(power, q, f, q);
    UPoly diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + q - 1) % q;
    trim(diff);
    if (diff.empty()) return false;
    UPoly g = poly_gcd(f, diff, q);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

struct Field::Data {
  std::uint64_t q = 0;
  unsigned k = 0;
  std::uint64_t order = 0;
  std::vector<std::uint32_t> modulus;  // monic, length k+1
  UPoly modulus_poly;
  std::vector<std::uint64_t> place;  // q^i
  std::uint32_t primitive = 0;
  // log/exp tables, present when order <= kTableLimit
  std::vector<std::uint32_t> exp_table;  // length 2(order-1)
  std::vector<std::uint32_t> log_table;  // length order

  UPoly unpack(std::uint32_t code) const {
    UPoly p(k, 0);
    for (unsigned i = 0; i < k; ++i) {
      p[i] = code % q;
      code = static_cast<std::uint32_t>(code / q);
    }
    trim(p);
    return p;
  }

  std::uint32_t pack(const UPoly& p) const {
    std::uint64_t code = 0;
    for (std::size_t i = p.size(); i-- > 0;) code = code * q + p[i];
    return static_cast<std::uint32_t>(code);
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    if (k == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % q);
    return pack(poly_mulmod(unpack(a), unpack(b), modulus_poly, q));
  }

  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

std::shared_ptr<const Field::Data> Field::make_data(std::uint64_t q,
                                                  std::vector<std::uint32_t> modulus) {
  auto d = std::make_shared<Field::Data>();
  d->q = q;
  d->k = static_cast<unsigned>(modulus.size() - 1);
  d->modulus = std::move(modulus);
  d->modulus_poly.assign(d->modulus.begin(), d->modulus.end());
  d->order = 1;
  d->place.resize(d->k + 1);
  for (unsigned i = 0; i <= d->k; ++i) {
    d->place[i] = d->order;
    if (i < d->k) d->order *= q;
  }

  const std::uint64_t group = d->order - 1;
  const auto factors = prime_factors(group);
  for (std::uint64_t c = 1; c < d->order; ++c) {
    const auto cand = static_cast<std::uint32_t>(c);
    bool generates = true;
    for (auto p : factors)
      if (d->slow_pow(cand, group / p) == 1) {
        generates = false;
        break;
      }
    if (generates) {
      d->primitive = cand;
      break;
    }
  }
  if (group == 0) d->primitive = 1;  // unreachable for valid fields

  if (d->order <= kTableLimit) {
    d->exp_table.resize(2 * group);
    d->log_table.assign(d->order, 0);
    std::uint32_t x = 1;
    for (std::uint64_t i = 0; i < group; ++i) {
      d->exp_table[i] = x;
      d->exp_table[i + group] = x;
      d->log_table[x] = static_cast<std::uint32_t>(i);
      x = d->slow_mul(x, d->primitive);
    }
  }
  return d;
}

Field Field::build(std::uint64_t q, unsigned k) {
  if (!is_prime(q)) throw InputError("field characteristic " + std::to_string(q) + " is not prime");
  if (k < 1) throw InputError("extension degree must be at least 1");
  long double approx = 1;
  for (unsigned i = 0; i < k; ++i) approx *= static_cast<long double>(q);
  if (approx > static_cast<long double>(kMaxOrder))
    throw InputError("field order " + std::to_string(q) + "^" + std::to_string(k) +
                     " exceeds the supported maximum 2^31");

  // Low-degree coefficient is the most significant position of the scan.
  std::vector<std::uint32_t> digits(k, 0);
  while (true) {
    UPoly f(digits.begin(), digits.end());
    f.push_back(1);
    if (is_irreducible(f, q)) {
      std::vector<std::uint32_t> modulus(digits.begin(), digits.end());
      modulus.push_back(1);
      return Field(make_data(q, std::move(modulus)));
    }
    std::size_t pos = k;
    while (pos-- > 0) {
      if (++digits[pos] < q) break;
      digits[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  throw std::logic_error("no irreducible polynomial found");  // cannot happen
}

Field Field::from_modulus(std::uint64_t q, std::vector<std::uint32_t> modulus) {
  if (!is_prime(q)) throw InputError("field characteristic " + std::to_string(q) + " is not prime");
  if (modulus.size() < 2) throw InputError("modulus must have degree at least 1");
  if (modulus.back() != 1) throw InputError("modulus must be monic");
  long double approx = 1;
  for (std::size_t i = 1; i < modulus.size(); ++i) approx *= static_cast<long double>(q);
  if (approx > static_cast<long double>(kMaxOrder)) throw InputError("field order too large");
  for (auto c : modulus)
    if (c >= q) throw InputError("modulus coefficient out of range");
  UPoly f(modulus.begin(), modulus.end());
  if (!is_irreducible(f, q)) throw InputError("modulus is not irreducible");
  return Field(make_data(q, std::move(modulus)));
}

std::uint64_t Field::q() const { return d_->q; }
unsigned Field::k() const { return d_->k; }
std::uint64_t Field::order() const { return d_->order; }
const std::vector<std::uint32_t>& Field::modulus() const { return d_->modulus; }

Elem Field::from_int(long long v) const {
  const auto q = static_cast<long long>(d_->q);
  long long r = v % q;
  if (r < 0) r += q;
  return {static_cast<std::uint32_t>(r)};
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > d_->k) throw InputError("too many coordinates for field element");
  UPoly p(coeffs.begin(), coeffs.end());
  for (auto c : p)
    if (c >= d_->q) throw InputError("coordinate out of range");
  return {d_->pack(p)};
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(d_->k, 0);
  std::uint64_t code = a.code;
  for (unsigned i = 0; i < d_->k; ++i) {
    out[i] = static_cast<std::uint32_t>(code % d_->q);
    code /= d_->q;
  }
  return out;
}

Elem Field::basis_root() const {
  if (d_->k == 1) return {static_cast<std::uint32_t>((d_->q - d_->modulus[0]) % d_->q)};
  return {static_cast<std::uint32_t>(d_->q)};
}

Elem Field::at(std::uint64_t code) const {
  if (code >= d_->order) throw InputError("element code out of range");
  return {static_cast<std::uint32_t>(code)};
}

Elem Field::add(Elem a, Elem b) const {
  const std::uint64_t q = d_->q;
  if (d_->k == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % q)};
  if (q == 2) return {a.code ^ b.code};
  std::uint64_t x = a.code, y = b.code, out = 0;
  for (unsigned i = 0; i < d_->k; ++i) {
    out += ((x % q + y % q) % q) * d_->place[i];
    x /= q;
    y /= q;
  }
  return {static_cast<std::uint32_t>(out)};
}

Elem Field::neg(Elem a) const {
  const std::uint64_t q = d_->q;
  if (q == 2) return a;
  if (d_->k == 1) return {static_cast<std::uint32_t>((q - a.code) % q)};
  std::uint64_t x = a.code, out = 0;
  for (unsigned i = 0; i < d_->k; ++i) {
    out += ((q - x % q) % q) * d_->place[i];
    x /= q;
  }
  return {static_cast<std::uint32_t>(out)};
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  if (a.code == 0 || b.code == 0) return {0};
  if (d_->k == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % d_->q)};
  if (!d_->log_table.empty())
    return {d_->exp_table[std::size_t{d_->log_table[a.code]} + d_->log_table[b.code]]};
  return {d_->slow_mul(a.code, b.code)};
}

Elem Field::inv(Elem a) const {
  if (a.code == 0) throw std::domain_error("inversion of zero in " + describe());
  const std::uint64_t group = d_->order - 1;
  if (!d_->log_table.empty()) {
    const std::uint32_t l = d_->log_table[a.code];
    return {d_->exp_table[l == 0 ? 0 : group - l]};
  }
  return pow(a, group - 1);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.code == 0) return zero();
  const std::uint64_t group = d_->order - 1;
  e %= group;
  if (!d_->log_table.empty())
    return {d_->exp_table[static_cast<std::uint64_t>(d_->log_table[a.code]) * e % group]};
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, unsigned times) const {
  for (unsigned i = 0; i < times % d_->k; ++i) a = pow(a, d_->q);
  return a;
}

bool Field::is_square(Elem a) const {
  if (a.code == 0 || d_->q == 2) return true;
  return pow(a, (d_->order - 1) / 2) == one();
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a.code == 0) return zero();
  const std::uint64_t n = d_->order;
  Elem r;
  if (d_->q == 2) {
    r = pow(a, n / 2);
  } else {
    if (!is_square(a)) return std::nullopt;
    // Tonelli-Shanks with the primitive element as the non-residue.
    std::uint64_t odd = n - 1;
    unsigned s = 0;
    while (odd % 2 == 0) {
      odd /= 2;
      ++s;
    }
    Elem z = pow(primitive(), odd);
    Elem t = pow(a, odd);
    r = pow(a, (odd + 1) / 2);
    unsigned m = s;
    while (!(t == one())) {
      unsigned i = 0;
      Elem t2 = t;
      while (!(t2 == one())) {
        t2 = mul(t2, t2);
        ++i;
      }
      Elem b = z;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      z = mul(b, b);
      t = mul(t, z);
      r = mul(r, b);
    }
    const Elem other = neg(r);
    if (coord_less(other, r)) r = other;
  }
  return r;
}

bool Field::coord_less(Elem a, Elem b) const { return coeffs(a) < coeffs(b); }

Elem Field::primitive() const { return {d_->primitive}; }

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << d_->q;
  if (d_->k > 1) os << "^" << d_->k;
  os << " mod [";
  for (std::size_t i = 0; i < d_->modulus.size(); ++i) os << (i ? "," : "") << d_->modulus[i];
  os << "]";
  return os.str();
}

std::string Field::to_string(Elem a) const {
  if (d_->k == 1) return std::to_string(a.code);
  std::ostringstream os;
  os << "(";
  const auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

bool Field::operator==(const Field& other) const {
  return d_ == other.d_ || (d_->q == other.d_->q && d_->modulus == other.d_->modulus);
}

Elem Embedding::apply(Elem a) const {
  // Horner in the image of t.
  const auto c = from.coeffs(a);
  Elem r = to.zero();
  for (std::size_t i = c.size(); i-- > 0;)
    r = to.add(to.mul(r, image_of_root), to.from_int(c[i]));
  return r;
}

Embedding canonical_embedding(const Field& from, const Field& to) {
  if (from.q() != to.q() || to.k() % from.k() != 0)
    throw InputError("no embedding from " + from.describe() + " into " + to.describe());
  if (from.k() == 1) return {from, to, to.from_int(from.basis_root().code)};

  auto eval_modulus = [&](Elem x) {
    Elem r = to.zero();
    const auto& m = from.modulus();
    for (std::size_t i = m.size(); i-- > 0;) r = to.add(to.mul(r, x), to.from_int(m[i]));
    return r;
  };
  // The copy of F inside `to` is generated multiplicatively by g^((N-1)/(n-1)).
  const std::uint64_t sub_group = from.order() - 1;
  const Elem h = to.pow(to.primitive(), (to.order() - 1) / sub_group);
  std::optional<Elem> best;
  Elem x = to.one();
  for (std::uint64_t i = 0; i < sub_group; ++i) {
    if (eval_modulus(x).code == 0 && (!best || to.coord_less(x, *best))) best = x;
    x = to.mul(x, h);
  }
  if (!best) throw std::logic_error("modulus has no root in extension");
  return {from, to, *best};
}

SqrtResult sqrt_or_extend(Elem a, const Field& f) {
  const Embedding identity{f, f, f.basis_root()};
  if (a.code == 0) return {f, f.zero(), false, true, identity};
  if (auto r = f.sqrt(a)) return {f, *r, false, false, identity};
  Field ext = Field::build(f.q(), 2 * f.k());
  Embedding emb = canonical_embedding(f, ext);
  const auto r = ext.sqrt(emb.apply(a));
  if (!r) throw std::logic_error("element of F_{q^k} is not a square in F_{q^2k}");
  return {ext, *r, true, false, emb};
}

Matrix2 identity2(const Field& f) { return {f.one(), f.zero(), f.zero(), f.one()}; }

Matrix2 mul(const Field& f, const Matrix2& x, const Matrix2& y) {
  return {f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
          f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

Elem det(const Field& f, const Matrix2& x) { return f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c)); }

Matrix2 inverse(const Field& f, const Matrix2& x) {
  const Elem di = f.inv(det(f, x));
  return {f.mul(x.d, di), f.neg(f.mul(x.b, di)), f.neg(f.mul(x.c, di)), f.mul(x.a, di)};
}

Matrix2 scale(const Field& f, const Matrix2& x, Elem s) {
  return {f.mul(x.a, s), f.mul(x.b, s), f.mul(x.c, s), f.mul(x.d, s)};
}

Matrix2 map_matrix(const Matrix2& x, const std::function<Elem(Elem)>& fn) {
  return {fn(x.a), fn(x.b), fn(x.c), fn(x.d)};
}

bool is_scalar(const Matrix2& x) { return x.b.code == 0 && x.c.code == 0 && x.a == x.d; }

bool commute(const Field& f, const Matrix2& x, const Matrix2& y) {
  return mul(f, x, y) == mul(f, y, x);
}

std::string to_string(const Field& f, const Matrix2& x) {
  return "[[" + f.to_string(x.a) + "," + f.to_string(x.b) + "],[" + f.to_string(x.c) + "," +
         f.to_string(x.d) + "]]";
}

std::uint64_t sl2_order(std::uint64_t n) { return n * n * n - n; }

Sl2Indexer::Sl2Indexer(Field f, std::uint64_t budget) : f_(std::move(f)), n_(f_.order()) {
  if (n_ > 2'000'000 || sl2_order(n_) > budget)
    throw BudgetExceeded("SL(2) over " + f_.describe() + " exceeds the enumeration budget of " +
                         std::to_string(budget) + " elements");
  size_ = sl2_order(n_);
}

// a != 0: (a-1)N^2 + bN + c, d = (1 + bc)/a.
// a == 0: (N-1)N^2 + (b-1)N + d, c = -1/b.
Matrix2 Sl2Indexer::at(std::uint64_t index) const {
  const std::uint64_t n2 = n_ * n_;
  const std::uint64_t split = (n_ - 1) * n2;
  if (index < split) {
    const Elem a = f_.at(index / n2 + 1);
    const Elem b = f_.at(index / n_ % n_);
    const Elem c = f_.at(index % n_);
    const Elem d = f_.div(f_.add(f_.one(), f_.mul(b, c)), a);
    return {a, b, c, d};
  }
  index -= split;
  const Elem b = f_.at(index / n_ + 1);
  const Elem d = f_.at(index % n_);
  return {f_.zero(), b, f_.neg(f_.inv(b)), d};
}

std::uint64_t Sl2Indexer::index(const Matrix2& m) const {
  if (m.a.code != 0) return (std::uint64_t{m.a.code} - 1) * n_ * n_ + m.b.code * n_ + m.c.code;
  return (n_ - 1) * n_ * n_ + (std::uint64_t{m.b.code} - 1) * n_ + m.d.code;
}

void sl2_enumerate(const Field& f, const std::function<void(const Matrix2&)>& visit,
                   std::uint64_t budget) {
  Sl2Indexer idx(f, budget);
  for (std::uint64_t i = 0; i < idx.size(); ++i) visit(idx.at(i));
}

}  // namespace iterid
