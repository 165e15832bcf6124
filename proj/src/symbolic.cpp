#include "iterid/symbolic.hpp"

#include <algorithm>

#include "iterid/gfield.hpp"

namespace iterid {

IntMatrix2 IntMatrix2::inverse() const {
  const BigInt dt = det();
  if (dt != 1 && dt != -1) throw InputError("matrix " + str() + " is not unimodular");
  return dt * adjugate();
}

BigInt IntMatrix2::max_abs() const {
  return std::max({BigInt(abs(a)), BigInt(abs(b)), BigInt(abs(c)), BigInt(abs(d))});
}

std::string IntMatrix2::str() const {
  return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
}

IntMatrix2 default_y() { return {1, 0, 2, 1}; }
IntMatrix2 sanov_x() { return {1, 2, 0, 1}; }

bool commute(const IntMatrix2& x, const IntMatrix2& y) { return x * y == y * x; }

unsigned RationalMatrix::max_degree() const {
  long long d = 0;
  for (const auto& h : H) d = std::max(d, h.degree());
  return static_cast<unsigned>(d);
}

BigInt RationalMatrix::max_abs_coeff() const {
  BigInt m = 0;
  for (const auto& h : H) m = std::max(m, iterid::max_abs_coeff(h));
  return m;
}

bool RationalMatrix::is_identity() const {
  const IntPoly one = IntPoly::constant(IntegerRing{}, kMatrixVars, 1);
  const IntPoly zero(IntegerRing{}, kMatrixVars);
  return s == 0 && H[0] == one && H[1] == zero && H[2] == zero && H[3] == one;
}

namespace {

using PolyMatrix = std::array<IntPoly, 4>;

PolyMatrix poly_mul(const PolyMatrix& x, const PolyMatrix& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

PolyMatrix constant_matrix(const IntMatrix2& m) {
  IntegerRing z;
  return {IntPoly::constant(z, kMatrixVars, m.a), IntPoly::constant(z, kMatrixVars, m.b),
          IntPoly::constant(z, kMatrixVars, m.c), IntPoly::constant(z, kMatrixVars, m.d)};
}

void check_two_letters(const Word& w) {
  if (w.alphabet_size() > 2) throw InputError("expected a word on the two letters x (a) and y (b)");
}

}  // namespace

RationalMatrix word_to_H(const Word& w, const IntMatrix2& y) {
  check_two_letters(w);
  const BigInt dy = y.det();
  if (dy != 1 && dy != -1) throw InputError("y = " + y.str() + " is not unimodular");

  IntegerRing z;
  const PolyMatrix generic{IntPoly::variable(z, kMatrixVars, 0), IntPoly::variable(z, kMatrixVars, 1),
                           IntPoly::variable(z, kMatrixVars, 2), IntPoly::variable(z, kMatrixVars, 3)};
  const PolyMatrix adjugate{generic[3], -generic[1], -generic[2], generic[0]};
  const PolyMatrix ym = constant_matrix(y);
  const PolyMatrix yinv = constant_matrix(y.inverse());

  RationalMatrix rm;
  rm.y = y;
  rm.word = free_reduce(w);
  PolyMatrix acc = constant_matrix(IntMatrix2{});
  for (const auto& l : rm.word.letters()) {
    if (l.gen == 0) {
      acc = poly_mul(acc, l.sign > 0 ? generic : adjugate);
      if (l.sign < 0) ++rm.s;
    } else {
      acc = poly_mul(acc, l.sign > 0 ? ym : yinv);
    }
  }
  rm.H = std::move(acc);
  return rm;
}

IntMatrix2 eval_int(const Word& w, const IntMatrix2& x, const IntMatrix2& y) {
  check_two_letters(w);
  bool need_xinv = false, need_yinv = false;
  for (const auto& l : w.letters()) {
    if (l.sign < 0) (l.gen == 0 ? need_xinv : need_yinv) = true;
  }
  const IntMatrix2 xinv = need_xinv ? x.inverse() : IntMatrix2{};
  const IntMatrix2 yinv = need_yinv ? y.inverse() : IntMatrix2{};
  IntMatrix2 acc;
  for (const auto& l : w.letters()) {
    if (l.gen == 0)
      acc = acc * (l.sign > 0 ? x : xinv);
    else
      acc = acc * (l.sign > 0 ? y : yinv);
  }
  return acc;
}

IntMatrix2 eval_rational(const RationalMatrix& rm, const IntMatrix2& x) {
  const BigInt dx = x.det();
  if (dx != 1 && dx != -1) throw InputError("x = " + x.str() + " is not unimodular");
  const std::vector<BigInt> point{x.a, x.b, x.c, x.d};
  auto eval = [&](const IntPoly& p) {
    return p.evaluate<BigInt>(
        point, BigInt(0), BigInt(1), [](const BigInt& c) { return c; },
        [](const BigInt& u, const BigInt& v) { return u + v; }, [](const BigInt& u, const BigInt& v) { return u * v; });
  };
  // det^-s = det^s for det = ±1.
  const BigInt scale = (dx == -1 && rm.s % 2 == 1) ? -1 : 1;
  return {scale * eval(rm.H[0]), scale * eval(rm.H[1]), scale * eval(rm.H[2]), scale * eval(rm.H[3])};
}

bool y_degenerate_mod(const IntMatrix2& y, std::uint64_t q) {
  PrimeFieldRing r{q};
  return r.from_big(y.b) == 0 && r.from_big(y.c) == 0 && r.from_big(y.a) == r.from_big(y.d);
}

ModMatrix reduce_mod(const RationalMatrix& rm, std::uint64_t q) {
  if (!is_prime(q)) throw InputError("reduction modulus " + std::to_string(q) + " is not prime");
  ModMatrix mm;
  for (std::size_t i = 0; i < 4; ++i) mm.H[i] = iterid::reduce_mod(rm.H[i], q);
  mm.s = rm.s;
  mm.q = q;
  mm.y_degenerate = y_degenerate_mod(rm.y, q);
  return mm;
}

nlohmann::json to_json(const RationalMatrix& rm) {
  nlohmann::json j;
  j["entries"] = {to_string(rm.H[0]), to_string(rm.H[1]), to_string(rm.H[2]), to_string(rm.H[3])};
  j["s"] = rm.s;
  j["y"] = {rm.y.a.str(), rm.y.b.str(), rm.y.c.str(), rm.y.d.str()};
  // Small integers are emitted as JSON numbers.
  for (auto& v : j["y"]) v = std::stoll(v.get<std::string>());
  j["word"] = rm.word.str();
  return j;
}

nlohmann::json to_json(const ModMatrix& mm) {
  nlohmann::json j;
  j["entries"] = {to_string(mm.H[0]), to_string(mm.H[1]), to_string(mm.H[2]), to_string(mm.H[3])};
  j["s"] = mm.s;
  j["q"] = mm.q;
  j["y_degenerate"] = mm.y_degenerate;
  return j;
}

}  // namespace iterid
