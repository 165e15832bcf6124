#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace iterid;
using iterid::testing::random_poly;
using iterid::testing::uniform;

namespace {

Monomial mono(std::vector<std::uint32_t> e) { return Monomial(std::move(e)); }

ModPoly mp(const char* text, std::size_t n, std::uint64_t q) { return parse_mod_poly(text, n, q); }

TwistedBasis random_basis(std::uint64_t q, std::size_t n, std::uint64_t Q, unsigned max_deg) {
  std::vector<ModPoly> fs;
  for (std::size_t i = 0; i < n; ++i) fs.push_back(random_poly(q, n, max_deg, 4));
  return TwistedBasis(std::move(fs), Q);
}

}  // namespace

TEST_CASE("grlex order") {
  CHECK(grlex_cmp(mono({2, 0}), mono({1, 1})) > 0);
  CHECK(grlex_cmp(mono({3, 0}), mono({1, 1})) > 0);
  std::vector<Monomial> ms{mono({0, 2}), mono({1, 0}), mono({2, 0}), mono({0, 0}), mono({1, 1}), mono({0, 1})};
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) { return grlex_cmp(a, b) < 0; });
  const std::vector<Monomial> expect{mono({0, 0}), mono({0, 1}), mono({1, 0}), mono({0, 2}), mono({1, 1}), mono({2, 0})};
  CHECK(ms == expect);
  CHECK_THROWS_AS((void)grlex_cmp(mono({1}), mono({1, 0})), InputError);

  for (int i = 0; i < 300; ++i) {
    auto r = [] { return mono({static_cast<std::uint32_t>(uniform(0, 3)), static_cast<std::uint32_t>(uniform(0, 3)),
                               static_cast<std::uint32_t>(uniform(0, 3))}); };
    const Monomial a = r(), b = r(), g = r();
    if (grlex_cmp(a, b) > 0) CHECK(grlex_cmp(a * g, b * g) > 0);
  }
}

TEST_CASE("text format round trip") {
  const IntPoly p = parse_int_poly("3*x1^2*x2 - x2 + 7", 2);
  CHECK(to_string(p) == "3*x1^2*x2 - x2 + 7");
  CHECK(to_string(parse_int_poly("0", 3)) == "0");
  CHECK(to_string(parse_mod_poly("4*x1 + 3*x1", 1, 5)) == "2*x1");
  CHECK(parse_mod_poly("-x1", 1, 5) == parse_mod_poly("4*x1", 1, 5));
  CHECK_THROWS_AS(parse_int_poly("x3", 2), InputError);
  CHECK_THROWS_AS(parse_int_poly("2*", 2), InputError);
  for (int i = 0; i < 50; ++i) {
    const ModPoly r = random_poly(7, 3, 4, 5);
    CHECK(parse_mod_poly(to_string(r), 3, 7) == r);
  }
}

TEST_CASE("division") {
  const DivisionResult r = divide(mp("x1^2", 1, 7), {mp("x1 - 1", 1, 7)});
  CHECK(r.quotients[0] == mp("x1 + 1", 1, 7));
  CHECK(r.remainder == mp("1", 1, 7));
  CHECK_THROWS_AS(divide(mp("x1", 1, 7), {ModPoly(PrimeFieldRing{7}, 1)}), InputError);

  const TwistedBasis tb = random_basis(3, 2, 9, 3);
  for (const auto& g : tb.generators()) CHECK(divide(g, tb.generators()).remainder.is_zero());

  for (int i = 0; i < 200; ++i) {
    const ModPoly f = random_poly(3, 2, 6, 6);
    std::vector<ModPoly> ds;
    for (int j = 0; j < static_cast<int>(uniform(1, 3)); ++j) {
      ModPoly d = random_poly(3, 2, 3, 3);
      if (!d.is_zero()) ds.push_back(d);
    }
    if (ds.empty()) continue;
    const DivisionResult dr = divide(f, ds);
    ModPoly recon = dr.remainder;
    for (std::size_t j = 0; j < ds.size(); ++j) recon += dr.quotients[j] * ds[j];
    CHECK(recon == f);
    for (const auto& [m, c] : dr.remainder.terms())
      for (const auto& d : ds) CHECK_FALSE(d.leading_monomial().divides(m));
  }
}

TEST_CASE("twisted bases are Groebner") {
  const TwistedBasis fixed({mp("x1^2 + x2", 2, 2), mp("x1*x2 + x1", 2, 2)}, 4);
  CHECK(check_groebner_xq(fixed));
  const GroebnerCheck g = groebner_check_detail(fixed);
  CHECK(g.leading_terms_coprime);
  CHECK(g.s_pairs == 1);

  const TwistedBasis bad({mp("x1^4 + x2", 2, 2), mp("x2^2", 2, 2)}, 4);
  CHECK_FALSE(check_groebner_xq(bad));
  CHECK_FALSE(groebner_check_detail(bad).degree_ok);

  CHECK_THROWS_AS(TwistedBasis({mp("x1", 1, 3)}, 4), InputError);   // 4 is not a power of 3
  CHECK_THROWS_AS(TwistedBasis({mp("x1", 2, 3)}, 3), InputError);   // n polys in n vars

  const std::vector<std::pair<std::uint64_t, std::uint64_t>> qQ{{2, 4}, {2, 8}, {3, 9}};
  for (int i = 0; i < 100; ++i) {
    const auto [q, Q] = qQ[static_cast<std::size_t>(i) % 3];
    const std::size_t n = static_cast<std::size_t>(uniform(1, 3));
    const TwistedBasis tb = random_basis(q, n, Q, static_cast<unsigned>(Q - 1));
    CHECK(check_groebner_xq(tb));
    CHECK(groebner_check_detail(tb).leading_terms_coprime);
  }
}

TEST_CASE("normal forms") {
  const TwistedBasis tb({mp("x1^2 + x2", 2, 2), mp("x1*x2 + x1", 2, 2)}, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(normal_form(tb.generators()[i], tb).is_zero());
    const ModPoly xq = ModPoly::term(PrimeFieldRing{2}, Monomial::var(2, i, 4), 1);
    CHECK(normal_form(xq, tb) == tb.polys()[i]);
  }
  const TwistedBasis bad({mp("x1^5", 1, 2)}, 4);
  CHECK_THROWS_AS(normal_form(mp("x1", 1, 2), bad), InputError);

  for (int i = 0; i < 200; ++i) {
    const ModPoly f = random_poly(2, 2, 3, 4);
    if (f.is_zero()) continue;
    CHECK_FALSE(ideal_member(f, tb));
  }

  for (int i = 0; i < 60; ++i) {
    const TwistedBasis b = random_basis(3, 2, 9, 4);
    const ModPoly f = random_poly(3, 2, 12, 5), g = random_poly(3, 2, 12, 5);
    CHECK(normal_form(f + g, b) == normal_form(f, b) + normal_form(g, b));
    CHECK(normal_form(f.scaled(2), b) == normal_form(f, b).scaled(2));
    ModPoly h(PrimeFieldRing{3}, 2);
    for (const auto& gen : b.generators()) h += random_poly(3, 2, 3, 2) * gen;
    CHECK(ideal_member(h, b));
    CHECK(normal_form(f + h, b) == normal_form(f, b));
  }
}

TEST_CASE("standard monomials") {
  CHECK(standard_monomial_count(2, 3) == 9);
  const auto one_var = standard_monomials(1, 4);
  REQUIRE(one_var.size() == 4);
  CHECK(one_var.back() == Monomial::one(1));
  CHECK(one_var.front() == Monomial::var(1, 0, 3));
  for (auto [n, Q] : std::vector<std::pair<std::size_t, std::uint64_t>>{{1, 4}, {2, 3}, {2, 4}, {3, 2}}) {
    std::uint64_t expect = 1;
    for (std::size_t i = 0; i < n; ++i) expect *= Q;
    CHECK(standard_monomials(n, Q).size() == expect);
    CHECK(standard_monomial_count(n, Q) == expect);
  }
  const TwistedBasis tb = random_basis(2, 3, 2, 1);
  for (int i = 0; i < 20; ++i) {
    const ModPoly nf = normal_form(random_poly(2, 3, 5, 6), tb);
    for (const auto& [m, c] : nf.terms())
      for (std::size_t v = 0; v < 3; ++v) CHECK(m[v] < 2);
  }
}

TEST_CASE("dependence bounds") {
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(9, 1) == 9);
  CHECK(binomial(6, 2) >= binomial(4 * 2 + 1, 1));
  const DependenceBounds b12 = dependence_bounds(1, 2);
  CHECK(b12.weak_s == 1);
  CHECK(b12.strict_s == 2);
  CHECK(b12.crude_s == 4);
  const DependenceBounds b22 = dependence_bounds(2, 2);
  CHECK(b22.strict_s == 8);
  CHECK(b22.crude_s == 12);
  CHECK(binomial(b22.strict_s + 3, 3) > binomial(2 * b22.strict_s + 2, 2));
}

TEST_CASE("algebraic dependence") {
  const ModPoly x = mp("x1", 1, 7), x2 = mp("x1^2", 1, 7);
  const AlgebraicDependence dep = algebraic_dependence({x, x2}, 2);
  CHECK(dep.psi.degree() == 2);
  CHECK(dep.psi.compose({x, x2}).is_zero());
  // y1^2 - y2 up to a scalar.
  const ModPoly expect = mp("x1^2 - x2", 2, 7);
  CHECK(dep.psi.scaled(PrimeFieldRing{7}.inv(dep.psi.coeff(Monomial::var(2, 0, 2)))) == expect);

  CHECK_THROWS_AS(algebraic_dependence({ModPoly(PrimeFieldRing{3}, 1), ModPoly(PrimeFieldRing{3}, 1)}, 1), InputError);

  for (int i = 0; i < 20; ++i) {
    const std::uint64_t q = i % 2 ? 3 : 5;
    std::vector<ModPoly> fs;
    for (int j = 0; j < 3; ++j) fs.push_back(random_poly(q, 2, 2, 4));
    const AlgebraicDependence a = algebraic_dependence(fs, 2);
    CHECK_FALSE(a.psi.is_zero());
    CHECK(a.psi.degree() <= 12);
    CHECK(a.psi.compose(fs).is_zero());
  }
}
