#include <doctest.h>

#include <map>

#include "support.hpp"

using namespace iterid;
using iterid::testing::random_elem;
using iterid::testing::random_poly;
using iterid::testing::uniform;

namespace {

Word w2(const char* s) { return parse_word(s, 2); }

// Independent oracle: SL(2, F_p) as int quadruples, w(x, y0) letter by letter,
// periodic points found by iterating |G| times from every element.
struct M {
  int a, b, c, d;
  auto operator<=>(const M&) const = default;
};

std::map<M, std::uint64_t> brute_force_cycles(const char* word, int p) {
  auto md = [p](long v) { return static_cast<int>(((v % p) + p) % p); };
  auto mul = [&](M x, M y) {
    return M{md(long(x.a) * y.a + long(x.b) * y.c), md(long(x.a) * y.b + long(x.b) * y.d),
             md(long(x.c) * y.a + long(x.d) * y.c), md(long(x.c) * y.b + long(x.d) * y.d)};
  };
  auto inv = [&](M x) { return M{x.d, md(-x.b), md(-x.c), x.a}; };
  const M y{1, 0, md(2), 1}, yi = inv(y), e{1, 0, 0, 1};
  auto phi = [&](M x) {
    M acc = e;
    for (const char* ch = word; *ch; ++ch) {
      switch (*ch) {
        case 'a': acc = mul(acc, x); break;
        case 'A': acc = mul(acc, inv(x)); break;
        case 'b': acc = mul(acc, y); break;
        case 'B': acc = mul(acc, yi); break;
      }
    }
    return acc;
  };
  std::vector<M> group;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d)
          if (md(long(a) * d - long(b) * c) == 1) group.push_back({a, b, c, d});
  std::map<M, std::uint64_t> out;
  for (const M& x : group) {
    if (x == e) continue;
    // x is periodic iff its orbit returns to it within |G| steps.
    M z = phi(x);
    std::uint64_t m = 1;
    while (z != x && m <= group.size()) {
      z = phi(z);
      ++m;
    }
    if (z == x) out[x] = m;
  }
  return out;
}

std::map<M, std::uint64_t> as_map(const CycleInventory& inv) {
  std::map<M, std::uint64_t> out;
  for (const auto& p : inv.points)
    out[{static_cast<int>(p.x.a.code), static_cast<int>(p.x.b.code), static_cast<int>(p.x.c.code),
         static_cast<int>(p.x.d.code)}] = p.period;
  return out;
}

}  // namespace

TEST_CASE("compose_map") {
  const PolyMap sq{parse_mod_poly("x1^2", 1, 5)};
  CHECK(compose_map(sq, 2)[0] == parse_mod_poly("x1^4", 1, 5));
  const PolyMap id = identity_map(3, 5);
  CHECK(compose_map(id, 4) == id);
  CHECK_THROWS_AS(compose_map(sq, 0), InputError);
  const PolyMap g{parse_mod_poly("x1^2 + x2", 2, 3), parse_mod_poly("x1*x2 + x1 + 1", 2, 3)};
  CHECK_THROWS_AS(compose_map(g, 6, 50), BudgetExceeded);

  const Field F = Field::build(3, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const PolyMap f{random_poly(3, 2, 2, 4), random_poly(3, 2, 2, 4)};
    const PolyMap f3 = compose_map(f, 3);
    for (int i = 0; i < 50; ++i) {
      std::vector<Elem> pt{random_elem(F), random_elem(F)};
      const auto direct = apply_map(f3, F, pt);
      for (int k = 0; k < 3; ++k) pt = apply_map(f, F, pt);
      CHECK(direct == pt);
    }
  }
}

TEST_CASE("iteration congruence") {
  const TwistedBasis sq({parse_mod_poly("x1^2", 1, 2)}, 4);
  CHECK(verify_iteration_congruence(sq, 1));
  CHECK(verify_iteration_congruence(sq, 2));
  const ModPoly diff = parse_mod_poly("x1^4 + x1^16", 1, 2);
  CHECK(normal_form(diff, sq).is_zero());

  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(uniform(1, 2));
    const std::uint64_t Q = uniform(0, 1) ? 4 : 8;
    std::vector<ModPoly> fs;
    for (std::size_t j = 0; j < n; ++j) fs.push_back(random_poly(2, n, 2, 3));
    CHECK(verify_iteration_congruence(TwistedBasis(fs, Q), 2));
  }
  CHECK_THROWS_AS(verify_iteration_congruence(TwistedBasis({parse_mod_poly("x1^5", 1, 2)}, 4), 1), InputError);
}

TEST_CASE("twisted solutions") {
  const TwistedBasis sq({parse_mod_poly("x1^2", 1, 2)}, 4);
  const ModPoly one = ModPoly::constant(PrimeFieldRing{2}, 1, 1);
  const auto all = twisted_solutions(sq, 1, one);
  REQUIRE(all.size() == 2);
  CHECK(all[0].point[0].code == 0);
  CHECK(all[1].point[0].code == 1);
  const auto kept = twisted_solutions(sq, 1, parse_mod_poly("x1", 1, 2));
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].point[0].code == 1);

  // Random systems without constant terms: 0 is a solution, each point re-verifies.
  for (int trial = 0; trial < 5; ++trial) {
    const TwistedBasis tb({random_poly(3, 2, 3, 3, true), random_poly(3, 2, 3, 3, true)}, 9);
    const auto sols = twisted_solutions(tb, 2, ModPoly::constant(PrimeFieldRing{3}, 2, 1));
    bool has_zero = false;
    for (const auto& s : sols) {
      CHECK(satisfies(tb, s));
      has_zero = has_zero || (s.point[0].code == 0 && s.point[1].code == 0);
      // f iterated block*l times returns the point.
      for (std::uint64_t block : {1, 2}) {
        const std::uint64_t m = frobenius_period(s, block);
        std::vector<Elem> pt = s.point;
        for (std::uint64_t j = 0; j < m; ++j) pt = apply_map(tb.polys(), s.field, pt);
        CHECK(pt == s.point);
      }
    }
    CHECK(has_zero);
    const auto nz = twisted_solutions(tb, 2, parse_mod_poly("x1 + x2^2", 2, 3));
    for (const auto& s : nz) CHECK_FALSE((s.point[0].code == 0 && s.point[1].code == 0));
  }
  CHECK_THROWS_AS(twisted_solutions(sq, 30, one), BudgetExceeded);
}

TEST_CASE("frobenius_period") {
  const Field F5 = Field::build(5, 1), F25 = Field::build(5, 2);
  CHECK(frobenius_period({F5, {F5.from_int(3)}, 5}, 1) == 1);
  CHECK(frobenius_period({F25, {F25.basis_root()}, 5}, 1) == 2);
  CHECK(frobenius_period({F25, {F25.basis_root()}, 5}, 4) == 8);
  CHECK(frobenius_period({F25, {F25.basis_root()}, 25}, 4) == 4);
}

TEST_CASE("verbal map and orbits") {
  const Field F = Field::build(5, 1);
  const VerbalMap id(w2("a"), default_y(), F);
  const CycleInventory all = cycle_search_sl2(w2("a"), default_y(), F);
  CHECK(all.points.size() == sl2_order(5) - 1);
  for (const auto& p : all.points) CHECK(p.period == 1);

  const Sl2Indexer idx(F);
  const VerbalMap phi(w2("ABab"), default_y(), F);
  std::uint64_t tails = 0;
  for (std::uint64_t i = 0; i < idx.size(); i += 7) {
    const OrbitRecord o = orbit(phi, idx.at(i));
    CHECK(o.tail_length + o.period <= idx.size());
    CHECK(o.cycle.size() == o.period);
    for (const auto& c : o.cycle) CHECK(phi.iterate(c, o.period) == c);
    Matrix2 t = o.start;
    for (std::uint64_t j = 0; j < o.tail_length; ++j, t = phi(t))
      CHECK(std::find(o.cycle.begin(), o.cycle.end(), t) == o.cycle.end());
    tails += o.tail_length;
  }
  CHECK(tails > 0);
}

TEST_CASE("cycle search agrees with the brute-force oracle") {
  // Frozen from the oracle: over F_3, [x,y] with y0 has one non-identity
  // cycle, of length 3.
  const auto o3 = brute_force_cycles("ABab", 3);
  CHECK(o3.size() == 3);
  for (const auto& [x, p] : o3) CHECK(p == 3);
  CHECK(o3.count(M{1, 2, 2, 2}) == 1);

  for (const char* word : {"ABab", "AbaB", "AABBaabb", "aaBAAb", "ABBabb"})
    for (int p : {3, 5, 7}) {
      CAPTURE(word);
      CAPTURE(p);
      const CycleInventory inv = cycle_search_sl2(w2(word), default_y(), Field::build(static_cast<std::uint64_t>(p), 1));
      CHECK(as_map(inv) == brute_force_cycles(word, p));
      CHECK(inv.group_order == sl2_order(static_cast<std::uint64_t>(p)));
      CHECK(inv.cycle_elements <= inv.group_order);
    }
  CHECK(brute_force_cycles("AABBaabb", 3).empty());
}

TEST_CASE("cycle search invariants") {
  for (auto [q, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {3, 2}, {7, 1}}) {
    const Field F = Field::build(q, k);
    for (const char* word : {"ABab", "AABBaabb", "AbaB", "AAbbaaBB"}) {
      const VerbalMap phi(w2(word), default_y(), F);
      const Matrix2 e = identity2(F);
      CHECK(phi(e) == e);
      const CycleInventory inv = cycle_search_sl2(w2(word), default_y(), F);
      for (const auto& p : inv.points) {
        Matrix2 cur = p.x;
        for (std::uint64_t m = 1; m <= p.period; ++m) {
          cur = phi(cur);
          CHECK_FALSE(cur == e);
          if (m < p.period) CHECK_FALSE(cur == p.x);
        }
        CHECK(cur == p.x);
      }
    }
  }
}

TEST_CASE("cycle search errors") {
  CHECK_THROWS_AS(cycle_search_sl2(w2("ABab"), default_y(), Field::build(2, 1)), DegenerateGenerator);
  CHECK_THROWS_AS(cycle_search_sl2(w2("ABab"), default_y(), Field::build(101, 1), 1000), BudgetExceeded);
  CHECK_THROWS_AS(VerbalMap(parse_word("c", 3), default_y(), Field::build(3, 1)), InputError);
}

TEST_CASE("tuple cycles") {
  const Field F = Field::build(3, 1);
  const WordSystem id{parse_word("a", 2), parse_word("b", 2)};
  const auto fixed = cycle_search_tuples(id, F);
  CHECK(fixed.size() == 23 * 23);
  for (const auto& t : fixed) CHECK(t.period == 1);

  CHECK(cycle_search_tuples({parse_word("ABab", 2), parse_word("ABab", 2)}, F).empty());

  // ([x1,x2], x2): exhaustive over 24^2 states, checked against direct iteration.
  const WordSystem engel{parse_word("ABab", 2), parse_word("b", 2)};
  const auto cyc = cycle_search_tuples(engel, F);
  CHECK_FALSE(cyc.empty());
  const Matrix2 e = identity2(F);
  for (const auto& tc : cyc) {
    std::vector<Matrix2> cur = tc.tuple;
    for (std::uint64_t m = 0; m < tc.period; ++m) {
      std::vector<Matrix2> next;
      for (const auto& w : engel) next.push_back(eval_word(w, F, cur));
      cur = next;
      for (const auto& c : cur) CHECK_FALSE(c == e);
    }
    CHECK(cur == tc.tuple);
  }
  CHECK_THROWS_AS(cycle_search_tuples(engel, Field::build(7, 1), 1000), BudgetExceeded);
}
