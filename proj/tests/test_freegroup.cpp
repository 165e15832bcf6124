#include <doctest.h>

#include "support.hpp"

using namespace iterid;
using iterid::testing::random_word;
using iterid::testing::uniform;

namespace {
Word w2(const char* s) { return parse_word(s, 2); }
}

TEST_CASE("parse_word transcribes letters") {
  const Word w = parse_word("aA", 1);
  REQUIRE(w.length() == 2);
  CHECK(w.letters()[0] == Letter{0, 1});
  CHECK(w.letters()[1] == Letter{0, -1});
  CHECK(w2("ABab").length() == 4);
  CHECK(w2("a b").str() == "ab");
  CHECK_THROWS_AS(parse_word("abc", 2), InputError);
  CHECK_THROWS_AS(parse_word("a", 0), InputError);
  CHECK_THROWS_AS(parse_word("a1", 2), InputError);
  CHECK(parse_word_auto("aC").alphabet_size() == 3);
}

TEST_CASE("free_reduce") {
  CHECK(free_reduce(w2("aAb")).str() == "b");
  CHECK(free_reduce(w2("ABab")).str() == "ABab");
  CHECK(free_reduce(w2("abBA")).empty());
  for (int i = 0; i < 500; ++i) {
    const Word w = random_word(3, 14);
    const Word r = free_reduce(w);
    CHECK(r.is_reduced());
    CHECK(r.length() <= w.length());
    CHECK(free_reduce(r) == r);
    CHECK(free_reduce(w * w.inverse()).empty());
    for (std::uint32_t g = 0; g < 3; ++g) CHECK(exponent_sum(w, g) == exponent_sum(r, g));
  }
}

TEST_CASE("exponent sums") {
  CHECK(exponent_sum(w2("ABab"), 0) == 0);
  CHECK(exponent_sum(w2("ABab"), 1) == 0);
  CHECK(exponent_sum(w2("aab"), 0) == 2);
  CHECK(in_commutator_subgroup(w2("ABab")));
  CHECK_FALSE(in_commutator_subgroup(w2("aab")));
  for (int i = 0; i < 200; ++i) {
    const Word u = random_word(2, 8), v = random_word(2, 8);
    for (std::uint32_t g = 0; g < 2; ++g) CHECK(exponent_sum(u * v, g) == exponent_sum(u, g) + exponent_sum(v, g));
  }
}

TEST_CASE("substitute") {
  CHECK(substitute(w2("ab"), {parse_word("a", 2), parse_word("a", 2)}).str() == "aa");
  CHECK(substitute(parse_word("A", 1), {parse_word("ab", 2)}).str() == "BA");
  // [[x,y],y] = (x^-1 y^-1 x y)^-1 y^-1 (x^-1 y^-1 x y) y reduces to 10 letters.
  const Word s = substitute(w2("ABab"), {w2("ABab"), w2("b")});
  CHECK(s.str() == "BAbaBABabb");
  CHECK(s.length() == 10);
  CHECK_THROWS_AS(substitute(w2("ab"), {w2("a")}), InputError);
}

TEST_CASE("iterate_first") {
  CHECK(iterate_first(w2("ab"), 2).str() == "abb");
  for (int n = 1; n <= 5; ++n) CHECK(iterate_first(w2("a"), n).str() == "a");
  CHECK(iterate_first(w2("ABab"), 2).length() == 10);
  CHECK(iterate_first(w2("ABab"), 2) == substitute(w2("ABab"), {w2("ABab"), w2("b")}));

  // w∘(a+b) is w∘b with w∘a substituted for its first letter.
  for (int i = 0; i < 40; ++i) {
    const Word w = random_word(2, 6, true);
    if (w.empty()) continue;
    const int a = static_cast<int>(uniform(1, 3)), b = static_cast<int>(uniform(1, 3));
    const Word lhs = iterate_first(w, a + b);
    const Word rhs = substitute(iterate_first(w, b), {iterate_first(w, a), Word::generator(2, 1)});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("iterate_system") {
  const WordSystem cc{w2("ABab"), w2("ABab")};
  const SystemIterate it = iterate_system(cc, 2);
  CHECK(it.all_trivial());

  const WordSystem id{parse_word("a", 3), parse_word("b", 3), parse_word("c", 3)};
  for (int n = 1; n <= 3; ++n) {
    const SystemIterate r = iterate_system(id, n);
    CHECK(r.words == id);
    CHECK(r.none_trivial());
  }

  const WordSystem ex3 = commutator_chain_system(3);
  CHECK(ex3[0] == commutator(parse_word("a", 3), parse_word("c", 3)));
  CHECK(ex3[1] == commutator(parse_word("a", 3), parse_word("c", 3)));
  CHECK(ex3[2] == commutator(parse_word("b", 3), parse_word("c", 3)));

  for (std::size_t n : {2u, 3u, 4u}) {
    const WordSystem ws = commutator_chain_system(n);
    CAPTURE(n);
    for (int m = 1; m < static_cast<int>(n); ++m) CHECK(iterate_system(ws, m).none_trivial());
    CHECK(iterate_system(ws, static_cast<int>(n)).all_trivial());
    CHECK(iterate_system(ws, static_cast<int>(n) + 1).all_trivial());
  }
}

TEST_CASE("systems nontrivial up to the alphabet size stay nontrivial") {
  const std::vector<WordSystem> corpus{
      {parse_word("ab", 2), parse_word("b", 2)},
      {parse_word("aab", 2), parse_word("bA", 2)},
      {parse_word("abc", 3), parse_word("bc", 3), parse_word("cA", 3)},
  };
  for (const auto& ws : corpus) {
    const int n = static_cast<int>(ws.size());
    bool upto_n = true;
    for (int m = 1; m <= n; ++m) upto_n = upto_n && iterate_system(ws, m).none_trivial();
    REQUIRE(upto_n);
    for (int m = n + 1; m <= 2 * n; ++m) CHECK(iterate_system(ws, m).none_trivial());
  }
}

TEST_CASE("two_letter_reduction") {
  CHECK(two_letter_reduction(parse_word("ab", 3)).str() == "abbaBB");
  CHECK(two_letter_reduction(parse_word("abA", 2)).str() == "abA");
  CHECK(two_letter_reduction(parse_word("aAb", 2)).str() == "b");
  CHECK_THROWS_AS(two_letter_reduction(parse_word("cC", 3)), InputError);
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = static_cast<std::size_t>(uniform(3, 5));
    const Word w = iterid::testing::random_nontrivial(m, 10);
    const Word r = two_letter_reduction(w);
    CHECK(r.alphabet_size() == 2);
    CHECK_FALSE(r.empty());
    CHECK(r.is_reduced());
    std::size_t lx = 0;
    for (const auto& l : r.letters()) lx += l.gen == 0;
    CHECK(lx <= w.length());
  }
}

TEST_CASE("subgroup_rank") {
  CHECK(subgroup_rank({w2("a"), w2("b")}) == 2);
  CHECK(subgroup_rank({w2("aa"), w2("aaa")}) == 1);
  CHECK(subgroup_rank({w2("ABab"), w2("b")}) == 2);
  CHECK(subgroup_rank({parse_word("a", 4), parse_word("b", 4), parse_word("c", 4), parse_word("d", 4)}) == 4);
  CHECK(subgroup_rank({w2("ab"), w2("ab")}) == 1);
  // Nielsen moves preserve rank.
  for (int i = 0; i < 30; ++i) {
    std::vector<Word> gens{random_word(2, 5, true), random_word(2, 5, true)};
    if (gens[0].empty() || gens[1].empty()) continue;
    const std::size_t r = subgroup_rank(gens);
    CHECK(subgroup_rank({free_reduce(gens[0] * gens[1]), gens[1]}) == r);
    CHECK(subgroup_rank({gens[0].inverse(), gens[1]}) == r);
  }
}
