#pragma once

/**
 * @file freegroup.hpp
 * @brief Words in a free group: parsing, free reduction, substitution
 * homomorphisms, the two iteration schemes and subgroup rank by folding.
 *
 * Text syntax: lowercase letters are generators in alphabet order
 * (a = x_1, b = x_2, ...), uppercase letters are their inverses. For
 * two-letter words `a` is x and `b` is y.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace iterid {

struct Letter {
  std::uint32_t gen = 0;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {gen, -sign}; }
  bool cancels(const Letter& o) const { return gen == o.gen && sign == -o.sign; }
  bool operator==(const Letter&) const = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::size_t alphabet_size, std::vector<Letter> letters = {});

  static Word generator(std::size_t alphabet_size, std::uint32_t gen, int sign = 1);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  /// Formal inverse, not reduced.
  Word inverse() const;
  /// Concatenation, not reduced.
  Word operator*(const Word& rhs) const;

  bool is_reduced() const;
  std::string str() const;

  bool operator==(const Word&) const = default;

 private:
  std::size_t alphabet_size_ = 0;
  std::vector<Letter> letters_;
};

using WordSystem = std::vector<Word>;

Word parse_word(std::string_view text, std::size_t alphabet_size);
/// Parses with the smallest alphabet covering the letters used (at least `min_alphabet`).
Word parse_word_auto(std::string_view text, std::size_t min_alphabet = 2);

Word free_reduce(const Word& w);
long long exponent_sum(const Word& w, std::uint32_t gen);
/// True iff every exponent sum vanishes.
bool in_commutator_subgroup(const Word& w);

/// Reduced image of `w` under the endomorphism generator i -> images[i].
Word substitute(const Word& w, const std::vector<Word>& images);

/// [u, v] = u^-1 v^-1 u v, reduced.
Word commutator(const Word& u, const Word& v);

/// w∘n: the previous iterate is substituted for the first letter only.
Word iterate_first(const Word& w, int n);

struct SystemIterate {
  WordSystem words;
  std::vector<bool> trivial;  // coordinate freely equal to the empty word

  bool all_trivial() const;
  bool none_trivial() const;
};

/// n-th iterate of the substitution map x_i -> ws[i].
SystemIterate iterate_system(const WordSystem& ws, int n);

/// The system x_1 -> [x_1,x_n], x_2 -> [x_1,x_n], x_i -> [x_{i-1},x_n] (i >= 3).
/// Its iterates are nontrivial up to n-1 and trivial from n on.
WordSystem commutator_chain_system(std::size_t n);

/// Maps a word on m letters to a two-letter word via x_1 -> x,
/// x_j -> y^j x y^-j. Words on at most two letters are only reduced.
Word two_letter_reduction(const Word& w);

/// Rank of the subgroup generated by `words`, computed by Stallings folding.
std::size_t subgroup_rank(const std::vector<Word>& words);

}  // namespace iterid
