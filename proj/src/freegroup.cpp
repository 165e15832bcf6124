#include "iterid/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "iterid/errors.hpp"

namespace iterid {

Word::Word(std::size_t alphabet_size, std::vector<Letter> letters)
    : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
  if (alphabet_size_ == 0) throw InputError("empty alphabet");
  for (const auto& l : letters_) {
    if (l.gen >= alphabet_size_) throw InputError("generator outside alphabet");
    if (l.sign != 1 && l.sign != -1) throw InputError("letter sign must be +1 or -1");
  }
}

Word Word::generator(std::size_t alphabet_size, std::uint32_t gen, int sign) {
  return Word(alphabet_size, {Letter{gen, sign}});
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  Word w;
  w.alphabet_size_ = alphabet_size_;
  w.letters_ = std::move(out);
  return w;
}

Word Word::operator*(const Word& rhs) const {
  Word w;
  w.alphabet_size_ = std::max(alphabet_size_, rhs.alphabet_size_);
  w.letters_ = letters_;
  w.letters_.insert(w.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return w;
}

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i].cancels(letters_[i - 1])) return false;
  return true;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (const auto& l : letters_) {
    char c = static_cast<char>('a' + l.gen);
    s.push_back(l.sign > 0 ? c : static_cast<char>(std::toupper(c)));
  }
  return s;
}

Word parse_word(std::string_view text, std::size_t alphabet_size) {
  if (alphabet_size == 0) throw InputError("empty alphabet");
  if (alphabet_size > 26) throw InputError("alphabet larger than 26 letters");
  std::vector<Letter> letters;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw InputError(std::string("character outside alphabet: '") + c + "'");
    const bool upper = std::isupper(static_cast<unsigned char>(c));
    const auto gen = static_cast<std::uint32_t>(std::tolower(static_cast<unsigned char>(c)) - 'a');
    if (gen >= alphabet_size)
      throw InputError(std::string("character outside alphabet: '") + c + "'");
    letters.push_back({gen, upper ? -1 : 1});
  }
  return Word(alphabet_size, std::move(letters));
}

Word parse_word_auto(std::string_view text, std::size_t min_alphabet) {
  std::size_t size = std::max<std::size_t>(min_alphabet, 1);
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c)))
      size = std::max<std::size_t>(size, std::tolower(static_cast<unsigned char>(c)) - 'a' + 1);
  }
  return parse_word(text, size);
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.length());
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back().cancels(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(w.alphabet_size(), std::move(stack));
}

long long exponent_sum(const Word& w, std::uint32_t gen) {
  long long sum = 0;
  for (const auto& l : w.letters())
    if (l.gen == gen) sum += l.sign;
  return sum;
}

bool in_commutator_subgroup(const Word& w) {
  for (std::uint32_t g = 0; g < w.alphabet_size(); ++g)
    if (exponent_sum(w, g) != 0) return false;
  return true;
}

Word substitute(const Word& w, const std::vector<Word>& images) {
  if (images.size() != w.alphabet_size())
    throw InputError("substitution arity mismatch: " + std::to_string(images.size()) +
                     " images for alphabet of size " + std::to_string(w.alphabet_size()));
  std::size_t target = 1;
  for (const auto& im : images) target = std::max(target, im.alphabet_size());

  std::vector<Word> inverses;
  inverses.reserve(images.size());
  for (const auto& im : images) inverses.push_back(im.inverse());

  // Reduce while appending so intermediate words never exceed the final
  // length by more than one image.
  std::vector<Letter> stack;
  for (const auto& l : w.letters()) {
    const Word& piece = l.sign > 0 ? images[l.gen] : inverses[l.gen];
    for (const auto& p : piece.letters()) {
      if (!stack.empty() && stack.back().cancels(p))
        stack.pop_back();
      else
        stack.push_back(p);
    }
  }
  return Word(target, std::move(stack));
}

Word commutator(const Word& u, const Word& v) {
  return free_reduce(u.inverse() * v.inverse() * u * v);
}

Word iterate_first(const Word& w, int n) {
  if (n < 1) throw InputError("iteration count must be at least 1");
  std::vector<Word> images;
  images.reserve(w.alphabet_size());
  for (std::uint32_t g = 0; g < w.alphabet_size(); ++g)
    images.push_back(Word::generator(w.alphabet_size(), g));

  Word current = free_reduce(w);
  for (int i = 1; i < n; ++i) {
    images[0] = current;
    current = substitute(w, images);
  }
  return current;
}

bool SystemIterate::all_trivial() const {
  return std::all_of(trivial.begin(), trivial.end(), [](bool t) { return t; });
}

bool SystemIterate::none_trivial() const {
  return std::none_of(trivial.begin(), trivial.end(), [](bool t) { return t; });
}

SystemIterate iterate_system(const WordSystem& ws, int n) {
  if (n < 1) throw InputError("iteration count must be at least 1");
  for (const auto& w : ws)
    if (w.alphabet_size() != ws.size())
      throw InputError("word system: each word must be on an alphabet of size " +
                       std::to_string(ws.size()));

  WordSystem current;
  current.reserve(ws.size());
  for (const auto& w : ws) current.push_back(free_reduce(w));
  for (int i = 1; i < n; ++i) {
    WordSystem next;
    next.reserve(ws.size());
    for (const auto& w : ws) next.push_back(substitute(w, current));
    current = std::move(next);
  }

  SystemIterate out;
  out.trivial.reserve(current.size());
  for (const auto& w : current) out.trivial.push_back(w.empty());
  out.words = std::move(current);
  return out;
}

WordSystem commutator_chain_system(std::size_t n) {
  if (n < 2) throw InputError("commutator chain needs at least two generators");
  auto gen = [n](std::size_t i) { return Word::generator(n, static_cast<std::uint32_t>(i)); };
  WordSystem ws;
  ws.reserve(n);
  ws.push_back(commutator(gen(0), gen(n - 1)));
  ws.push_back(commutator(gen(0), gen(n - 1)));
  for (std::size_t i = 2; i < n; ++i) ws.push_back(commutator(gen(i - 1), gen(n - 1)));
  return ws;
}

Word two_letter_reduction(const Word& w) {
  Word reduced = free_reduce(w);
  if (reduced.empty()) throw InputError("two-letter reduction of a freely trivial word");
  if (w.alphabet_size() <= 2) return Word(2, reduced.letters());

  const Word x = Word::generator(2, 0);
  const Word y = Word::generator(2, 1);
  std::vector<Word> images{x};
  for (std::size_t j = 2; j <= w.alphabet_size(); ++j) {
    std::vector<Letter> letters(j, Letter{1, 1});
    letters.push_back({0, 1});
    letters.insert(letters.end(), j, Letter{1, -1});
    images.emplace_back(2, std::move(letters));
  }
  return substitute(reduced, images);
}

namespace {

// Labeled graph folded in place with a union-find over vertices.
class FoldingGraph {
 public:
  std::uint32_t add_vertex() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }

  void add_edge(std::uint32_t from, std::uint32_t gen, std::uint32_t to) {
    edges_.insert({from, gen, to});
  }

  // Reads `w` as a closed path at the base vertex 0.
  void add_loop(const Word& w) {
    if (w.empty()) return;
    std::uint32_t at = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      const Letter& l = w.letters()[i];
      const std::uint32_t next = (i + 1 == w.length()) ? 0 : add_vertex();
      if (l.sign > 0)
        add_edge(at, l.gen, next);
      else
        add_edge(next, l.gen, at);
      at = next;
    }
  }

  void fold() {
    bool changed = true;
    while (changed) {
      changed = false;
      normalize();
      std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> out, in;
      for (const auto& [u, g, v] : edges_) {
        auto [o, fresh_o] = out.try_emplace({u, g}, v);
        if (!fresh_o && find(o->second) != find(v)) {
          unite(o->second, v);
          changed = true;
        }
        auto [i, fresh_i] = in.try_emplace({v, g}, u);
        if (!fresh_i && find(i->second) != find(u)) {
          unite(i->second, u);
          changed = true;
        }
      }
    }
  }

  std::size_t rank() {
    normalize();
    std::set<std::uint32_t> vertices{find(0)};
    for (const auto& [u, g, v] : edges_) {
      vertices.insert(u);
      vertices.insert(v);
    }
    // Connected graph: rank of the fundamental group is E - V + 1.
    return edges_.size() + 1 - vertices.size();
  }

 private:
  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  void normalize() {
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> merged;
    for (const auto& [u, g, v] : edges_) merged.insert({find(u), g, find(v)});
    edges_ = std::move(merged);
  }

  std::vector<std::uint32_t> parent_{0};
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges_;
};

}  // namespace

std::size_t subgroup_rank(const std::vector<Word>& words) {
  FoldingGraph graph;
  for (const auto& w : words) graph.add_loop(free_reduce(w));
  graph.fold();
  return graph.rank();
}

}  // namespace iterid
