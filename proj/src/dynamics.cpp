#include "iterid/dynamics.hpp"

#include <algorithm>
#include <numeric>

namespace iterid {

PolyMap identity_map(std::size_t n, std::uint64_t q) {
  PolyMap f;
  for (std::size_t i = 0; i < n; ++i) f.push_back(ModPoly::variable(PrimeFieldRing{q}, n, i));
  return f;
}

PolyMap compose_map(const PolyMap& f, int j, std::size_t max_terms) {
  if (j < 1) throw InputError("iteration count must be at least 1");
  if (f.empty()) throw InputError("empty polynomial map");
  for (const auto& p : f)
    if (p.nvars() != f.size()) throw InputError("polynomial map arity must match its variable count");
  PolyMap current = f;
  for (int step = 1; step < j; ++step) {
    PolyMap next;
    next.reserve(f.size());
    for (const auto& p : f) next.push_back(p.compose(current, max_terms));
    current = std::move(next);
  }
  return current;
}

Elem evaluate(const ModPoly& p, const Field& F, std::span<const Elem> point) {
  const std::vector<Elem> pt(point.begin(), point.end());
  return p.evaluate<Elem>(
      pt, F.zero(), F.one(), [&](std::uint64_t c) { return F.from_int(static_cast<long long>(c)); },
      [&](Elem a, Elem b) { return F.add(a, b); }, [&](Elem a, Elem b) { return F.mul(a, b); });
}

std::vector<Elem> apply_map(const PolyMap& f, const Field& F, std::span<const Elem> point) {
  std::vector<Elem> out;
  out.reserve(f.size());
  for (const auto& p : f) out.push_back(evaluate(p, F, point));
  return out;
}

bool verify_iteration_congruence(const TwistedBasis& tb, int j_max, std::size_t max_terms) {
  if (j_max < 1) throw InputError("j_max must be at least 1");
  if (!tb.degree_condition()) throw InputError("twisted basis is not a Groebner basis");
  const std::size_t n = tb.n();
  std::uint64_t Qj = 1;
  PolyMap iterate = tb.polys();
  for (int j = 1; j <= j_max; ++j) {
    Qj *= tb.Q();
    if (Qj > (std::uint64_t{1} << 20)) throw BudgetExceeded("Q^j exceeds the exponent cap");
    if (j > 1) {
      PolyMap next;
      for (const auto& p : tb.polys()) next.push_back(p.compose(iterate, max_terms));
      iterate = std::move(next);
    }
    for (std::size_t i = 0; i < n; ++i) {
      ModPoly diff = iterate[i];
      diff.add_term(Monomial::var(n, i, static_cast<std::uint32_t>(Qj)), diff.ring().neg(diff.ring().one()));
      if (!normal_form(diff, tb).is_zero()) return false;
    }
  }
  return true;
}

bool satisfies(const TwistedBasis& tb, const TwistedSolution& sol) {
  if (sol.point.size() != tb.n()) return false;
  for (std::size_t i = 0; i < tb.n(); ++i)
    if (!(evaluate(tb.polys()[i], sol.field, sol.point) == sol.field.pow(sol.point[i], tb.Q()))) return false;
  return true;
}

std::vector<TwistedSolution> twisted_solutions(const TwistedBasis& tb, unsigned k_max, const ModPoly& D,
                                               std::uint64_t budget) {
  const std::size_t n = tb.n();
  if (D.nvars() != n) throw InputError("filter polynomial has wrong arity");
  std::vector<TwistedSolution> out;
  for (unsigned k = 1; k <= k_max; ++k) {
    Field F = Field::build(tb.q(), k);
    long double points = 1;
    for (std::size_t i = 0; i < n; ++i) points *= static_cast<long double>(F.order());
    if (points > static_cast<long double>(budget))
      throw BudgetExceeded("F_" + std::to_string(tb.q()) + "^" + std::to_string(k) + " has " +
                           std::to_string(static_cast<double>(points)) + " points in dimension " + std::to_string(n) +
                           ", over the budget of " + std::to_string(budget));
    std::vector<unsigned> proper_divisors;
    for (unsigned e = 1; e < k; ++e)
      if (k % e == 0) proper_divisors.push_back(e);

    std::vector<Elem> a(n, F.zero());
    std::vector<std::uint64_t> digits(n, 0);
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        ok = evaluate(tb.polys()[i], F, a) == F.pow(a[i], tb.Q());
      if (ok && evaluate(D, F, a).code != 0) {
        const bool in_subfield = std::any_of(proper_divisors.begin(), proper_divisors.end(), [&](unsigned e) {
          return std::all_of(a.begin(), a.end(), [&](Elem c) { return F.frobenius(c, e) == c; });
        });
        if (!in_subfield) out.push_back({F, a, tb.Q()});
      }
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (++digits[i] < F.order()) {
          a[i] = F.at(digits[i]);
          break;
        }
        digits[i] = 0;
        a[i] = F.zero();
      }
      if (i == n) break;
    }
  }
  return out;
}

std::uint64_t frobenius_period(const TwistedSolution& sol, std::uint64_t block) {
  if (block == 0) throw InputError("block must be positive");
  const Field& F = sol.field;
  std::vector<Elem> cur = sol.point;
  for (std::uint64_t l = 1;; ++l) {
    for (auto& c : cur) c = F.pow(c, sol.Q);
    if (cur == sol.point) return block * l;
    if (l > F.k() * 64) throw std::logic_error("Frobenius orbit did not close");
  }
}

Matrix2 reduce_matrix(const IntMatrix2& y, const Field& F) {
  auto lift = [&](const BigInt& v) {
    BigInt r = v % F.q();
    if (r < 0) r += F.q();
    return F.from_int(static_cast<long long>(r));
  };
  return {lift(y.a), lift(y.b), lift(y.c), lift(y.d)};
}

VerbalMap::VerbalMap(const Word& w, const IntMatrix2& y, Field F)
    : f_(std::move(F)), letters_(free_reduce(w).letters()), y_(reduce_matrix(y, f_)) {
  if (w.alphabet_size() > 2) throw InputError("verbal map needs a word on two letters");
  if (det(f_, y_).code == 0) throw InputError("y is singular modulo q");
  y_inv_ = inverse(f_, y_);
}

Matrix2 VerbalMap::operator()(const Matrix2& x) const {
  const Matrix2 x_inv = inverse(f_, x);
  Matrix2 acc = identity2(f_);
  bool first = true;
  for (const auto& l : letters_) {
    const Matrix2& m = l.gen == 0 ? (l.sign > 0 ? x : x_inv) : (l.sign > 0 ? y_ : y_inv_);
    acc = first ? m : mul(f_, acc, m);
    first = false;
  }
  return acc;
}

Matrix2 VerbalMap::iterate(const Matrix2& x, std::uint64_t n) const {
  Matrix2 cur = x;
  for (std::uint64_t i = 0; i < n; ++i) cur = (*this)(cur);
  return cur;
}

OrbitRecord orbit(const VerbalMap& phi, const Matrix2& start, std::uint64_t budget) {
  Sl2Indexer idx(phi.field(), budget);
  if (!(det(phi.field(), start) == phi.field().one())) throw InputError("orbit start is not in SL(2)");
  std::vector<std::int64_t> step_of(idx.size(), -1);
  std::vector<Matrix2> path;
  Matrix2 cur = start;
  while (step_of[idx.index(cur)] < 0) {
    step_of[idx.index(cur)] = static_cast<std::int64_t>(path.size());
    path.push_back(cur);
    cur = phi(cur);
  }
  const auto entry = static_cast<std::uint64_t>(step_of[idx.index(cur)]);
  OrbitRecord rec;
  rec.start = start;
  rec.tail_length = entry;
  rec.period = path.size() - entry;
  rec.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(entry), path.end());
  return rec;
}

namespace {

struct FunctionalGraphCycles {
  std::vector<std::uint32_t> cycle_id;  // per node; 0 when not periodic, else 1-based cycle id
  std::vector<std::uint64_t> cycle_length;  // indexed by cycle id - 1
};

FunctionalGraphCycles find_cycles(const std::vector<std::uint32_t>& next) {
  const std::size_t n = next.size();
  constexpr std::uint32_t kUnseen = 0xffffffffu;
  std::vector<std::uint32_t> walk(n, kUnseen);
  FunctionalGraphCycles out;
  out.cycle_id.assign(n, 0);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (walk[s] != kUnseen) continue;
    std::uint32_t u = s;
    while (walk[u] == kUnseen) {
      walk[u] = s;
      u = next[u];
    }
    if (walk[u] != s) continue;  // ran into an earlier walk
    out.cycle_length.push_back(0);
    const auto id = static_cast<std::uint32_t>(out.cycle_length.size());
    std::uint32_t v = u;
    do {
      out.cycle_id[v] = id;
      ++out.cycle_length.back();
      v = next[v];
    } while (v != u);
  }
  return out;
}

}  // namespace

CycleInventory cycle_search_sl2(const Word& w, const IntMatrix2& y, const Field& F, std::uint64_t budget) {
  VerbalMap phi(w, y, F);
  if (phi.y_degenerate())
    throw DegenerateGenerator("y reduces to a scalar matrix over " + F.describe() + "; the verbal map ignores y");
  Sl2Indexer idx(F, budget);
  std::vector<std::uint32_t> next(idx.size());
  for (std::uint64_t i = 0; i < idx.size(); ++i) next[i] = static_cast<std::uint32_t>(idx.index(phi(idx.at(i))));

  const auto cycles = find_cycles(next);
  CycleInventory inv;
  inv.group_order = idx.size();
  inv.cycles = cycles.cycle_length.size();
  const Matrix2 e = identity2(F);
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    if (!cycles.cycle_id[i]) continue;
    ++inv.cycle_elements;
    const Matrix2 x = idx.at(i);
    if (x == e) continue;
    inv.points.push_back({x, cycles.cycle_length[cycles.cycle_id[i] - 1]});
  }
  return inv;
}

Matrix2 eval_word(const Word& w, const Field& F, std::span<const Matrix2> values) {
  if (values.size() < w.alphabet_size()) throw InputError("not enough values for the word's alphabet");
  Matrix2 acc = identity2(F);
  for (const auto& l : w.letters()) {
    const Matrix2& v = values[l.gen];
    acc = mul(F, acc, l.sign > 0 ? v : inverse(F, v));
  }
  return acc;
}

std::vector<TupleCycle> cycle_search_tuples(const WordSystem& ws, const Field& F, std::uint64_t budget) {
  const std::size_t s = ws.size();
  if (s == 0) throw InputError("empty word system");
  for (const auto& w : ws)
    if (w.alphabet_size() != s) throw InputError("word system: each word must be on an alphabet of size s");
  Sl2Indexer idx(F, budget);
  long double states = 1;
  for (std::size_t i = 0; i < s; ++i) states *= static_cast<long double>(idx.size());
  if (states > static_cast<long double>(budget))
    throw BudgetExceeded("SL(2)^" + std::to_string(s) + " over " + F.describe() + " exceeds the budget");
  const auto total = static_cast<std::uint64_t>(states);
  const std::uint64_t g = idx.size();

  auto decode = [&](std::uint64_t state) {
    std::vector<Matrix2> t(s);
    for (std::size_t i = 0; i < s; ++i) {
      t[i] = idx.at(state % g);
      state /= g;
    }
    return t;
  };
  auto encode = [&](const std::vector<Matrix2>& t) {
    std::uint64_t state = 0;
    for (std::size_t i = s; i-- > 0;) state = state * g + idx.index(t[i]);
    return state;
  };

  std::vector<Word> reduced;
  for (const auto& w : ws) reduced.push_back(free_reduce(w));
  std::vector<std::uint32_t> next(total);
  for (std::uint64_t st = 0; st < total; ++st) {
    const auto t = decode(st);
    std::vector<Matrix2> image(s);
    for (std::size_t i = 0; i < s; ++i) image[i] = eval_word(reduced[i], F, t);
    next[st] = static_cast<std::uint32_t>(encode(image));
  }

  const auto cycles = find_cycles(next);
  const Matrix2 e = identity2(F);
  std::vector<bool> clean(cycles.cycle_length.size(), true);
  for (std::uint64_t st = 0; st < total; ++st) {
    if (!cycles.cycle_id[st]) continue;
    const auto t = decode(st);
    if (std::any_of(t.begin(), t.end(), [&](const Matrix2& m) { return m == e; }))
      clean[cycles.cycle_id[st] - 1] = false;
  }
  std::vector<TupleCycle> out;
  for (std::uint64_t st = 0; st < total; ++st) {
    const auto id = cycles.cycle_id[st];
    if (id && clean[id - 1]) out.push_back({decode(st), cycles.cycle_length[id - 1]});
  }
  return out;
}

}  // namespace iterid
