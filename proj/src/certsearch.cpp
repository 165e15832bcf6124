#include "iterid/certsearch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace iterid {

namespace {

std::string kind_name(CertKind k) { return k == CertKind::sl2 ? "sl2" : "cyclic"; }

std::uint64_t mod_of(long long v, std::uint64_t M) {
  const long long m = static_cast<long long>(M);
  return static_cast<std::uint64_t>(((v % m) + m) % m);
}

VerifyResult fail(std::string reason) { return {false, std::move(reason)}; }

BigInt sl2_group_order(std::uint64_t N) {
  const BigInt n = N;
  return n * n * n - n;
}

}  // namespace

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["schema_version"] = c.schema_version;
  j["word"] = c.word;
  j["kind"] = kind_name(c.kind);
  if (c.kind == CertKind::sl2) {
    j["field"] = {{"q", c.q}, {"k", c.k}, {"modulus", c.modulus}};
    j["y"] = {static_cast<long long>(c.y.a), static_cast<long long>(c.y.b), static_cast<long long>(c.y.c),
              static_cast<long long>(c.y.d)};
    j["witness"] = c.witness;
  } else {
    j["field"] = {{"M", c.M}};
    j["witness"] = c.residues;
  }
  j["period"] = c.period;
  j["group_order"] = c.group_order.str();
  j["search_meta"] = c.search_meta;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw CertificateFormatError("certificate must be a JSON object");
    Certificate c;
    c.schema_version = j.at("schema_version").get<int>();
    if (c.schema_version != kCertificateSchemaVersion)
      throw CertificateFormatError("unsupported schema_version " + std::to_string(c.schema_version));
    c.word = j.at("word").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    const auto& field = j.at("field");
    if (kind == "sl2") {
      c.kind = CertKind::sl2;
      c.q = field.at("q").get<std::uint64_t>();
      c.k = field.at("k").get<unsigned>();
      c.modulus = field.at("modulus").get<std::vector<std::uint32_t>>();
      const auto y = j.at("y").get<std::vector<long long>>();
      if (y.size() != 4) throw CertificateFormatError("y must have 4 entries");
      c.y = {y[0], y[1], y[2], y[3]};
      const auto w = j.at("witness").get<std::vector<std::vector<std::uint32_t>>>();
      if (w.size() != 4) throw CertificateFormatError("sl2 witness must have 4 entries");
      std::copy(w.begin(), w.end(), c.witness.begin());
    } else if (kind == "cyclic") {
      c.kind = CertKind::cyclic;
      c.M = field.at("M").get<std::uint64_t>();
      c.residues = j.at("witness").get<std::vector<std::uint64_t>>();
    } else {
      throw CertificateFormatError("unknown certificate kind '" + kind + "'");
    }
    c.period = j.at("period").get<std::uint64_t>();
    const auto order = j.at("group_order").get<std::string>();
    if (order.empty() || !std::all_of(order.begin(), order.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw CertificateFormatError("group_order must be a decimal string");
    c.group_order = BigInt(order);
    if (j.contains("search_meta")) c.search_meta = j.at("search_meta");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw CertificateFormatError(std::string("malformed certificate: ") + e.what());
  }
}

namespace {

VerifyResult verify_cyclic(const Certificate& c) {
  if (c.M < 2) return fail("modulus M must be at least 2");
  if (c.residues.empty()) return fail("empty residue assignment");
  if (c.group_order != BigInt(c.M)) return fail("group_order differs from M");
  if (c.period < 1) return fail("period must be positive");
  Word w;
  try {
    w = free_reduce(parse_word(c.word, c.residues.size()));
  } catch (const InputError& e) {
    return fail(e.what());
  }
  for (auto r : c.residues)
    if (r >= c.M) return fail("residue out of range");
  const auto M = static_cast<unsigned __int128>(c.M);
  const auto a = static_cast<unsigned __int128>(mod_of(exponent_sum(w, 0), c.M));
  unsigned __int128 shift = 0;
  for (std::uint32_t j = 1; j < c.residues.size(); ++j)
    shift = (shift + mod_of(exponent_sum(w, j), c.M) * static_cast<unsigned __int128>(c.residues[j])) % M;
  const unsigned __int128 x0 = c.residues[0];
  unsigned __int128 x = x0;
  for (std::uint64_t i = 1; i <= c.period; ++i) {
    x = (a * x + shift) % M;
    if (x == 0) return fail("iterate " + std::to_string(i) + " is the identity");
  }
  if (x != x0) return fail("orbit does not return to the witness after period steps");
  return {true, {}};
}

VerifyResult verify_sl2(const Certificate& c) {
  if (c.period < 1) return fail("period must be positive");
  if (c.k < 1 || c.modulus.size() != c.k + 1) return fail("modulus length does not match k");
  std::optional<Field> F;
  try {
    F = Field::from_modulus(c.q, c.modulus);
  } catch (const InputError& e) {
    return fail(std::string("invalid field: ") + e.what());
  }
  if (c.group_order != sl2_group_order(F->order())) return fail("group_order differs from N^3 - N");
  const BigInt dy = c.y.det();
  if (dy != 1 && dy != -1) return fail("y is not unimodular");
  std::array<Elem, 4> e{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (c.witness[i].size() != c.k) return fail("witness entry has wrong length");
    for (auto v : c.witness[i])
      if (v >= c.q) return fail("witness coefficient out of range");
    e[i] = F->from_coeffs(c.witness[i]);
  }
  const Matrix2 x{e[0], e[1], e[2], e[3]};
  if (!(det(*F, x) == F->one())) return fail("witness is not in SL(2)");
  const Matrix2 id = identity2(*F);
  if (x == id) return fail("witness is the identity");
  std::optional<VerbalMap> phi;
  try {
    phi.emplace(parse_word_auto(c.word), c.y, *F);
  } catch (const InputError& err) {
    return fail(err.what());
  }
  Matrix2 cur = x;
  for (std::uint64_t i = 1; i <= c.period; ++i) {
    cur = (*phi)(cur);
    if (cur == id) return fail("iterate " + std::to_string(i) + " is the identity");
  }
  if (!(cur == x)) return fail("orbit does not return to the witness after period steps");
  return {true, {}};
}

}  // namespace

VerifyResult verify_certificate(const Certificate& c) {
  if (c.schema_version != kCertificateSchemaVersion) return fail("unsupported schema version");
  return c.kind == CertKind::cyclic ? verify_cyclic(c) : verify_sl2(c);
}

Certificate cyclic_counterexample(const Word& w) {
  const Word r = free_reduce(w);
  const std::size_t m = r.alphabet_size();
  std::vector<long long> sums(m);
  for (std::uint32_t i = 0; i < m; ++i) sums[i] = exponent_sum(r, i);
  const auto nz = std::find_if(sums.begin(), sums.end(), [](long long v) { return v != 0; });
  if (nz == sums.end()) throw InputError("word " + r.str() + " lies in the commutator subgroup; no cyclic certificate");

  Certificate c;
  c.kind = CertKind::cyclic;
  c.word = r.str();
  c.residues.assign(m, 0);
  if (sums[0] != 0) {
    // M = |a|+1 is coprime to a; x = 1 gives iterates ±1.
    c.M = static_cast<std::uint64_t>(std::llabs(sums[0])) + 1;
    c.residues[0] = 1;
    c.search_meta["branch"] = "x-exponent";
  } else {
    // x -> b*y_j is constant; with y_j = 1 and M = |b|+1 the value b mod M is a fixed point.
    const auto j = static_cast<std::size_t>(nz - sums.begin());
    c.M = static_cast<std::uint64_t>(std::llabs(*nz)) + 1;
    c.residues[j] = 1;
    c.residues[0] = mod_of(*nz, c.M);
    c.search_meta["branch"] = "other-exponent";
  }
  c.search_meta["exponent_sums"] = sums;
  c.group_order = c.M;

  // Minimal period of the affine orbit, found by replay.
  const auto a = mod_of(sums[0], c.M);
  std::uint64_t shift = 0;
  for (std::size_t j = 1; j < m; ++j) shift = (shift + mod_of(sums[j], c.M) * c.residues[j]) % c.M;
  std::uint64_t x = c.residues[0];
  for (std::uint64_t p = 1; p <= c.M; ++p) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * x + shift) % c.M);
    if (x == c.residues[0]) {
      c.period = p;
      break;
    }
  }
  if (c.period == 0 || !verify_certificate(c)) throw std::logic_error("cyclic recipe failed for " + c.word);
  return c;
}

std::vector<std::pair<std::uint64_t, unsigned>> candidate_fields(const SearchBudget& budget) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  const std::uint64_t top = std::min(budget.max_prime, budget.max_field_order);
  for (std::uint64_t q = 3; q <= top; ++q) {
    if (!is_prime(q)) continue;
    std::uint64_t N = 1;
    for (unsigned k = 1; k <= budget.max_extension_degree; ++k) {
      if (N > budget.max_field_order / q) break;
      N *= q;
      out.emplace_back(q, k);
    }
  }
  auto order = [](const std::pair<std::uint64_t, unsigned>& f) {
    std::uint64_t N = 1;
    for (unsigned i = 0; i < f.second; ++i) N *= f.first;
    return N;
  };
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    const auto nx = order(x), ny = order(y);
    return nx != ny ? nx < ny : x.first < y.first;
  });
  return out;
}

SearchOutcome counterexample_search(const Word& w, const SearchBudget& budget, const IntMatrix2& y) {
  if (budget.max_field_order < 3 || budget.max_prime < 3 || budget.max_extension_degree < 1 || budget.sl2_budget < 1)
    throw InputError("search budget must allow at least F_3");
  const Word r = free_reduce(w);
  if (r.empty()) throw InputError("word is freely trivial; it is an identity in every group");

  SearchOutcome out;
  if (!in_commutator_subgroup(r)) {
    out.certificate = cyclic_counterexample(r);
    return out;
  }

  const Word w2 = r.alphabet_size() > 2 ? two_letter_reduction(r) : free_reduce(Word(2, r.letters()));
  nlohmann::json meta;
  if (r.alphabet_size() > 2) meta["original_word"] = r.str();
  const auto start = std::chrono::steady_clock::now();
  nlohmann::json tried = nlohmann::json::array();

  for (const auto& [q, k] : candidate_fields(budget)) {
    const std::string tag = std::to_string(q) + "^" + std::to_string(k);
    if (budget.time_limit_seconds > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > budget.time_limit_seconds) {
      out.frontier = "time limit reached before F_" + tag;
      return out;
    }
    if (y_degenerate_mod(y, q)) {
      out.attempts.push_back({q, k, "degenerate-y"});
      tried.push_back(tag + ":degenerate-y");
      continue;
    }
    std::uint64_t N = 1;
    for (unsigned i = 0; i < k; ++i) N *= q;
    if (sl2_order(N) > budget.sl2_budget) {
      out.frontier = "F_" + tag + ": |SL(2)| = " + std::to_string(sl2_order(N)) + " exceeds the enumeration budget " +
                     std::to_string(budget.sl2_budget);
      return out;
    }
    const Field F = Field::build(q, k);
    const CycleInventory inv = cycle_search_sl2(w2, y, F, budget.sl2_budget);
    if (inv.points.empty()) {
      out.attempts.push_back({q, k, "no-cycle"});
      tried.push_back(tag + ":no-cycle");
      continue;
    }
    out.attempts.push_back({q, k, "found"});
    tried.push_back(tag + ":found");

    // Smallest period; points are in index order, so the first one wins ties.
    const auto best = std::min_element(inv.points.begin(), inv.points.end(),
                                       [](const CyclePoint& u, const CyclePoint& v) { return u.period < v.period; });
    Certificate c;
    c.kind = CertKind::sl2;
    c.word = w2.str();
    c.q = q;
    c.k = k;
    c.modulus = F.modulus();
    c.y = y;
    const std::array<Elem, 4> entries{best->x.a, best->x.b, best->x.c, best->x.d};
    for (std::size_t i = 0; i < 4; ++i) c.witness[i] = F.coeffs(entries[i]);
    c.period = best->period;
    c.group_order = sl2_group_order(N);

    meta["fields_tried"] = tried;
    meta["cycle_points"] = inv.points.size();
    meta["cycles"] = inv.cycles;
    const BoundsReport b = theoretical_bounds(w2);
    meta["theoretical"] = {{"q", b.q}, {"Q_min", b.Q_min.str()}};
    c.search_meta = meta;

    if (const auto v = verify_certificate(c); !v) throw std::logic_error("search produced a bad certificate: " + v.reason);
    out.certificate = std::move(c);
    return out;
  }
  out.frontier = "searched every field up to order " + std::to_string(budget.max_field_order);
  return out;
}

Normalized normalize_to_sl2(const Matrix2& x, const Field& F) {
  const Elem dt = det(F, x);
  if (dt.code == 0) throw InputError("cannot normalize a singular matrix");
  SqrtResult r = sqrt_or_extend(dt, F);
  const Embedding& emb = r.embedding;
  const Matrix2 lifted = map_matrix(x, [&](Elem e) { return emb.apply(e); });
  const Matrix2 xn = scale(r.field, lifted, r.field.inv(r.root));
  return {r.field, xn, r.extended, r.embedding};
}

TwistedBasis twisted_system(const Word& w, const IntMatrix2& y, std::uint64_t q, std::uint64_t Q) {
  const ModMatrix mm = reduce_mod(word_to_H(w, y), q);
  return TwistedBasis({mm.H.begin(), mm.H.end()}, Q);
}

std::array<ModPoly, 2> nondegeneracy_filters(std::uint64_t q) {
  const PrimeFieldRing R{q};
  std::array<ModPoly, 4> v{ModPoly::variable(R, 4, 0), ModPoly::variable(R, 4, 1), ModPoly::variable(R, 4, 2),
                           ModPoly::variable(R, 4, 3)};
  const ModPoly dt = v[0] * v[3] - v[1] * v[2];
  return {v[1] * dt, v[2] * dt};
}

BridgeCheck twisted_bridge(const TwistedSolution& sol, const Word& w, const IntMatrix2& y, std::uint64_t block) {
  if (sol.point.size() != 4) throw InputError("bridge needs a point with 4 coordinates");
  const Field& F = sol.field;
  BridgeCheck out{normalize_to_sl2({sol.point[0], sol.point[1], sol.point[2], sol.point[3]}, F), {}};
  const Field& G = out.normalized.field;
  const VerbalMap phi(w, y, G);
  const Matrix2& xn = out.normalized.x;
  out.z = phi(xn);

  unsigned e = 0;
  for (std::uint64_t Q = sol.Q; Q > 1; Q /= F.q()) ++e;
  const Matrix2 fx = map_matrix(xn, [&](Elem a) { return G.frobenius(a, e); });
  const Matrix2 neg_fx = scale(G, fx, G.neg(G.one()));
  out.frobenius_twist = out.z == fx || out.z == neg_fx;

  out.bound = frobenius_period(sol, block);
  Matrix2 cur = out.z;
  for (std::uint64_t m = 1; m <= out.bound; ++m) {
    cur = phi(cur);
    if (cur == out.z) {
      out.period = m;
      break;
    }
  }
  out.ok = out.frobenius_twist && out.period > 0 && out.bound % out.period == 0 && !(out.z == identity2(G));
  return out;
}

std::uint64_t largest_prime_at_most(std::uint64_t n) {
  for (; n >= 2; --n)
    if (is_prime(n)) return n;
  return 0;
}

BoundsReport theoretical_bounds(const Word& w, std::size_t s) {
  if (s < 1) throw InputError("s must be at least 1");
  const Word r = free_reduce(w);
  if (r.empty()) throw InputError("bounds need a nontrivial word");
  BoundsReport b;
  b.l = r.length();
  b.s = s;
  b.n = 4 * s;
  b.d = b.l;
  b.D0 = 3 * s;
  const double l4 = std::pow(static_cast<double>(b.l), 4);
  b.q_bound = static_cast<std::uint64_t>(std::ceil(2.0 * std::log(3.0) * l4));
  b.q = largest_prime_at_most(b.q_bound);

  const BigInt d = b.d;
  const BigInt n = b.n;
  auto dpow = [&](std::size_t e) {
    BigInt p = 1;
    for (std::size_t i = 0; i < e; ++i) p *= d;
    return p;
  };
  b.threshold = BigInt(b.D0) * n * (n + 1) * dpow(b.n * b.n + 1);
  b.Q_min = b.q;
  b.Q_exponent = 1;
  while (b.Q_min <= b.threshold) {
    b.Q_min *= b.q;
    ++b.Q_exponent;
  }
  b.k_lemma = (n + 1) * dpow(b.n * b.n);
  b.K_lemma = (b.k_lemma - 1) * n + 1;
  b.cardinality_bound_expr = "|G| <= N^3 with N = " + std::to_string(b.q) + "^(2*Q^4*3), Q = " +
                             std::to_string(b.q) + "^" + std::to_string(b.Q_exponent) +
                             "; asymptotically exp(l^(68+eps))";
  return b;
}

nlohmann::json to_json(const BoundsReport& b) {
  return {{"l", b.l},
          {"s", b.s},
          {"n", b.n},
          {"d", b.d},
          {"D0", b.D0},
          {"q_bound", b.q_bound},
          {"q", b.q},
          {"threshold", b.threshold.str()},
          {"Q_min", b.Q_min.str()},
          {"Q_exponent", b.Q_exponent},
          {"k_lemma", b.k_lemma.str()},
          {"K_lemma", b.K_lemma.str()},
          {"inequality_holds", b.inequality_holds()},
          {"cardinality_bound_expr", b.cardinality_bound_expr}};
}

}  // namespace iterid
