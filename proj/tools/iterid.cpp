// iterid: command-line front end.
//
// Exit codes: 0 ok / verified, 1 verification failed, 2 budget exhausted,
// 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iterid/certsearch.hpp"

using namespace iterid;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kBudget = 2, kInput = 3 };

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

IntMatrix2 parse_y(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 4) throw InputError("--y expects four comma-separated integers a,b,c,d");
  std::array<BigInt, 4> v;
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      v[i] = BigInt(parts[i]);
    } catch (const std::exception&) {
      throw InputError("--y entry '" + parts[i] + "' is not an integer");
    }
  }
  return {v[0], v[1], v[2], v[3]};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CertificateFormatError(path + ": " + e.what());
  }
}

int cmd_reduce(const std::string& word) {
  std::cout << free_reduce(parse_word_auto(word)).str() << "\n";
  return kOk;
}

int cmd_iterate(const std::string& word, int n, const std::string& system) {
  if (n < 1) throw InputError("N must be at least 1");
  if (system.empty()) {
    const Word it = iterate_first(parse_word_auto(word), n);
    std::cout << (it.empty() ? "e" : it.str()) << "\n";
    return kOk;
  }
  const auto parts = split_commas(system);
  WordSystem ws;
  for (const auto& p : parts) ws.push_back(parse_word(p, parts.size()));
  const SystemIterate it = iterate_system(ws, n);
  json out = json::array();
  for (std::size_t i = 0; i < it.words.size(); ++i)
    out.push_back({{"word", it.trivial[i] ? "e" : it.words[i].str()}, {"trivial", static_cast<bool>(it.trivial[i])}});
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_symbolic(const std::string& word, const std::string& y_text, std::uint64_t mod) {
  const IntMatrix2 y = y_text.empty() ? default_y() : parse_y(y_text);
  const RationalMatrix rm = word_to_H(parse_word_auto(word), y);
  std::cout << (mod ? to_json(reduce_mod(rm, mod)) : to_json(rm)).dump(2) << "\n";
  return kOk;
}

int cmd_groebner(const std::string& path, std::uint64_t Q) {
  const json basis = read_json_file(path);
  std::uint64_t q = 0;
  std::vector<std::string> texts;
  try {
    q = basis.at("q").get<std::uint64_t>();
    texts = basis.at("polys").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(path + ": expected {\"q\": prime, \"polys\": [strings]}: " + e.what());
  }
  if (texts.empty()) throw InputError("basis has no polynomials");
  std::vector<ModPoly> polys;
  for (const auto& t : texts) polys.push_back(parse_mod_poly(t, texts.size(), q));
  const TwistedBasis tb(std::move(polys), Q);
  const GroebnerCheck g = groebner_check_detail(tb);
  std::cout << json{{"degree_ok", g.degree_ok},
                    {"leading_terms_coprime", g.leading_terms_coprime},
                    {"s_pairs", g.s_pairs},
                    {"s_polys_reduce_to_zero", g.s_polys_reduce_to_zero},
                    {"is_groebner", g.is_groebner()}}
                   .dump(2)
            << "\n";
  return g.is_groebner() ? kOk : kFailed;
}

int cmd_search(const std::string& word, const SearchBudget& budget, const std::string& out_path) {
  const SearchOutcome res = counterexample_search(parse_word_auto(word), budget);
  if (!res.certificate) {
    std::cerr << "budget exhausted: " << res.frontier << "\n";
    std::cout << json{{"status", "budget-exhausted"}, {"frontier", res.frontier}}.dump(2) << "\n";
    return kBudget;
  }
  const std::string text = to_json(*res.certificate).dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    out << text;
  }
  std::cout << text;
  return kOk;
}

int cmd_verify(const std::string& path) {
  const Certificate c = certificate_from_json(read_json_file(path));
  const VerifyResult v = verify_certificate(c);
  if (v) {
    std::cout << "verified: " << c.word << " is not an iterated identity in a group of order " << c.group_order.str()
              << "\n";
    return kOk;
  }
  std::cout << "verification failed: " << v.reason << "\n";
  return kFailed;
}

int cmd_bounds(const std::string& word, std::size_t s) {
  std::cout << to_json(theoretical_bounds(parse_word_auto(word), s)).dump(2) << "\n";
  return kOk;
}

int cmd_rank(const std::string& words) {
  const auto parts = split_commas(words);
  std::size_t alphabet = 2;
  for (const auto& p : parts) alphabet = std::max(alphabet, parse_word_auto(p).alphabet_size());
  std::vector<Word> ws;
  for (const auto& p : parts) ws.push_back(parse_word(p, alphabet));
  std::cout << subgroup_rank(ws) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite counterexample groups for iterated identities in free groups"};
  app.require_subcommand(1);

  std::string word, system, y_text, path, out_path;
  int n = 1;
  std::uint64_t mod = 0, Q = 0;
  std::size_t s = 1;
  SearchBudget budget;

  auto* reduce = app.add_subcommand("reduce", "Freely reduce a word");
  reduce->add_option("WORD", word)->required();

  auto* iterate = app.add_subcommand("iterate", "N-th iterate of a word (or of a word system)");
  iterate->add_option("WORD", word)->required();
  iterate->add_option("N", n)->required();
  iterate->add_option("--system", system, "Comma-separated words; WORD is then ignored");

  auto* symbolic = app.add_subcommand("symbolic", "Polynomial matrix H and exponent s with w(x,y) = H/det(x)^s");
  symbolic->add_option("WORD", word)->required();
  symbolic->add_option("--y", y_text, "Fixed matrix y as a,b,c,d (default 1,0,2,1)");
  symbolic->add_option("--mod", mod, "Reduce H modulo a prime");

  auto* groebner = app.add_subcommand("groebner-check", "Check that f_i - x_i^Q is a Groebner basis");
  groebner->add_option("--basis", path, "JSON file {q, polys}")->required();
  groebner->add_option("--Q", Q)->required();

  auto* search = app.add_subcommand("search", "Search for a counterexample group and print its certificate");
  search->add_option("WORD", word)->required();
  search->add_option("--max-order", budget.max_field_order, "Largest field order to try");
  search->add_option("--max-prime", budget.max_prime, "Largest characteristic to try");
  search->add_option("--json", out_path, "Also write the certificate to this file");

  auto* verify = app.add_subcommand("verify-cert", "Re-check a certificate file");
  verify->add_option("FILE", path)->required();

  auto* bounds = app.add_subcommand("bounds", "Explicit bounds for a word of this length");
  bounds->add_option("WORD", word)->required();
  bounds->add_option("--s", s, "Number of words in the system");

  auto* rank = app.add_subcommand("rank", "Rank of the subgroup generated by the words");
  std::string words;
  rank->add_option("WORDS", words, "Comma-separated words")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*reduce) return cmd_reduce(word);
    if (*iterate) return cmd_iterate(word, n, system);
    if (*symbolic) return cmd_symbolic(word, y_text, mod);
    if (*groebner) return cmd_groebner(path, Q);
    if (*search) return cmd_search(word, budget, out_path);
    if (*verify) return cmd_verify(path);
    if (*bounds) return cmd_bounds(word, s);
    if (*rank) return cmd_rank(words);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
