// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "stabpres/abelian.hpp"
#include "support.hpp"

using namespace stabpres;
using namespace stabpres::testing;

namespace {

constexpr double kF1Seconds = 1.0;
constexpr double kF2Seconds = 5.0;
constexpr double kF3Seconds = 60.0;
constexpr std::size_t kF3MaxCosets = 100'000;
constexpr double kDiscSeconds = 30.0;
constexpr std::size_t kDiscCount = 200;
constexpr std::size_t kDiscMaxBoundary = 12;
constexpr std::uint64_t kChoiceSeeds = 25;
constexpr int kSnfTrials = 500;
constexpr int kSnfEntry = 9;

struct Outcome {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

Outcome end_to_end(const char* name, std::size_t order, double limit,
                   std::size_t max_cosets = kDefaultMaxCosets,
                   std::optional<std::size_t> generators = std::nullopt) {
  Stopwatch clock;
  auto P = prepare(name);
  auto pres = build_presentation(P.action, P.quotient);
  auto table = todd_coxeter(pres, max_cosets);
  if (!table.complete()) return {false, "coset enumeration exhausted"};
  auto cert = verify_theorem(P.action, P.quotient, pres, table, vertex_at(0));
  const double t = clock.seconds();
  std::string detail = "Complete(" + std::to_string(table.order()) + "), |G| = " +
                       std::to_string(cert.group_order) + ", " +
                       std::to_string(pres.generator_count()) + " generators, " +
                       std::to_string(cert.relators_checked) + " relators certified, " + secs(t) +
                       " (limit " + secs(limit) + ")";
  bool ok = table.order() == order && cert.group_order == order && t < limit;
  if (generators) ok = ok && pres.generator_count() == *generators;
  if (max_cosets != kDefaultMaxCosets)
    detail += ", max_cosets " + std::to_string(max_cosets) + ", peak " + std::to_string(table.peak_cosets());
  return {ok, detail};
}

Outcome psi_inverse() {
  std::size_t checked = 0;
  for (const char* name : {"f1", "f2", "f3"}) {
    auto P = prepare(name);
    const std::size_t n = P.action.complex().vertex_count();
    for (const auto& g : P.action.group().elements()) {
      if (psi_evaluate(armstrong_express(P.action, P.quotient, vertex_at(0), g), n) != g)
        return {false, std::string(name) + ": psi(express(g)) != g for g = " +
                           format_cycles(P.action.complex(), g)};
      ++checked;
    }
  }
  return {checked == 2 + 6 + 48, std::to_string(checked) + " elements over F1-F3"};
}

Outcome choice_independence() {
  auto P = prepare("f2");
  auto pres = build_presentation(P.action, P.quotient);
  auto table = todd_coxeter(pres);
  AbelianImage image(pres);
  std::size_t words = 0, distinct = 0;
  for (const auto& g : P.action.group().elements()) {
    std::set<std::size_t> cosets;
    std::set<std::vector<BigInt>> images;
    std::set<std::string> spelled;
    for (std::uint64_t seed = 1; seed <= kChoiceSeeds; ++seed) {
      ArmstrongOptions o;
      o.seed = seed;
      auto w = armstrong_express(P.action, P.quotient, vertex_at(0), g, o);
      cosets.insert(word_to_coset(table, pres, w));
      images.insert(image(to_generator_word(pres, w)));
      spelled.insert(format_word(P.action.complex(), w));
      ++words;
    }
    if (cosets.size() != 1 || images.size() != 1)
      return {false, "element " + format_cycles(P.action.complex(), g) + " gave " +
                         std::to_string(cosets.size()) + " cosets, " +
                         std::to_string(images.size()) + " abelian images"};
    distinct += spelled.size();
  }
  return {words == 6 * kChoiceSeeds,
          std::to_string(words) + " words (" + std::to_string(distinct) +
              " distinct spellings) agree in coset and abelian image"};
}

Outcome equivariant_identity() {
  // F3 value computed by the brute-force oracle and frozen.
  const std::vector<std::pair<const char*, std::string>> expected{
      {"f1", "Z/2"}, {"f2", "Z/2"}, {"f3", "Z/2 ⊕ Z/2"}};
  std::string detail;
  bool ok = true;
  for (const auto& [name, value] : expected) {
    auto P = prepare(name);
    auto colim = format_invariants(colimit_H1(P.action, P.quotient));
    auto gab = format_invariants(group_abelianization(P.action.group()));
    ok = ok && colim == value && gab == value;
    if (!detail.empty()) detail += "; ";
    detail += std::string(name) + ": C(H1) = " + colim + ", G^ab = " + gab;
  }
  return {ok, detail};
}

Outcome negative_controls() {
  auto F4 = load_fixture("f4");
  auto rc = check_without_rotations(F4);
  if (rc.without_rotations || !rc.witness) return {false, "F4 accepted"};
  std::string detail = "F4: " + format_cycles(F4.complex(), rc.witness->element) +
                       " rotates simplex " + F4.complex().format(rc.witness->simplex);

  auto F5 = validate_without_rotations(load_fixture("f5"));
  try {
    build_quotient(F5);
    return {false, detail + "; F5 quotient built without subdivision"};
  } catch (const OrbitCollisionError& e) {
    detail += "; F5: OrbitCollision";
  }
  auto rp2 = build_quotient(refine_action(load_fixture("f5")).action).quotient;
  auto t = is_two_connected(rp2);
  const bool ok = t.verdict == TwoConnectivity::Verdict::No && t.pi1_order == 2u &&
                  t.h1 && format_invariants(*t.h1) == "Z/2";
  return {ok, detail + "; Sd F5: " + t.witness};
}

Outcome collapse_calculus() {
  Stopwatch clock;
  for (std::uint64_t seed = 0; seed < kDiscCount; ++seed) {
    const std::size_t n = 3 + seed % (kDiscMaxBoundary - 2);
    auto disc = random_nondegenerate_disc(n, seed);
    auto collapses = collapse_disc(disc);
    std::size_t last = disc.complex.simplex_count();
    for (const auto& c : collapses) {
      if (c.remaining >= last) return {false, "simplex count did not drop, seed " + std::to_string(seed)};
      last = c.remaining;
    }
    auto log = to_move_log(disc, collapses);
    if (last != 1 || !is_complete(disc.complex, log) ||
        2 * log.backtrack_count() - log.triangle_count() != log.initial.length())
      return {false, "certificate failed, seed " + std::to_string(seed)};
  }
  const double t = clock.seconds();
  return {t < kDiscSeconds, std::to_string(kDiscCount) + " discs, boundary 3-" +
                                std::to_string(kDiscMaxBoundary) + ", " + secs(t) + " (limit " +
                                secs(kDiscSeconds) + ")"};
}

Outcome snf_suite() {
  std::mt19937_64 rng(20260214);
  std::uniform_int_distribution<int> entry(-kSnfEntry, kSnfEntry);
  for (int trial = 0; trial < kSnfTrials; ++trial) {
    IntMatrix m(6, 6);
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 6; ++c) m(r, c) = entry(rng);
    auto f = smith_normal_form(m);
    BigInt product = 1;
    for (std::size_t i = 0; i < 6; ++i) product *= f.S(i, i);
    bool chain = true;
    for (std::size_t i = 0; i + 1 < 6; ++i)
      if (f.S(i, i) == 0 ? f.S(i + 1, i + 1) != 0 : f.S(i + 1, i + 1) % f.S(i, i) != 0) chain = false;
    if (f.U * m * f.V != f.S || !f.S.is_diagonal() || abs(determinant(f.U)) != 1 ||
        abs(determinant(f.V)) != 1 || !chain || abs(determinant(m)) != product)
      return {false, "trial " + std::to_string(trial) + " failed"};
  }
  return {true, std::to_string(kSnfTrials) + " random 6x6 matrices, entries in [-9, 9]"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"F1 end-to-end", [] { return end_to_end("f1", 2, kF1Seconds); }},
      {"F2 end-to-end", [] { return end_to_end("f2", 6, kF2Seconds, kDefaultMaxCosets, 11); }},
      {"F3 end-to-end", [] { return end_to_end("f3", 48, kF3Seconds, kF3MaxCosets); }},
      {"psi inverts express", psi_inverse},
      {"choice independence", choice_independence},
      {"equivariant identity", equivariant_identity},
      {"negative controls", negative_controls},
      {"collapse calculus", collapse_calculus},
      {"SNF property suite", snf_suite},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
