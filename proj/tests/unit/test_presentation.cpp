#include <doctest.h>

#include <set>

#include "stabpres/abelian.hpp"
#include "support.hpp"

using namespace stabpres;
using namespace stabpres::testing;

namespace {

Presentation abstract(std::size_t generators, const std::vector<Word>& relators) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < generators; ++i) gens.push_back({std::string(1, char('a' + i)), {}});
  Presentation p(std::move(gens));
  for (const auto& r : relators) p.add_relator(r, RelatorTag::Other);
  return p;
}

constexpr Letter a = letter(0), A = letter(0, true), b = letter(1), B = letter(1, true);

void check_group_action(const CosetTable& t, const Presentation& p) {
  REQUIRE(t.complete());
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    std::set<std::size_t> image;
    for (std::size_t c = 1; c <= t.order(); ++c) {
      const std::size_t d = t.act(c, letter(g));
      CHECK(t.act(d, letter(g, true)) == c);
      image.insert(d);
    }
    CHECK(image.size() == t.order());
  }
  for (const auto& r : p.relators())
    for (std::size_t c = 1; c <= t.order(); ++c) CHECK(t.trace(c, r.word) == c);
}

}  // namespace

TEST_CASE("word reduction") {
  CHECK(free_reduce({a, b, B, A, b}) == Word{b});
  CHECK(cyclically_reduce({A, b, a}) == Word{b});
  CHECK(inverse({a, b}) == Word{B, A});
  CHECK(canonical_relator({b, a}) == canonical_relator({A, B}));
  CHECK(canonical_relator({b, a}) == canonical_relator({a, b}));
}

TEST_CASE("add_relator drops trivial and duplicate relators") {
  auto p = abstract(2, {});
  CHECK(p.add_relator({a, A}, RelatorTag::Other) == false);
  CHECK(p.add_relator({a, b}, RelatorTag::Other));
  CHECK(p.add_relator({b, a}, RelatorTag::Other) == false);
  CHECK(p.add_relator({B, A}, RelatorTag::Other) == false);
  CHECK(p.relators().size() == 1);
  CHECK_THROWS_AS(p.add_relator({letter(5)}, RelatorTag::Other), Error);
  CHECK(p.format() == "⟨ a, b | a b ⟩");
}

TEST_CASE("todd_coxeter on abstract presentations") {
  auto a4 = abstract(2, {{a, a}, {b, b, b}, {a, b, a, b, a, b}});
  auto t = todd_coxeter(a4);
  CHECK(t.complete());
  CHECK(t.order() == 12);
  check_group_action(t, a4);

  auto s3 = abstract(2, {{a, a}, {b, b, b}, {a, b, a, b}});
  CHECK(todd_coxeter(s3).order() == 6);

  auto trivial = abstract(0, {});
  CHECK(todd_coxeter(trivial).order() == 1);

  auto z = abstract(1, {});
  auto tz = todd_coxeter(z, 1000);
  CHECK(tz.status() == CosetTable::Status::Exhausted);
  CHECK(tz.bound() == 1000);

  auto z5 = abstract(1, {{a, a, a, a, a}});
  CHECK(todd_coxeter(z5).order() == 5);
}

TEST_CASE("F1 presentation") {
  auto P = prepare("f1");
  auto pres = build_presentation(P.action, P.quotient);
  REQUIRE(pres.generator_count() == 1);
  CHECK(pres.generators()[0].name == "(a b)@m");
  REQUIRE(pres.relators().size() == 1);
  CHECK(pres.relators()[0].tag == RelatorTag::MultTable);
  CHECK(pres.relators()[0].word == Word{letter(0), letter(0)});
  auto t = todd_coxeter(pres);
  CHECK(t.order() == 2);
  auto cert = verify_theorem(P.action, P.quotient, pres, t, vertex_at(0));
  CHECK(cert.presented_order == 2);
  CHECK(cert.elements_expressed == 2);

  const auto& X = P.action.complex();
  StabilizerWord w{{{perm(X, "(a b)"), X.vertex("m")}}};
  CHECK(word_to_coset(t, pres, w) != 1);
  CHECK(word_to_coset(t, pres, w * w) == 1);
}

TEST_CASE("F2 presentation has 11 generators and order 6") {
  auto P = prepare("f2");
  auto pres = build_presentation(P.action, P.quotient);
  CHECK(pres.generator_count() == 11);
  auto t = todd_coxeter(pres);
  CHECK(t.order() == 6);
  check_group_action(t, pres);
  auto cert = verify_theorem(P.action, P.quotient, pres, t, vertex_at(0));
  CHECK(cert.group_order == 6);
  CHECK(cert.relators_checked == pres.relators().size());
}

TEST_CASE("relators map to the identity and edge relators use edge stabilizers") {
  for (const char* name : {"f1", "f2", "f3"}) {
    auto P = prepare(name);
    const auto& X = P.action.complex();
    auto pres = build_presentation(P.action, P.quotient);
    std::size_t expected = 0;
    for (std::size_t v = 0; v < X.vertex_count(); ++v) expected += stabilizer(P.action, vertex_at(v)).size() - 1;
    CHECK(pres.generator_count() == expected);
    std::set<RelatorTag> tags;
    for (const auto& r : pres.relators()) {
      CHECK(psi_of(pres, r.word, X.vertex_count()).is_identity());
      tags.insert(r.tag);
      if (r.tag != RelatorTag::Edge) continue;
      REQUIRE(r.word.size() == 2);
      const auto& s = *pres.generators()[generator_of(r.word[0])].symbol;
      const auto& u = *pres.generators()[generator_of(r.word[1])].symbol;
      CHECK(s.element == u.element);
      CHECK(X.has_edge(s.vertex, u.vertex));
    }
    if (std::string(name) != "f1") CHECK(tags.count(RelatorTag::Conjugation));
  }
}

TEST_CASE("certificate catches a presentation that is too small") {
  auto P = prepare("f2");
  auto full = build_presentation(P.action, P.quotient);
  // Add g = 1 for the first generator: the presented group shrinks.
  auto cut = full;
  cut.add_relator({letter(0)}, RelatorTag::Other);
  auto t = todd_coxeter(cut);
  REQUIRE(t.complete());
  try {
    verify_theorem(P.action, P.quotient, cut, t, vertex_at(0));
    FAIL("expected a certificate failure");
  } catch (const CertificateFailedError& e) {
    CHECK(e.check() == 1);
  }
  auto exhausted = todd_coxeter(full, 3);
  CHECK_FALSE(exhausted.complete());
  try {
    verify_theorem(P.action, P.quotient, full, exhausted, vertex_at(0));
    FAIL("expected a certificate failure");
  } catch (const CertificateFailedError& e) {
    CHECK(e.check() == 2);
  }
}

TEST_CASE("choice independence and homomorphism on F2") {
  auto P = prepare("f2");
  const auto& X = P.action.complex();
  const auto pres = build_presentation(P.action, P.quotient);
  const auto table = todd_coxeter(pres);
  const AbelianImage ab(pres);
  const VertexId base = vertex_at(0);
  std::size_t most_words = 0;
  for (const auto& g : P.action.group().elements()) {
    std::set<std::size_t> cosets;
    std::set<std::vector<BigInt>> images;
    std::set<std::string> words;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      ArmstrongOptions o;
      o.seed = seed;
      auto w = armstrong_express(P.action, P.quotient, base, g, o);
      CHECK(psi_evaluate(w, X.vertex_count()) == g);
      cosets.insert(word_to_coset(table, pres, w));
      images.insert(ab(to_generator_word(pres, w)));
      words.insert(format_word(X, w));
    }
    CHECK(cosets.size() == 1);
    CHECK(images.size() == 1);
    most_words = std::max(most_words, words.size());
  }
  // The seeds really do change the words.
  CHECK(most_words > 1);
  for (const auto& g : P.action.group().elements())
    for (const auto& h : P.action.group().elements()) {
      auto wg = armstrong_express(P.action, P.quotient, base, g);
      auto wh = armstrong_express(P.action, P.quotient, base, h);
      auto wgh = armstrong_express(P.action, P.quotient, base, g * h);
      CHECK(word_to_coset(table, pres, wg * wh) == word_to_coset(table, pres, wgh));
    }
}

TEST_CASE("pi1 presentations") {
  auto tri = filled_triangle();
  auto p = pi1_presentation(tri, vertex_at(0));
  CHECK(p.generator_count() == 0);
  CHECK(todd_coxeter(p).order() == 1);

  auto hollow = cx("abc", {"ab", "bc", "ac"});
  auto h = pi1_presentation(hollow, vertex_at(0));
  CHECK(h.generator_count() == 1);
  CHECK(h.relators().empty());
  CHECK_FALSE(todd_coxeter(h, 500).complete());

  auto rp2 = prepare("f5", true).quotient.quotient;
  auto t = todd_coxeter(pi1_presentation(rp2, vertex_at(0)));
  CHECK(t.complete());
  CHECK(t.order() == 2);

  CHECK_THROWS_AS(pi1_presentation(cx("ab"), vertex_at(0)), Error);
}

TEST_CASE("presentation json mirror") {
  auto P = prepare("f2");
  auto pres = build_presentation(P.action, P.quotient);
  auto j = io::presentation_to_json(P.action.complex(), pres);
  CHECK(j.at("generators").size() == 11);
  CHECK(j.at("relators").size() == pres.relators().size());
  CHECK(j.at("relators").at(0).at("tag") == "mult");
}
