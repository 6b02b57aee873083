#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace stabpres;
using namespace stabpres::testing;

namespace {

const char* const kFixtures[] = {"f1", "f2", "f3", "f4", "f5"};

std::vector<std::string> formatted(const SimplicialComplex& K, const std::vector<Permutation>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(format_cycles(K, p));
  return out;
}

}  // namespace

TEST_CASE("permutation composition applies the right factor first") {
  auto K = load_fixture("f2").complex();
  auto p = perm(K, "(1 2)"), q = perm(K, "(1 3)");
  CHECK(format_cycles(K, p * q) == "(1 3 2)");
  CHECK((p * q)(K.vertex("1")) == p(q(K.vertex("1"))));
  CHECK((p * p).is_identity());
  CHECK(format_cycles(K, Permutation::identity(K.vertex_count())) == "()");
  CHECK(perm(K, "(1 2 3)").inverse() == perm(K, "(3 2 1)"));
}

TEST_CASE("cycle notation parsing") {
  CHECK(parse_cycle_notation("(a b)(c d e)") ==
        std::vector<std::vector<std::string>>{{"a", "b"}, {"c", "d", "e"}});
  CHECK(parse_cycle_notation("()").empty());
  CHECK(parse_cycle_notation("(b(+x,+y) b(+y,-x))") ==
        std::vector<std::vector<std::string>>{{"b(+x,+y)", "b(+y,-x)"}});
  CHECK_THROWS_AS(parse_cycle_notation("(a b"), Error);
  CHECK_THROWS_AS(parse_cycle_notation("a b"), Error);
  auto K = load_fixture("f1").complex();
  CHECK_THROWS_AS(perm(K, "(a b)(b m)"), Error);
  CHECK_THROWS_AS(perm(K, "(a z)"), Error);
}

TEST_CASE("permutation from images") {
  CHECK_NOTHROW(Permutation::from_images({1, 0, 2}));
  try {
    Permutation::from_images({0, 0, 2});
    FAIL("expected NotABijection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotABijection);
  }
}

TEST_CASE("validate_simplicial_action") {
  auto F1 = load_fixture("f1");
  CHECK(F1.group().order() == 2);
  CHECK(F1.validated_simplicial());
  CHECK(load_fixture("f2").group().order() == 6);
  CHECK(load_fixture("f3").group().order() == 48);
  CHECK(load_fixture("f4").group().order() == 3);
  CHECK(load_fixture("f5").group().order() == 2);

  auto K = F1.complex();
  try {
    validate_simplicial_action(K, {perm(K, "(a m)")});
    FAIL("expected NotSimplicial");
  } catch (const NotSimplicialError& e) {
    CHECK(e.generator() == 0);
    CHECK(e.kind() == ErrorKind::NotSimplicial);
  }
  try {
    validate_simplicial_action(K, {perm(K, "(a b)")}, 1);
    FAIL("expected GroupTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GroupTooLarge);
  }
}

TEST_CASE("check_without_rotations") {
  CHECK(check_without_rotations(load_fixture("f1")).without_rotations);
  CHECK(check_without_rotations(load_fixture("f5")).without_rotations);
  CHECK(check_without_rotations(load_fixture("f2")).without_rotations);
  CHECK(check_without_rotations(load_fixture("f3")).without_rotations);

  auto F4 = load_fixture("f4");
  auto rc = check_without_rotations(F4);
  REQUIRE_FALSE(rc.without_rotations);
  REQUIRE(rc.witness.has_value());
  CHECK(F4.complex().format(rc.witness->simplex) == "{1,2,3}");
  try {
    validate_without_rotations(F4);
    FAIL("expected RotationFound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RotationFound);
    CHECK(std::string(e.what()) == "(1 2 3) rotates simplex {1,2,3}");
  }
}

TEST_CASE("one subdivision removes the rotation of F4") {
  auto sd = subdivide_action(load_fixture("f4"));
  CHECK(sd.complex().vertex_count() == 7);
  CHECK(check_without_rotations(sd).without_rotations);
  // The only fixed vertex is the barycenter.
  auto g = sd.group().generators().front();
  std::vector<std::string> fixed;
  for (std::size_t i = 0; i < sd.complex().vertex_count(); ++i)
    if (g(vertex_at(i)) == vertex_at(i)) fixed.push_back(sd.complex().name(vertex_at(i)));
  CHECK(fixed == std::vector<std::string>{"b(1,2,3)"});
  // The orbit condition still fails after one subdivision, so refine needs two.
  CHECK(find_orbit_collision(validate_without_rotations(sd)).has_value());
  auto r = refine_action(load_fixture("f4"));
  CHECK(r.subdivisions == 2);
  CHECK(r.action.validated_without_rotations());
  CHECK_FALSE(find_orbit_collision(r.action).has_value());
}

TEST_CASE("refine_action") {
  auto r1 = refine_action(load_fixture("f1"));
  CHECK(r1.subdivisions == 0);
  CHECK(r1.action.complex() == load_fixture("f1").complex());

  auto r5 = refine_action(load_fixture("f5"));
  CHECK(r5.subdivisions == 1);
  CHECK(r5.action.complex().vertex_count() == 26);

  GroupAction unchecked;
  CHECK_THROWS_AS(refine_action(unchecked), Error);
}

TEST_CASE("build_quotient") {
  auto F1 = prepare("f1");
  const auto& Y1 = F1.quotient.quotient;
  CHECK(Y1.names() == std::vector<std::string>{"a", "m"});
  CHECK(Y1.edges().size() == 1);
  CHECK(Y1.triangles().empty());
  CHECK(F1.quotient.project(F1.action.complex().vertex("b")) == Y1.vertex("a"));

  auto F2 = prepare("f2");
  const auto& Y2 = F2.quotient.quotient;
  CHECK(Y2.vertex_count() == 3);
  CHECK(Y2.edges().size() == 3);
  CHECK(Y2.triangles().size() == 1);
  CHECK(Y2.names() == std::vector<std::string>{"1", "c", "m12"});

  auto F5 = validate_without_rotations(load_fixture("f5"));
  try {
    build_quotient(F5);
    FAIL("expected OrbitCollision");
  } catch (const OrbitCollisionError& e) {
    CHECK(e.kind() == ErrorKind::OrbitCollision);
    CHECK(e.collision().first != e.collision().second);
  }

  CHECK_THROWS_AS(build_quotient(load_fixture("f1")), Error);  // not validated
}

TEST_CASE("build_quotient after refine_action never collides") {
  for (const char* name : kFixtures) {
    auto r = refine_action(load_fixture(name));
    CHECK_NOTHROW(build_quotient(r.action));
  }
}

TEST_CASE("projection commutes with the action") {
  for (const char* name : kFixtures) {
    auto r = refine_action(load_fixture(name));
    auto q = build_quotient(r.action);
    const auto& X = r.action.complex();
    for (const auto& g : r.action.group().elements())
      for (std::size_t i = 0; i < X.vertex_count(); ++i)
        CHECK(q.project(g(vertex_at(i))) == q.project(vertex_at(i)));
    for (const auto& [s, lifts] : q.lift_index)
      for (const auto& t : lifts) CHECK(q.project(t) == s);
  }
}

TEST_CASE("stabilizers") {
  auto F1 = load_fixture("f1");
  const auto& K1 = F1.complex();
  CHECK(formatted(K1, stabilizer(F1, K1.vertex("m"))) == std::vector<std::string>{"()", "(a b)"});
  CHECK(formatted(K1, stabilizer(F1, K1.vertex("a"))) == std::vector<std::string>{"()"});
  auto F2 = load_fixture("f2");
  CHECK(stabilizer(F2, F2.complex().vertex("c")).size() == 6);
  CHECK_THROWS_AS(stabilizer(F1, vertex_at(17)), Error);
}

TEST_CASE("stabilizer consistency and edge stabilizers") {
  for (const char* name : kFixtures) {
    auto A = refine_action(load_fixture(name)).action;
    const auto& X = A.complex();
    for (std::size_t i = 0; i < X.vertex_count(); ++i)
      for (const auto& g : stabilizer(A, vertex_at(i))) CHECK(g(vertex_at(i)) == vertex_at(i));
    for (const auto& e : X.edges()) {
      auto s0 = stabilizer(A, e[0]), s1 = stabilizer(A, e[1]);
      std::vector<Permutation> both;
      std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(), std::back_inserter(both));
      CHECK(stabilizer(A, e) == both);
      // Setwise equals pointwise once rotations are excluded.
      std::vector<Permutation> setwise;
      for (const auto& g : A.group().elements())
        if (g.apply(e) == e) setwise.push_back(g);
      CHECK(setwise == both);
    }
  }
}

TEST_CASE("transporter") {
  auto F1 = load_fixture("f1");
  const auto& K = F1.complex();
  auto Gm = stabilizer(F1, K.vertex("m"));
  auto h = transporter(Gm, K.vertex("b"), K.vertex("a"));
  REQUIRE(h.has_value());
  CHECK(format_cycles(K, *h) == "(a b)");
  CHECK_FALSE(transporter(Gm, K.vertex("a"), K.vertex("m")).has_value());

  auto F3 = load_fixture("f3");
  const auto& X = F3.complex();
  for (std::size_t v = 0; v < X.vertex_count(); v += 5) {
    auto S = stabilizer(F3, vertex_at(v));
    for (std::size_t x = 0; x < X.vertex_count(); ++x)
      for (std::size_t y = 0; y < X.vertex_count(); ++y) {
        auto t = transporter(S, vertex_at(x), vertex_at(y));
        bool exists = std::any_of(S.begin(), S.end(),
                                  [&](const Permutation& g) { return g(vertex_at(x)) == vertex_at(y); });
        CHECK(t.has_value() == exists);
        if (t) {
          CHECK(std::find(S.begin(), S.end(), *t) != S.end());
          CHECK((*t)(vertex_at(x)) == vertex_at(y));
        }
      }
  }
}

TEST_CASE("orbit representatives are orbit minima") {
  auto A = load_fixture("f3");
  auto reps = orbit_representatives(A);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& g : A.group().elements()) CHECK(index_of(reps[i]) <= index_of(g(vertex_at(i))));
}
