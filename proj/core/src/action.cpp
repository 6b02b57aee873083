#include "stabpres/action.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace stabpres {

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t cap)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.degree() != degree)
      throw Error(ErrorKind::NotABijection, "generator degree does not match the vertex count");

  std::set<Permutation> seen{Permutation::identity(degree)};
  std::deque<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty()) {
    Permutation x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators_) {
      Permutation y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw Error(ErrorKind::GroupTooLarge,
                      "group has more than " + std::to_string(cap) + " elements");
        frontier.push_back(std::move(y));
      }
    }
  }
  elements_.assign(seen.begin(), seen.end());
}

bool PermGroup::contains(const Permutation& p) const { return index(p).has_value(); }

std::optional<std::size_t> PermGroup::index(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

GroupAction validate_simplicial_action(const SimplicialComplex& complex,
                                       std::vector<Permutation> generators, std::size_t cap) {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].degree() != complex.vertex_count())
      throw Error(ErrorKind::NotABijection,
                  "generator " + std::to_string(i) + " is not defined on exactly the vertex set");

  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    auto check = [&](const std::vector<Simplex>& simplices) {
      for (const auto& s : simplices)
        if (!complex.contains(g.apply(s)))
          throw NotSimplicialError(i, s,
                                   "generator " + std::to_string(i) + " maps " + complex.format(s) +
                                       " to " + complex.format(g.apply(s)) +
                                       ", which is not a simplex");
    };
    check(complex.edges());
    check(complex.triangles());
  }

  GroupAction action;
  action.complex_ = complex;
  action.group_ = PermGroup(complex.vertex_count(), std::move(generators), cap);
  action.simplicial_ = true;
  return action;
}

RotationCheck check_without_rotations(const GroupAction& action) {
  const auto& K = action.complex();
  for (const auto* block : {&K.edges(), &K.triangles()})
    for (const auto& s : *block)
      for (const auto& g : action.group().elements()) {
        if (g.apply(s) != s) continue;
        for (VertexId v : s)
          if (g(v) != v) return {false, RotationWitness{g, s}};
      }
  return {};
}

GroupAction validate_without_rotations(GroupAction action) {
  if (!action.validated_simplicial())
    throw Error(ErrorKind::PreconditionUnvalidated, "action not validated as simplicial");
  auto check = check_without_rotations(action);
  if (!check.without_rotations) {
    const auto& w = *check.witness;
    throw Error(ErrorKind::RotationFound, format_cycles(action.complex(), w.element) +
                                              " rotates simplex " +
                                              action.complex().format(w.simplex));
  }
  action.without_rotations_ = true;
  return action;
}

std::vector<VertexId> orbit_representatives(const GroupAction& action) {
  const std::size_t n = action.complex().vertex_count();
  std::vector<VertexId> rep(n);
  for (std::size_t i = 0; i < n; ++i) {
    VertexId best = vertex_at(i);
    for (const auto& g : action.group().elements()) best = std::min(best, g(vertex_at(i)));
    rep[i] = best;
  }
  return rep;
}

namespace {

Simplex image_under(const std::vector<VertexId>& rep, const Simplex& s, bool& degenerate) {
  std::vector<VertexId> image;
  for (VertexId v : s) image.push_back(rep[index_of(v)]);
  std::sort(image.begin(), image.end());
  degenerate = std::adjacent_find(image.begin(), image.end()) != image.end();
  if (degenerate) return s;
  return Simplex(std::span<const VertexId>(image));
}

}  // namespace

std::optional<OrbitCollision> find_orbit_collision(const GroupAction& action) {
  const auto rep = orbit_representatives(action);
  std::map<Simplex, Simplex> first_with_image;
  for (const auto* block : {&action.complex().edges(), &action.complex().triangles()})
    for (const auto& s : *block) {
      bool degenerate = false;
      Simplex image = image_under(rep, s, degenerate);
      if (degenerate) return OrbitCollision{s, s};
      auto [it, inserted] = first_with_image.emplace(image, s);
      if (inserted) continue;
      const Simplex& other = it->second;
      bool same_orbit = std::any_of(action.group().elements().begin(),
                                    action.group().elements().end(),
                                    [&](const Permutation& g) { return g.apply(other) == s; });
      if (!same_orbit) return OrbitCollision{other, s};
    }
  return std::nullopt;
}

GroupAction subdivide_action(const GroupAction& action) {
  const auto& K = action.complex();
  auto sd = barycentric_subdivision(K);
  std::vector<Permutation> generators;
  for (const auto& g : action.group().generators()) {
    std::vector<std::uint32_t> images(sd.complex.vertex_count());
    for (const auto& [s, b] : sd.barycenter) images[index_of(b)] = index_of(sd.barycenter.at(g.apply(s)));
    generators.push_back(Permutation::from_images(std::move(images)));
  }
  return validate_simplicial_action(sd.complex, std::move(generators),
                                    std::max(action.group().order(), kDefaultGroupCap));
}

Refinement refine_action(const GroupAction& action) {
  if (!action.validated_simplicial())
    throw Error(ErrorKind::PreconditionUnvalidated, "action not validated as simplicial");
  Refinement r{action, 0};
  for (;;) {
    if (check_without_rotations(r.action).without_rotations && !find_orbit_collision(r.action)) {
      r.action = validate_without_rotations(std::move(r.action));
      return r;
    }
    if (r.subdivisions == kMaxRefinements)
      throw Error(ErrorKind::RefinementFailed,
                  "action still fails the rotation/orbit conditions after " +
                      std::to_string(kMaxRefinements) + " subdivisions");
    r.action = subdivide_action(r.action);
    ++r.subdivisions;
  }
}

Simplex QuotientData::project(const Simplex& s) const {
  std::vector<VertexId> image;
  for (VertexId v : s) image.push_back(project(v));
  return Simplex(std::span<const VertexId>(image));
}

EdgePath QuotientData::project(const EdgePath& path) const {
  EdgePath out;
  out.vertices.reserve(path.vertices.size());
  for (VertexId v : path.vertices) out.vertices.push_back(project(v));
  return out;
}

QuotientData build_quotient(const GroupAction& action) {
  if (!action.validated_without_rotations())
    throw Error(ErrorKind::PreconditionUnvalidated, "action not validated without rotations");
  if (auto c = find_orbit_collision(action)) {
    const auto& K = action.complex();
    throw OrbitCollisionError(*c, "orbits of " + K.format(c->first) + " and " +
                                      K.format(c->second) +
                                      " project to the same simplex; subdivide first");
  }

  const auto& K = action.complex();
  const auto rep = orbit_representatives(action);

  std::vector<VertexId> reps(rep.begin(), rep.end());
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

  RawComplex raw;
  for (VertexId r : reps) raw.vertices.push_back(K.name(r));
  std::set<std::vector<std::string>> edges, triangles;
  for (const auto* block : {&K.edges(), &K.triangles()})
    for (const auto& s : *block) {
      std::vector<std::string> names;
      for (VertexId v : s) names.push_back(K.name(rep[index_of(v)]));
      std::sort(names.begin(), names.end());
      (s.size() == 2 ? edges : triangles).insert(names);
    }
  raw.edges.assign(edges.begin(), edges.end());
  raw.triangles.assign(triangles.begin(), triangles.end());

  QuotientData q;
  q.quotient = validate_complex(raw);
  q.projection.resize(K.vertex_count());
  for (std::size_t i = 0; i < K.vertex_count(); ++i)
    q.projection[i] = q.quotient.vertex(K.name(rep[i]));
  q.representative.resize(q.quotient.vertex_count());
  for (VertexId r : reps) q.representative[index_of(q.quotient.vertex(K.name(r)))] = r;
  for (const auto& s : K.simplices()) q.lift_index[q.project(s)].push_back(s);
  return q;
}

std::vector<Permutation> stabilizer(const GroupAction& action, VertexId v) {
  if (index_of(v) >= action.complex().vertex_count())
    throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(index_of(v)));
  std::vector<Permutation> out;
  for (const auto& g : action.group().elements())
    if (g(v) == v) out.push_back(g);
  return out;
}

std::vector<Permutation> stabilizer(const GroupAction& action, const Simplex& s) {
  std::vector<Permutation> out;
  for (const auto& g : action.group().elements())
    if (std::all_of(s.begin(), s.end(), [&](VertexId v) { return g(v) == v; })) out.push_back(g);
  return out;
}

std::optional<Permutation> transporter(std::span<const Permutation> subgroup, VertexId x,
                                       VertexId y) {
  for (const auto& h : subgroup)
    if (h(x) == y) return h;
  return std::nullopt;
}

}  // namespace stabpres
