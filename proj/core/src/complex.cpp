#include "stabpres/complex.hpp"

#include <algorithm>
#include <sstream>

namespace stabpres {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFace: return "MissingFace";
    case ErrorKind::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::SimplexNotInComplex: return "SimplexNotInComplex";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::EmptyPath: return "EmptyPath";
    case ErrorKind::NotABijection: return "NotABijection";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::RotationFound: return "RotationFound";
    case ErrorKind::RefinementFailed: return "RefinementFailed";
    case ErrorKind::OrbitCollision: return "OrbitCollision";
    case ErrorKind::PreconditionUnvalidated: return "PreconditionUnvalidated";
    case ErrorKind::IllegalMove: return "IllegalMove";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::NotCollapsible: return "NotCollapsible";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::LiftFailed: return "LiftFailed";
    case ErrorKind::LetterInvariantViolated: return "LetterInvariantViolated";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::initializer_list<VertexId> vertices)
    : Simplex(std::span<const VertexId>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const VertexId> vertices) {
  if (vertices.empty()) throw Error(ErrorKind::DegenerateSimplex, "empty simplex");
  if (vertices.size() > 3)
    throw Error(ErrorKind::DimensionTooHigh, "simplices have at most 3 vertices");
  std::copy(vertices.begin(), vertices.end(), vertices_.begin());
  size_ = vertices.size();
  std::sort(vertices_.begin(), vertices_.begin() + size_);
  if (std::adjacent_find(vertices_.begin(), vertices_.begin() + size_) != vertices_.begin() + size_)
    throw Error(ErrorKind::DegenerateSimplex, "repeated vertex in simplex");
}

bool Simplex::contains(VertexId v) const noexcept {
  return std::find(begin(), end(), v) != end();
}

bool Simplex::is_face_of(const Simplex& other) const noexcept {
  return std::includes(other.begin(), other.end(), begin(), end());
}

std::vector<Simplex> Simplex::faces() const {
  std::vector<Simplex> out;
  for (unsigned mask = 1; mask < (1u << size_); ++mask) {
    std::vector<VertexId> vs;
    for (std::size_t i = 0; i < size_; ++i)
      if (mask & (1u << i)) vs.push_back(vertices_[i]);
    out.emplace_back(std::span<const VertexId>(vs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t i = 0; i < a.size_; ++i)
    if (auto c = a.vertices_[i] <=> b.vertices_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ------------------------------------------------------ validation errors

namespace {

std::string summarize(const std::vector<ComplexViolation>& violations) {
  std::ostringstream os;
  os << "invalid complex:";
  for (const auto& v : violations) os << ' ' << error_kind_name(v.kind) << '(' << v.detail << ')';
  return os.str();
}

ErrorKind first_kind(const std::vector<ComplexViolation>& violations) {
  return violations.empty() ? ErrorKind::Internal : violations.front().kind;
}

std::string join_names(const std::vector<std::string>& names, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

}  // namespace

ComplexValidationError::ComplexValidationError(std::vector<ComplexViolation> violations)
    : Error(first_kind(violations), summarize(violations)), violations_(std::move(violations)) {}

// ---------------------------------------------------- SimplicialComplex

const std::string& SimplicialComplex::name(VertexId v) const {
  if (index_of(v) >= names_.size())
    throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(index_of(v)));
  return names_[index_of(v)];
}

std::optional<VertexId> SimplicialComplex::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return vertex_at(static_cast<std::size_t>(it - names_.begin()));
}

VertexId SimplicialComplex::vertex(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + std::string(name) + "'");
}

std::vector<Simplex> SimplicialComplex::simplices() const {
  std::vector<Simplex> out;
  out.reserve(simplex_count());
  for (std::size_t i = 0; i < names_.size(); ++i) out.push_back(Simplex{vertex_at(i)});
  out.insert(out.end(), edges_.begin(), edges_.end());
  out.insert(out.end(), triangles_.begin(), triangles_.end());
  return out;
}

int SimplicialComplex::dimension() const noexcept {
  if (!triangles_.empty()) return 2;
  if (!edges_.empty()) return 1;
  return names_.empty() ? -1 : 0;
}

bool SimplicialComplex::has_edge(VertexId u, VertexId v) const {
  if (u == v) return false;
  return simplex_set_.count(Simplex{u, v}) > 0;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  if (s.size() == 1) return index_of(s[0]) < names_.size();
  return simplex_set_.count(s) > 0;
}

const std::vector<VertexId>& SimplicialComplex::neighbors(VertexId v) const {
  if (index_of(v) >= adjacency_.size())
    throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(index_of(v)));
  return adjacency_[index_of(v)];
}

std::vector<VertexId> SimplicialComplex::apexes(VertexId u, VertexId v) const {
  std::vector<VertexId> out;
  if (!has_edge(u, v)) return out;
  for (VertexId w : neighbors(u))
    if (w != v && simplex_set_.count(Simplex{u, v, w})) out.push_back(w);
  return out;
}

std::string SimplicialComplex::format(const Simplex& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += name(s[i]);
  }
  return out + "}";
}

RawComplex SimplicialComplex::to_raw() const {
  RawComplex raw;
  raw.vertices = names_;
  for (const auto& e : edges_) raw.edges.push_back({name(e[0]), name(e[1])});
  for (const auto& t : triangles_) raw.triangles.push_back({name(t[0]), name(t[1]), name(t[2])});
  return raw;
}

SimplicialComplex validate_complex(const RawComplex& raw) {
  std::vector<ComplexViolation> violations;

  std::vector<std::string> names = raw.vertices;
  std::sort(names.begin(), names.end());
  for (std::size_t i = 1; i < names.size(); ++i)
    if (names[i] == names[i - 1])
      violations.push_back({ErrorKind::DuplicateSimplex, "vertex " + names[i]});
  names.erase(std::unique(names.begin(), names.end()), names.end());

  SimplicialComplex out;
  out.names_ = names;

  // Returns nullopt (after recording a violation) for unusable input.
  auto canonical = [&](const std::vector<std::string>& raw_simplex,
                       std::size_t expected) -> std::optional<Simplex> {
    std::string label = "[" + join_names(raw_simplex, ",") + "]";
    if (raw_simplex.size() != expected) {
      violations.push_back({raw_simplex.size() > 3 ? ErrorKind::DimensionTooHigh
                                                   : ErrorKind::DegenerateSimplex,
                            label});
      return std::nullopt;
    }
    std::vector<std::string> sorted = raw_simplex;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      violations.push_back({ErrorKind::DegenerateSimplex, label});
      return std::nullopt;
    }
    std::vector<VertexId> ids;
    bool ok = true;
    for (const auto& n : sorted) {
      if (auto v = out.find(n)) {
        ids.push_back(*v);
      } else {
        violations.push_back({ErrorKind::MissingFace, n});
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return Simplex(std::span<const VertexId>(ids));
  };

  std::set<Simplex> edges;
  for (const auto& e : raw.edges) {
    auto s = canonical(e, 2);
    if (!s) continue;
    if (!edges.insert(*s).second)
      violations.push_back({ErrorKind::DuplicateSimplex, out.format(*s)});
  }
  std::set<Simplex> triangles;
  for (const auto& t : raw.triangles) {
    auto s = canonical(t, 3);
    if (!s) continue;
    if (!triangles.insert(*s).second) {
      violations.push_back({ErrorKind::DuplicateSimplex, out.format(*s)});
      continue;
    }
    for (const auto& f : s->faces())
      if (f.size() == 2 && !edges.count(f))
        violations.push_back({ErrorKind::MissingFace, out.format(f)});
  }

  if (!violations.empty()) throw ComplexValidationError(std::move(violations));

  out.edges_.assign(edges.begin(), edges.end());
  out.triangles_.assign(triangles.begin(), triangles.end());
  out.adjacency_.resize(names.size());
  for (const auto& e : out.edges_) {
    out.adjacency_[index_of(e[0])].push_back(e[1]);
    out.adjacency_[index_of(e[1])].push_back(e[0]);
  }
  for (auto& adj : out.adjacency_) std::sort(adj.begin(), adj.end());
  out.simplex_set_.insert(edges.begin(), edges.end());
  out.simplex_set_.insert(triangles.begin(), triangles.end());
  return out;
}

SimplicialComplex star(const SimplicialComplex& complex, const Simplex& s) {
  for (VertexId v : s)
    if (index_of(v) >= complex.vertex_count())
      throw Error(ErrorKind::SimplexNotInComplex, "simplex has unknown vertex");
  if (!complex.contains(s))
    throw Error(ErrorKind::SimplexNotInComplex, "simplex " + complex.format(s) + " not in complex");

  std::set<Simplex> members;
  for (const auto& t : complex.simplices())
    if (s.is_face_of(t))
      for (const auto& f : t.faces()) members.insert(f);

  RawComplex raw;
  for (const auto& m : members) {
    std::vector<std::string> names;
    for (VertexId v : m) names.push_back(complex.name(v));
    if (m.size() == 1) raw.vertices.push_back(names[0]);
    else if (m.size() == 2) raw.edges.push_back(names);
    else raw.triangles.push_back(names);
  }
  return validate_complex(raw);
}

std::string barycenter_name(const std::vector<std::string>& vertex_names) {
  if (vertex_names.size() == 1) return vertex_names.front();
  std::vector<std::string> sorted = vertex_names;
  std::sort(sorted.begin(), sorted.end());
  return "b(" + join_names(sorted, ",") + ")";
}

Subdivision barycentric_subdivision(const SimplicialComplex& complex) {
  const auto simplices = complex.simplices();
  std::map<Simplex, std::string> label;
  for (const auto& s : simplices) {
    std::vector<std::string> names;
    for (VertexId v : s) names.push_back(complex.name(v));
    label[s] = barycenter_name(names);
  }

  // Simplices of the subdivision are chains s0 < s1 (< s2) in the face poset.
  RawComplex raw;
  for (const auto& s : simplices) raw.vertices.push_back(label[s]);
  for (const auto& hi : simplices)
    for (const auto& lo : hi.faces())
      if (lo != hi) raw.edges.push_back({label[lo], label[hi]});
  for (const auto& t : complex.triangles())
    for (const auto& e : t.faces())
      if (e.size() == 2)
        for (VertexId v : e) raw.triangles.push_back({label[Simplex{v}], label[e], label[t]});

  Subdivision out{validate_complex(raw), {}};
  for (const auto& s : simplices) out.barycenter[s] = out.complex.vertex(label[s]);
  return out;
}

EdgePath EdgePath::reversed() const {
  EdgePath out = *this;
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

EdgePath validate_path(const SimplicialComplex& complex, std::span<const VertexId> vertices) {
  if (vertices.empty()) throw PathError(ErrorKind::EmptyPath, 0, "empty path");
  for (VertexId v : vertices)
    if (index_of(v) >= complex.vertex_count())
      throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(index_of(v)));
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    if (!complex.has_edge(vertices[i], vertices[i + 1]))
      throw PathError(ErrorKind::NotAnEdge, i,
                      "step " + std::to_string(i) + ": " + complex.name(vertices[i]) + "-" +
                          complex.name(vertices[i + 1]) + " is not an edge");
  return EdgePath{std::vector<VertexId>(vertices.begin(), vertices.end())};
}

EdgePath validate_path(const SimplicialComplex& complex, const std::vector<std::string>& names) {
  std::vector<VertexId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(complex.vertex(n));
  return validate_path(complex, ids);
}

std::string format_path(const SimplicialComplex& complex, const EdgePath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    if (i) out += "-";
    out += complex.name(path.vertices[i]);
  }
  return out;
}

}  // namespace stabpres
