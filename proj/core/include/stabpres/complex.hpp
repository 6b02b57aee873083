#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabpres/error.hpp"

namespace stabpres {

/// Vertex handle: index into the owning complex's sorted name table, so the
/// integer order is the canonical (name) order.
enum class VertexId : std::uint32_t {};

constexpr std::uint32_t index_of(VertexId v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr VertexId vertex_at(std::size_t i) noexcept { return VertexId{static_cast<std::uint32_t>(i)}; }

/// Sorted, duplicate-free set of 1 to 3 vertices.
class Simplex {
 public:
  Simplex() = default;
  /// Sorts its input. Throws DegenerateSimplex on repeats, DimensionTooHigh
  /// above three vertices.
  Simplex(std::initializer_list<VertexId> vertices);
  explicit Simplex(std::span<const VertexId> vertices);

  std::size_t size() const noexcept { return size_; }
  int dimension() const noexcept { return static_cast<int>(size_) - 1; }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }
  const VertexId* begin() const noexcept { return vertices_.data(); }
  const VertexId* end() const noexcept { return vertices_.data() + size_; }
  bool contains(VertexId v) const noexcept;
  bool is_face_of(const Simplex& other) const noexcept;

  /// All nonempty faces, including the simplex itself.
  std::vector<Simplex> faces() const;

  friend bool operator==(const Simplex& a, const Simplex& b) noexcept {
    return a.size_ == b.size_ && a.vertices_ == b.vertices_;
  }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept;

 private:
  std::array<VertexId, 3> vertices_{};
  std::size_t size_ = 0;
};

/// Vertex/edge/triangle lists as they appear in input files, before any
/// validation.
struct RawComplex {
  std::vector<std::string> vertices;
  std::vector<std::vector<std::string>> edges;
  std::vector<std::vector<std::string>> triangles;
};

struct ComplexViolation {
  ErrorKind kind;
  std::string detail;
};

/// Thrown by validate_complex with every violation found, not just the first.
class ComplexValidationError : public Error {
 public:
  explicit ComplexValidationError(std::vector<ComplexViolation> violations);
  const std::vector<ComplexViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<ComplexViolation> violations_;
};

/// Finite simplicial complex of dimension at most two. Immutable once built.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  std::size_t vertex_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(VertexId v) const;
  std::optional<VertexId> find(std::string_view name) const;
  /// Like find, throws UnknownVertex.
  VertexId vertex(std::string_view name) const;

  const std::vector<Simplex>& edges() const noexcept { return edges_; }
  const std::vector<Simplex>& triangles() const noexcept { return triangles_; }
  /// Vertices, then edges, then triangles, each block in canonical order.
  std::vector<Simplex> simplices() const;
  std::size_t simplex_count() const noexcept {
    return names_.size() + edges_.size() + triangles_.size();
  }
  int dimension() const noexcept;

  bool has_edge(VertexId u, VertexId v) const;
  bool contains(const Simplex& s) const;
  const std::vector<VertexId>& neighbors(VertexId v) const;
  /// Vertices w with {u, v, w} a triangle, ascending.
  std::vector<VertexId> apexes(VertexId u, VertexId v) const;

  std::string format(const Simplex& s) const;
  RawComplex to_raw() const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  friend SimplicialComplex validate_complex(const RawComplex& raw);

  std::vector<std::string> names_;
  std::vector<Simplex> edges_;
  std::vector<Simplex> triangles_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::set<Simplex> simplex_set_;
};

/// Canonicalizes and face-checks `raw`. Throws ComplexValidationError listing
/// MissingFace, DuplicateSimplex, DegenerateSimplex, DimensionTooHigh and
/// UnknownVertex violations.
SimplicialComplex validate_complex(const RawComplex& raw);

/// Subcomplex of all faces of simplices containing `s`.
SimplicialComplex star(const SimplicialComplex& complex, const Simplex& s);

struct Subdivision {
  SimplicialComplex complex;
  /// Every simplex of the input to its barycenter in `complex`.
  std::map<Simplex, VertexId> barycenter;
};

/// Name given to the barycenter of a simplex with the given vertex names.
/// Vertices keep their names; higher simplices become "b(u,v)" / "b(u,v,w)".
std::string barycenter_name(const std::vector<std::string>& vertex_names);

Subdivision barycentric_subdivision(const SimplicialComplex& complex);

/// Vertex sequence along edges of a complex. A loop has front() == back().
struct EdgePath {
  std::vector<VertexId> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  bool is_loop() const noexcept { return !vertices.empty() && vertices.front() == vertices.back(); }
  VertexId front() const { return vertices.front(); }
  VertexId back() const { return vertices.back(); }
  EdgePath reversed() const;

  friend bool operator==(const EdgePath&, const EdgePath&) = default;
  friend auto operator<=>(const EdgePath&, const EdgePath&) = default;
};

/// Thrown by validate_path; `step()` is the index of the first bad step.
class PathError : public Error {
 public:
  PathError(ErrorKind kind, std::size_t step, const std::string& message)
      : Error(kind, message), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

EdgePath validate_path(const SimplicialComplex& complex, std::span<const VertexId> vertices);
EdgePath validate_path(const SimplicialComplex& complex, const std::vector<std::string>& names);

std::string format_path(const SimplicialComplex& complex, const EdgePath& path);

}  // namespace stabpres
