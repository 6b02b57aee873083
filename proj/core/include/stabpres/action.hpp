#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "stabpres/complex.hpp"
#include "stabpres/permutation.hpp"

namespace stabpres {

inline constexpr std::size_t kDefaultGroupCap = 100000;

/// Finite permutation group stored by full enumeration.
class PermGroup {
 public:
  PermGroup() = default;
  /// Closes `generators` under composition. Throws GroupTooLarge past `cap`.
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::size_t cap = kDefaultGroupCap);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  /// All elements in canonical order; identity first.
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  bool contains(const Permutation& p) const;
  std::optional<std::size_t> index(const Permutation& p) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

class GroupAction {
 public:
  const SimplicialComplex& complex() const noexcept { return complex_; }
  const PermGroup& group() const noexcept { return group_; }
  bool validated_simplicial() const noexcept { return simplicial_; }
  bool validated_without_rotations() const noexcept { return without_rotations_; }

 private:
  friend GroupAction validate_simplicial_action(const SimplicialComplex&, std::vector<Permutation>,
                                                std::size_t);
  friend GroupAction validate_without_rotations(GroupAction);

  SimplicialComplex complex_;
  PermGroup group_;
  bool simplicial_ = false;
  bool without_rotations_ = false;
};

/// Thrown with the offending generator index and simplex.
class NotSimplicialError : public Error {
 public:
  NotSimplicialError(std::size_t generator, Simplex simplex, const std::string& message)
      : Error(ErrorKind::NotSimplicial, message), generator_(generator), simplex_(simplex) {}
  std::size_t generator() const noexcept { return generator_; }
  const Simplex& simplex() const noexcept { return simplex_; }

 private:
  std::size_t generator_;
  Simplex simplex_;
};

/// Checks every generator is a simplicial bijection of `complex` and
/// enumerates the group. Throws NotABijection, NotSimplicialError,
/// GroupTooLarge.
GroupAction validate_simplicial_action(const SimplicialComplex& complex,
                                       std::vector<Permutation> generators,
                                       std::size_t cap = kDefaultGroupCap);

struct RotationWitness {
  Permutation element;
  Simplex simplex;
};

struct RotationCheck {
  bool without_rotations = true;
  std::optional<RotationWitness> witness;
};

/// True iff every element that fixes a simplex setwise fixes it pointwise.
RotationCheck check_without_rotations(const GroupAction& action);

/// Returns `action` flagged as acting without rotations, or throws
/// RotationFound naming the witness.
GroupAction validate_without_rotations(GroupAction action);

/// Two simplices whose orbit images coincide (or one simplex whose vertices
/// share an orbit, in which case `first == second`).
struct OrbitCollision {
  Simplex first;
  Simplex second;
};

class OrbitCollisionError : public Error {
 public:
  OrbitCollisionError(OrbitCollision collision, const std::string& message)
      : Error(ErrorKind::OrbitCollision, message), collision_(collision) {}
  const OrbitCollision& collision() const noexcept { return collision_; }

 private:
  OrbitCollision collision_;
};

/// Least vertex of each vertex's orbit.
std::vector<VertexId> orbit_representatives(const GroupAction& action);

/// Empty iff the orbits of simplices form a simplicial complex in which
/// distinct orbits have distinct vertex-orbit sets.
std::optional<OrbitCollision> find_orbit_collision(const GroupAction& action);

/// The action induced on the barycentric subdivision.
GroupAction subdivide_action(const GroupAction& action);

struct Refinement {
  GroupAction action;
  int subdivisions = 0;
};

inline constexpr int kMaxRefinements = 2;

/// Subdivides until the action is without rotations and satisfies the orbit
/// condition, at most twice. Throws RefinementFailed.
Refinement refine_action(const GroupAction& action);

struct QuotientData {
  SimplicialComplex quotient;
  /// X vertex -> quotient vertex.
  std::vector<VertexId> projection;
  /// Quotient vertex -> least X vertex of the orbit.
  std::vector<VertexId> representative;
  /// Quotient simplex -> its preimage simplices in X, ascending.
  std::map<Simplex, std::vector<Simplex>> lift_index;

  VertexId project(VertexId v) const { return projection.at(index_of(v)); }
  Simplex project(const Simplex& s) const;
  EdgePath project(const EdgePath& path) const;
};

/// Throws PreconditionUnvalidated unless validated without rotations, and
/// OrbitCollisionError if the orbit condition fails.
QuotientData build_quotient(const GroupAction& action);

/// Elements fixing `v`, identity first. Throws UnknownVertex.
std::vector<Permutation> stabilizer(const GroupAction& action, VertexId v);

/// Pointwise stabilizer of a simplex.
std::vector<Permutation> stabilizer(const GroupAction& action, const Simplex& s);

/// First `h` in `subgroup` with h(x) == y.
std::optional<Permutation> transporter(std::span<const Permutation> subgroup, VertexId x,
                                       VertexId y);

}  // namespace stabpres
