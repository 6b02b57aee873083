#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stabpres/complex.hpp"

namespace stabpres {

/// One step of a simplicial null-homotopy of a loop.
///
/// TriangleInsert at i replaces loop[i]-loop[i+1] by loop[i]-apex-loop[i+1]
/// across the triangle {loop[i], loop[i+1], apex}: the boundary trace of a
/// two-dimensional collapse. BacktrackDelete at i replaces
/// loop[i]-loop[i+1]-loop[i] by loop[i]: a one-dimensional collapse.
struct Move {
  enum class Kind { TriangleInsert, BacktrackDelete };

  Kind kind = Kind::BacktrackDelete;
  std::size_t position = 0;
  VertexId apex{};  // TriangleInsert only

  static Move triangle(std::size_t position, VertexId apex) {
    return {Kind::TriangleInsert, position, apex};
  }
  static Move backtrack(std::size_t position) { return {Kind::BacktrackDelete, position, {}}; }

  friend bool operator==(const Move&, const Move&) = default;
};

struct MoveLog {
  EdgePath initial;
  std::vector<Move> moves;

  std::size_t triangle_count() const;
  std::size_t backtrack_count() const;
};

/// Throws IllegalMove if `move` is not legal on `loop`.
EdgePath apply_move(const SimplicialComplex& complex, const EdgePath& loop, const Move& move);

/// Every intermediate loop, initial first. Throws IllegalMove.
std::vector<EdgePath> replay(const SimplicialComplex& complex, const MoveLog& log);

/// True iff the log replays legally and ends at the constant loop.
bool is_complete(const SimplicialComplex& complex, const MoveLog& log);

struct ContractOptions {
  /// Deepest move count tried by the exact search.
  std::size_t max_moves = 64;
  /// Search nodes expanded across both search phases.
  std::size_t max_nodes = 2'000'000;
  /// Longest intermediate loop; 0 means 3 * initial length + 8.
  std::size_t length_cap = 0;
  /// Nonzero seeds shuffle the move order within each move kind.
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kExactSearchNodes = 5'000;

/// Finds a complete MoveLog taking `loop` to the constant loop, verified by
/// replay. An iterative-deepening search (at most kExactSearchNodes nodes)
/// returns a shortest log; if it gives up, a depth-first descent sweeping
/// the loop across vertex stars takes over, and its logs may be longer than
/// `max_moves`. Throws BudgetExhausted when both fail, which always happens
/// for loops that are not null-homotopic.
MoveLog contract_loop(const SimplicialComplex& complex, const EdgePath& loop,
                      const ContractOptions& options = {});

/// A triangulated disc after some collapses, with its tracked boundary loop.
/// The basepoint is `boundary.front()`.
struct DegenerateDisc {
  SimplicialComplex complex;
  EdgePath boundary;
};

struct Collapse {
  enum class Kind { OneDimensional, TwoDimensional };

  Kind kind = Kind::OneDimensional;
  std::size_t position = 0;
  VertexId x1{}, x2{};
  VertexId y{};  // TwoDimensional only
  /// Simplices deleted from the disc by this step.
  std::vector<Simplex> removed;
  /// Simplices left in the disc afterwards.
  std::size_t remaining = 0;
};

/// Collapses a degenerate disc to its basepoint. Two-dimensional collapses
/// run until no boundary edge bounds a triangle, then one-dimensional ones
/// strip the remaining tree. Throws NotCollapsible, which valid input never
/// triggers.
std::vector<Collapse> collapse_disc(const DegenerateDisc& disc);

/// The boundary-loop shadow of a collapse sequence.
MoveLog to_move_log(const DegenerateDisc& disc, const std::vector<Collapse>& collapses);

inline constexpr std::size_t kMaxDiscBoundary = 64;

/// Triangulated n-gon on vertices p0..p{n-1} with boundary p0-p1-...-p0, by
/// seeded recursive ear splitting. Throws BadSize outside [3, kMaxDiscBoundary].
DegenerateDisc random_nondegenerate_disc(std::size_t n, std::uint64_t seed);

}  // namespace stabpres
