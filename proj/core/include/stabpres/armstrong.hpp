#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "stabpres/action.hpp"
#include "stabpres/homotopy.hpp"

namespace stabpres {

/// The element `element` of the vertex stabilizer G_vertex, viewed as a
/// letter of the free product of vertex stabilizers.
struct StabilizerLetter {
  Permutation element;
  VertexId vertex{};

  friend bool operator==(const StabilizerLetter&, const StabilizerLetter&) = default;
};

struct StabilizerWord {
  std::vector<StabilizerLetter> letters;

  /// Drops identity letters.
  StabilizerWord normalized() const;
  friend bool operator==(const StabilizerWord&, const StabilizerWord&) = default;
};

StabilizerWord operator*(const StabilizerWord& lhs, const StabilizerWord& rhs);

/// "(a b)@m (c d)@v"; the empty word prints as "1".
std::string format_word(const SimplicialComplex& complex, const StabilizerWord& word);

/// Ordered product of the letters' elements. Throws LetterInvariantViolated
/// if a letter's element moves its vertex.
Permutation psi_evaluate(const StabilizerWord& word, std::size_t degree);

/// Breadth-first shortest path. Ties go to the least neighbor unless `seed`
/// is nonzero, in which case neighbor order is shuffled. Throws Disconnected.
EdgePath find_path(const SimplicialComplex& complex, VertexId from, VertexId to,
                   std::uint64_t seed = 0);

/// One lifted move: the swing element and the pivot it fixes (identity at the
/// basepoint for triangle moves), plus the chosen lift of a triangle apex.
struct LiftStep {
  Move move;
  VertexId pivot{};
  Permutation swing;
  std::optional<VertexId> lifted_apex;
};

/// A quotient contraction decorated with its lift to X.
struct LiftedMoveLog {
  MoveLog base;
  VertexId basepoint{};
  /// lifted_paths[k] lies over the k-th loop of the base log.
  std::vector<EdgePath> lifted_paths;
  std::vector<LiftStep> steps;
};

/// Chooses among equally valid lifts. Default (seed 0) takes the first
/// candidate in canonical order.
class LiftChooser {
 public:
  explicit LiftChooser(std::uint64_t seed = 0) : seed_(seed), rng_(seed) {}
  std::size_t pick(std::size_t candidates);

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Lifts `move` (legal on the current base loop) onto the last lifted path.
/// Triangle moves choose a lift of the apex spanning a triangle with the
/// lifted edge; backtracks swing the suffix around the pivot by a stabilizer
/// element taking the far endpoint back to the near one. Throws LiftFailed.
void lift_and_swing(const GroupAction& action, const QuotientData& quotient, LiftedMoveLog& state,
                    const Move& move, LiftChooser& chooser);

struct ArmstrongOptions {
  /// Drives path, contraction and lift choices; 0 is fully canonical.
  std::uint64_t seed = 0;
  ContractOptions contraction{};
};

struct ArmstrongTrace {
  Permutation element;
  EdgePath path;
  LiftedMoveLog lifted;
  /// (h_{n-1} ... h_1 g)^{-1}, which fixes the basepoint.
  Permutation closing;
  StabilizerWord word;
};

/// Runs the full construction for `g` and keeps every intermediate.
ArmstrongTrace armstrong_trace(const GroupAction& action, const QuotientData& quotient,
                               VertexId basepoint, const Permutation& g,
                               const ArmstrongOptions& options = {});

/// Stabilizer product (h_1)^{-1}_{v_1} ... (h_n)^{-1}_{v_n} whose psi-image
/// is `g`; identity letters dropped.
StabilizerWord armstrong_express(const GroupAction& action, const QuotientData& quotient,
                                 VertexId basepoint, const Permutation& g,
                                 const ArmstrongOptions& options = {});

}  // namespace stabpres
