#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "stabpres/complex.hpp"

namespace stabpres {

/// Bijection on the vertex set of a complex.
///
/// Composition follows function composition: `(p * q)(x) == p(q(x))`, so a
/// product `h1 * h2 * g` applies `g` first. The canonical element order is
/// lexicographic on the image vector, which puts the identity first.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree);
  /// Throws NotABijection unless `images` is a permutation of 0..n-1.
  static Permutation from_images(std::vector<std::uint32_t> images);
  /// Disjoint cycles over vertex names; fixed points may be omitted. Throws
  /// UnknownVertex or NotABijection (for overlapping cycles).
  static Permutation from_cycles(const SimplicialComplex& complex,
                                 const std::vector<std::vector<std::string>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  VertexId operator()(VertexId v) const { return vertex_at(images_.at(index_of(v))); }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// The image of a simplex, re-sorted.
  Simplex apply(const Simplex& s) const;

  /// Nontrivial cycles, each rotated to start at its least vertex, sorted.
  std::vector<std::vector<VertexId>> cycles() const;

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {}
  std::vector<std::uint32_t> images_;
};

/// Cycle notation over vertex names, e.g. "(a b)(c d e)"; identity is "()".
std::string format_cycles(const SimplicialComplex& complex, const Permutation& p);

/// Splits cycle notation into cycles of vertex names. Names may themselves
/// contain balanced parentheses, e.g. "(b(a,b) c)". Throws MalformedInput.
std::vector<std::vector<std::string>> parse_cycle_notation(std::string_view text);

}  // namespace stabpres
