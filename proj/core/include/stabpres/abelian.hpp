#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stabpres/action.hpp"
#include "stabpres/presentation.hpp"

namespace stabpres {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_diagonal() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
BigInt determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix S, U, V;  // U * M * V == S
  /// Nonzero diagonal entries of S, positive, each dividing the next.
  std::vector<BigInt> diagonal() const;
};

/// Smith normal form with unimodular transforms; the identity U M V = S is
/// checked before returning.
SmithForm smith_normal_form(const IntMatrix& m);

/// Z^rank + Z/d1 + ... with d1 | d2 | ..., each d >= 2.
struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;

  bool trivial() const noexcept { return rank == 0 && torsion.empty(); }
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// "0", "Z", "Z^2 + Z/2 + Z/6" (ASCII) or with U+2295 when `unicode`.
std::string format_invariants(const AbelianInvariants& a, bool unicode = true);

/// Echelon basis of the lattice spanned by the rows, at most cols() rows.
IntMatrix row_lattice_basis(const IntMatrix& m);

/// Cokernel of the relation matrix: rows are relations, columns generators.
AbelianInvariants invariants_from_relations(const IntMatrix& relations);

/// Integral simplicial homology in degree 1 or 2.
AbelianInvariants homology_invariants(const SimplicialComplex& complex, int k);

inline constexpr std::size_t kAbelianizationCap = 5000;

/// G/[G,G] from the commutator subgroup and element orders, without any
/// presentation. Throws GroupTooLarge above kAbelianizationCap elements.
AbelianInvariants group_abelianization(const PermGroup& group);

/// Abelianization of a finitely presented group via its exponent-sum matrix.
AbelianInvariants presentation_abelianization(const Presentation& presentation);

/// Canonical coordinates of a word's image in the abelianization of a
/// presentation; equal vectors mean equal images.
class AbelianImage {
 public:
  explicit AbelianImage(const Presentation& presentation);
  std::vector<BigInt> operator()(const Word& w) const;

 private:
  std::size_t generators_;
  IntMatrix basis_change_;     // V from the Smith form
  std::vector<BigInt> moduli_; // per coordinate; 0 means free
};

/// Colimit over the quotient 1-skeleton of the first homology of lifted
/// vertex stabilizers, edges identifying their stabilizers' images.
AbelianInvariants colimit_H1(const GroupAction& action, const QuotientData& quotient);

struct TwoConnectivity {
  enum class Verdict { Yes, No, Unknown };
  Verdict verdict = Verdict::Unknown;
  /// Set when coset enumeration finished.
  std::optional<std::size_t> pi1_order;
  std::optional<AbelianInvariants> h1;
  std::optional<AbelianInvariants> h2;
  std::string witness;
};

/// pi_1 trivial (by coset enumeration up to `max_cosets`) and H_2 = 0, which
/// by Hurewicz gives trivial pi_2. Throws Disconnected.
TwoConnectivity is_two_connected(const SimplicialComplex& complex,
                                 std::size_t max_cosets = kDefaultMaxCosets);

}  // namespace stabpres
