#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabpres/action.hpp"
#include "stabpres/armstrong.hpp"

namespace stabpres {

/// Letters of free-group words: generator i is +(i+1), its inverse -(i+1).
using Letter = std::int32_t;
using Word = std::vector<Letter>;

constexpr Letter letter(std::size_t generator, bool inverse = false) {
  auto l = static_cast<Letter>(generator + 1);
  return inverse ? -l : l;
}
constexpr std::size_t generator_of(Letter l) { return static_cast<std::size_t>((l < 0 ? -l : l) - 1); }

Word free_reduce(const Word& w);
/// Free reduction followed by cancelling inverse letters across the ends.
Word cyclically_reduce(const Word& w);
Word inverse(const Word& w);
/// Least rotation of the cyclic reduction of `w` or of its inverse; equal keys
/// mean the relators generate the same normal subgroup.
Word canonical_relator(const Word& w);

/// The generator g_v: element g of the vertex stabilizer G_v.
struct GenSymbol {
  Permutation element;
  VertexId vertex{};
};

struct Generator {
  std::string name;
  std::optional<GenSymbol> symbol;
};

enum class RelatorTag { MultTable, Edge, Conjugation, Other };

std::string_view relator_tag_name(RelatorTag tag);

struct Relator {
  Word word;
  RelatorTag tag = RelatorTag::Other;
};

class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(std::vector<Generator> generators);

  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<Relator>& relators() const noexcept { return relators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }

  /// Reduces `word` cyclically and keeps it unless it is empty or a
  /// duplicate. Returns whether it was kept. Throws UnknownSymbol for letters
  /// outside the generator range.
  bool add_relator(const Word& word, RelatorTag tag);

  /// Generator index of g_v, if present.
  std::optional<std::size_t> find(VertexId vertex, const Permutation& element) const;

  std::string format_word(const Word& w) const;
  /// "⟨ g1, g2 | r1, r2 ⟩"
  std::string format() const;

 private:
  std::vector<Generator> generators_;
  std::vector<Relator> relators_;
  std::map<Word, std::size_t> canonical_;
  std::map<std::pair<VertexId, Permutation>, std::size_t> symbol_index_;
};

/// Generators g_v for every vertex v and nonidentity g in G_v; relators are
/// the stabilizer multiplication tables, edge relations and conjugation
/// relations. Throws PreconditionUnvalidated.
Presentation build_presentation(const GroupAction& action, const QuotientData& quotient);

inline constexpr std::size_t kDefaultMaxCosets = 1'000'000;

/// Coset table of the trivial subgroup. Cosets are numbered from 1.
class CosetTable {
 public:
  enum class Status { Complete, Exhausted };

  Status status() const noexcept { return status_; }
  bool complete() const noexcept { return status_ == Status::Complete; }
  /// Number of cosets when complete; the bound that was hit otherwise.
  std::size_t order() const noexcept { return order_; }
  std::size_t bound() const noexcept { return bound_; }
  std::size_t generator_count() const noexcept { return generators_; }
  /// Largest number of coset rows live at once during the run.
  std::size_t peak_cosets() const noexcept { return peak_; }

  /// Coset reached from `coset` by `l`. Requires a complete table.
  std::size_t act(std::size_t coset, Letter l) const;
  std::size_t trace(std::size_t coset, const Word& w) const;

 private:
  friend CosetTable todd_coxeter(const Presentation&, std::size_t);

  Status status_ = Status::Exhausted;
  std::size_t order_ = 0;
  std::size_t bound_ = 0;
  std::size_t generators_ = 0;
  std::size_t peak_ = 0;
  std::vector<std::uint32_t> table_;  // order_ rows of 2 * generators_ columns
};

/// Felsch-style enumeration of the cosets of the trivial subgroup: always
/// defines the lowest undefined entry, scans every relator conjugate through
/// each new entry and merges coincidences. Returns Exhausted once more than
/// `max_cosets` coset rows have been allocated.
CosetTable todd_coxeter(const Presentation& presentation,
                        std::size_t max_cosets = kDefaultMaxCosets);

/// Image in G of a word in the stabilizer generators.
Permutation psi_of(const Presentation& presentation, const Word& w, std::size_t degree);

struct TheoremCertificate {
  std::size_t relators_checked = 0;
  std::size_t presented_order = 0;
  std::size_t group_order = 0;
  std::size_t elements_expressed = 0;
};

class CertificateFailedError : public Error {
 public:
  CertificateFailedError(int check, const std::string& witness)
      : Error(ErrorKind::CertificateFailed,
              "certificate check (" + std::to_string(check) + ") failed: " + witness),
        check_(check) {}
  /// 1: a relator is not in ker psi; 2: presented order differs from |G| or
  /// the table is incomplete; 3: psi is not onto.
  int check() const noexcept { return check_; }

 private:
  int check_;
};

/// Certifies Gamma = G: every relator lies in ker psi, the enumerated order
/// equals |G|, and every g is psi of its Armstrong word.
TheoremCertificate verify_theorem(const GroupAction& action, const QuotientData& quotient,
                                  const Presentation& presentation, const CosetTable& table,
                                  VertexId basepoint, const ArmstrongOptions& options = {});

/// Word in the presentation's generators spelling a stabilizer word; identity
/// letters are skipped. Throws UnknownSymbol.
Word to_generator_word(const Presentation& presentation, const StabilizerWord& w);

/// Coset reached from coset 1 along `w`.
std::size_t word_to_coset(const CosetTable& table, const Presentation& presentation,
                          const StabilizerWord& w);

/// Edge-path presentation of pi_1(K, basepoint): generators are the edges off
/// a breadth-first spanning tree, relators the triangle boundaries. A
/// relator that is a single letter kills its generator, which is then
/// dropped. Throws Disconnected.
Presentation pi1_presentation(const SimplicialComplex& complex, VertexId basepoint);

}  // namespace stabpres
