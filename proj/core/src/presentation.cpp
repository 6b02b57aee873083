#include "stabpres/presentation.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace stabpres {

// ------------------------------------------------------------ free words

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

Word cyclically_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

Word canonical_relator(const Word& w) {
  Word r = cyclically_reduce(w);
  if (r.empty()) return r;
  Word best = r;
  for (const Word& base : {r, inverse(r)})
    for (std::size_t k = 0; k < base.size(); ++k) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
      best = std::min(best, rot);
    }
  return best;
}

std::string_view relator_tag_name(RelatorTag tag) {
  switch (tag) {
    case RelatorTag::MultTable: return "mult";
    case RelatorTag::Edge: return "edge";
    case RelatorTag::Conjugation: return "conj";
    case RelatorTag::Other: return "other";
  }
  return "other";
}

// --------------------------------------------------------- Presentation

Presentation::Presentation(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].symbol)
      symbol_index_.emplace(std::make_pair(generators_[i].symbol->vertex, generators_[i].symbol->element), i);
}

bool Presentation::add_relator(const Word& word, RelatorTag tag) {
  for (Letter l : word)
    if (l == 0 || generator_of(l) >= generators_.size())
      throw Error(ErrorKind::UnknownSymbol, "relator letter " + std::to_string(l) + " out of range");
  Word reduced = cyclically_reduce(word);
  if (reduced.empty()) return false;
  if (!canonical_.emplace(canonical_relator(reduced), relators_.size()).second) return false;
  relators_.push_back({std::move(reduced), tag});
  return true;
}

std::optional<std::size_t> Presentation::find(VertexId vertex, const Permutation& element) const {
  auto it = symbol_index_.find({vertex, element});
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

std::string Presentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generators_.at(generator_of(w[i])).name;
    if (w[i] < 0) out += "^-1";
  }
  return out;
}

std::string Presentation::format() const {
  std::string out = "⟨ ";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += generators_[i].name;
  }
  out += " | ";
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    if (i) out += ", ";
    out += format_word(relators_[i].word);
  }
  return out + " ⟩";
}

Presentation build_presentation(const GroupAction& action, const QuotientData& quotient) {
  if (!action.validated_without_rotations())
    throw Error(ErrorKind::PreconditionUnvalidated, "action not validated without rotations");
  if (quotient.projection.size() != action.complex().vertex_count())
    throw Error(ErrorKind::PreconditionUnvalidated, "quotient does not belong to this action");

  const auto& X = action.complex();
  const std::size_t n = X.vertex_count();

  std::vector<std::vector<Permutation>> stab(n);
  std::vector<Generator> generators;
  std::map<std::pair<std::uint32_t, Permutation>, std::size_t> index;
  for (std::size_t v = 0; v < n; ++v) {
    stab[v] = stabilizer(action, vertex_at(v));
    for (const auto& g : stab[v]) {
      if (g.is_identity()) continue;
      index.emplace(std::make_pair(static_cast<std::uint32_t>(v), g), generators.size());
      generators.push_back({format_cycles(X, g) + "@" + X.name(vertex_at(v)), GenSymbol{g, vertex_at(v)}});
    }
  }
  Presentation P(std::move(generators));

  // Letter for g_v, or nothing for the identity.
  auto sym = [&](const Permutation& g, VertexId v, bool inv, Word& w) {
    if (g.is_identity()) return;
    auto it = index.find({index_of(v), g});
    if (it == index.end())
      throw Error(ErrorKind::Internal, "element does not fix the vertex of its symbol");
    w.push_back(letter(it->second, inv));
  };

  for (std::size_t v = 0; v < n; ++v)
    for (const auto& g : stab[v])
      for (const auto& h : stab[v]) {
        if (g.is_identity() || h.is_identity()) continue;
        Word w;
        sym(g, vertex_at(v), false, w);
        sym(h, vertex_at(v), false, w);
        sym(g * h, vertex_at(v), true, w);
        P.add_relator(w, RelatorTag::MultTable);
      }

  for (const auto& e : X.edges())
    for (const auto& g : stabilizer(action, e)) {
      if (g.is_identity()) continue;
      Word w;
      sym(g, e[0], false, w);
      sym(g, e[1], true, w);
      P.add_relator(w, RelatorTag::Edge);
    }

  for (std::size_t v = 0; v < n; ++v)
    for (const auto& g : stab[v]) {
      if (g.is_identity()) continue;
      const Permutation g_inv = g.inverse();
      for (std::size_t u = 0; u < n; ++u)
        for (const auto& h : stab[u]) {
          if (h.is_identity()) continue;
          const Permutation conj = g * h * g_inv;
          const VertexId target = g(vertex_at(u));
          if (conj(target) != target)
            throw Error(ErrorKind::Internal, "conjugate does not fix the translated vertex");
          Word w;
          sym(g, vertex_at(v), false, w);
          sym(h, vertex_at(u), false, w);
          sym(g, vertex_at(v), true, w);
          sym(conj, target, true, w);
          P.add_relator(w, RelatorTag::Conjugation);
        }
    }
  return P;
}

// ------------------------------------------------------- coset enumeration

namespace {

constexpr std::uint32_t kUndefined = std::numeric_limits<std::uint32_t>::max();

std::size_t column(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

class Enumerator {
 public:
  Enumerator(const Presentation& P, std::size_t max_cosets)
      : cols_(2 * P.generator_count()), max_cosets_(max_cosets), conjugates_(cols_) {
    std::vector<std::set<Word>> by_column(cols_);
    for (const auto& r : P.relators())
      for (const Word& base : {r.word, inverse(r.word)})
        for (std::size_t k = 0; k < base.size(); ++k) {
          Word rot(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
          by_column[column(rot.front())].insert(std::move(rot));
        }
    for (std::size_t x = 0; x < cols_; ++x)
      for (const auto& w : by_column[x]) {
        std::vector<std::size_t> c;
        for (Letter l : w) c.push_back(column(l));
        conjugates_[x].push_back(std::move(c));
      }
  }

  /// False when the coset bound was hit.
  bool run() {
    allocate();
    std::size_t cursor = 0;
    for (;;) {
      process_deductions();
      auto next = next_undefined(cursor);
      if (!next) {
        cursor = 0;
        next = next_undefined(cursor);
      }
      if (!next) return true;
      if (!define(next->first, next->second)) return false;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t peak() const { return peak_; }

  /// Renumbers live cosets 0..n-1 in order.
  std::vector<std::uint32_t> compact(std::size_t& order) const {
    std::vector<std::uint32_t> number(rows_, kUndefined);
    order = 0;
    for (std::size_t c = 0; c < rows_; ++c)
      if (parent_[c] == c) number[c] = static_cast<std::uint32_t>(order++);
    std::vector<std::uint32_t> out(order * cols_);
    for (std::size_t c = 0; c < rows_; ++c) {
      if (parent_[c] != c) continue;
      for (std::size_t x = 0; x < cols_; ++x) out[number[c] * cols_ + x] = number[at(c, x)];
    }
    return out;
  }

 private:
  std::uint32_t& at(std::size_t c, std::size_t x) { return table_[c * cols_ + x]; }
  std::uint32_t at(std::size_t c, std::size_t x) const { return table_[c * cols_ + x]; }

  std::optional<std::pair<std::uint32_t, std::size_t>> next_undefined(std::size_t& cursor) const {
    for (; cursor < rows_; ++cursor) {
      if (parent_[cursor] != cursor) continue;
      for (std::size_t x = 0; x < cols_; ++x)
        if (at(cursor, x) == kUndefined) return std::make_pair(static_cast<std::uint32_t>(cursor), x);
    }
    return std::nullopt;
  }

  bool allocate() {
    if (rows_ >= max_cosets_) return false;
    table_.resize((rows_ + 1) * cols_, kUndefined);
    parent_.push_back(static_cast<std::uint32_t>(rows_));
    ++rows_;
    ++live_;
    peak_ = std::max(peak_, live_);
    return true;
  }

  bool define(std::uint32_t c, std::size_t x) {
    if (!allocate()) return false;
    auto d = static_cast<std::uint32_t>(rows_ - 1);
    at(c, x) = d;
    at(d, x ^ 1) = c;
    deductions_.push_back({c, x});
    return true;
  }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::uint32_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::uint32_t a, std::uint32_t b, std::deque<std::uint32_t>& dead) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    dead.push_back(b);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    std::deque<std::uint32_t> dead;
    merge(a, b, dead);
    while (!dead.empty()) {
      std::uint32_t e = dead.front();
      dead.pop_front();
      for (std::size_t x = 0; x < cols_; ++x) {
        std::uint32_t f = at(e, x);
        if (f == kUndefined) continue;
        at(e, x) = kUndefined;
        if (at(f, x ^ 1) == e) at(f, x ^ 1) = kUndefined;
        std::uint32_t e1 = rep(e), f1 = rep(f);
        if (at(e1, x) != kUndefined) {
          merge(f1, at(e1, x), dead);
        } else if (at(f1, x ^ 1) != kUndefined) {
          merge(e1, at(f1, x ^ 1), dead);
        } else {
          at(e1, x) = f1;
          at(f1, x ^ 1) = e1;
          deductions_.push_back({e1, x});
        }
      }
    }
  }

  void scan(std::uint32_t c, const std::vector<std::size_t>& w) {
    std::uint32_t f = c, b = c;
    std::size_t i = 0, j = w.size();  // unscanned letters are w[i..j)
    while (i < j && at(f, w[i]) != kUndefined) f = at(f, w[i++]);
    if (i == j) {
      if (f != c) coincidence(f, c);
      return;
    }
    while (j > i && at(b, w[j - 1] ^ 1) != kUndefined) b = at(b, w[--j] ^ 1);
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      at(f, w[i]) = b;
      at(b, w[i] ^ 1) = f;
      deductions_.push_back({f, w[i]});
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (parent_[c] != c || at(c, x) == kUndefined) continue;
      for (const auto& w : conjugates_[x]) {
        if (parent_[c] != c) break;
        scan(c, w);
      }
      if (parent_[c] != c || at(c, x) == kUndefined) continue;
      std::uint32_t d = at(c, x);
      for (const auto& w : conjugates_[x ^ 1]) {
        if (parent_[d] != d) break;
        scan(d, w);
      }
    }
  }

  std::size_t cols_;
  std::size_t max_cosets_;
  std::vector<std::vector<std::vector<std::size_t>>> conjugates_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> parent_;
  std::size_t rows_ = 0;
  std::size_t live_ = 0;
  std::size_t peak_ = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> deductions_;
};

}  // namespace

std::size_t CosetTable::act(std::size_t coset, Letter l) const {
  if (!complete()) throw Error(ErrorKind::PreconditionUnvalidated, "coset table is not complete");
  if (coset == 0 || coset > order_) throw Error(ErrorKind::Internal, "coset out of range");
  if (l == 0 || generator_of(l) >= generators_)
    throw Error(ErrorKind::UnknownSymbol, "letter " + std::to_string(l) + " out of range");
  return table_[(coset - 1) * 2 * generators_ + column(l)] + 1;
}

std::size_t CosetTable::trace(std::size_t coset, const Word& w) const {
  for (Letter l : w) coset = act(coset, l);
  return coset;
}

CosetTable todd_coxeter(const Presentation& presentation, std::size_t max_cosets) {
  CosetTable t;
  t.generators_ = presentation.generator_count();
  t.bound_ = max_cosets;
  Enumerator e(presentation, max_cosets);
  bool done = e.run();
  t.peak_ = e.peak();
  if (!done) {
    t.status_ = CosetTable::Status::Exhausted;
    t.order_ = max_cosets;
    return t;
  }
  t.table_ = e.compact(t.order_);
  t.status_ = CosetTable::Status::Complete;

  for (std::size_t c = 1; c <= t.order_; ++c)
    for (const auto& r : presentation.relators())
      if (t.trace(c, r.word) != c)
        throw Error(ErrorKind::Internal, "completed coset table violates a relator");
  return t;
}

// ------------------------------------------------------------ certificate

Permutation psi_of(const Presentation& presentation, const Word& w, std::size_t degree) {
  Permutation out = Permutation::identity(degree);
  for (Letter l : w) {
    const auto& gen = presentation.generators().at(generator_of(l));
    if (!gen.symbol) throw Error(ErrorKind::UnknownSymbol, "generator " + gen.name + " has no group element");
    out = out * (l < 0 ? gen.symbol->element.inverse() : gen.symbol->element);
  }
  return out;
}

TheoremCertificate verify_theorem(const GroupAction& action, const QuotientData& quotient,
                                  const Presentation& presentation, const CosetTable& table,
                                  VertexId basepoint, const ArmstrongOptions& options) {
  const std::size_t degree = action.complex().vertex_count();
  TheoremCertificate cert;
  cert.group_order = action.group().order();

  for (const auto& r : presentation.relators()) {
    if (!psi_of(presentation, r.word, degree).is_identity())
      throw CertificateFailedError(1, "relator " + presentation.format_word(r.word) +
                                          " does not map to the identity");
    ++cert.relators_checked;
  }

  if (!table.complete())
    throw CertificateFailedError(2, "coset enumeration exhausted at " +
                                        std::to_string(table.bound()) + " cosets");
  cert.presented_order = table.order();
  if (table.order() != cert.group_order)
    throw CertificateFailedError(2, "presented order " + std::to_string(table.order()) +
                                        " differs from |G| = " + std::to_string(cert.group_order));

  for (const auto& g : action.group().elements()) {
    StabilizerWord w = armstrong_express(action, quotient, basepoint, g, options);
    if (psi_evaluate(w, degree) != g)
      throw CertificateFailedError(3, "Armstrong word for " + format_cycles(action.complex(), g) +
                                          " evaluates to a different element");
    ++cert.elements_expressed;
  }
  return cert;
}

Word to_generator_word(const Presentation& presentation, const StabilizerWord& w) {
  Word out;
  for (const auto& l : w.letters) {
    if (l.element.is_identity()) continue;
    auto g = presentation.find(l.vertex, l.element);
    if (!g) throw Error(ErrorKind::UnknownSymbol, "letter is not a generator of the presentation");
    out.push_back(letter(*g));
  }
  return out;
}

std::size_t word_to_coset(const CosetTable& table, const Presentation& presentation,
                          const StabilizerWord& w) {
  return table.trace(1, to_generator_word(presentation, w));
}

// ------------------------------------------------------------------ pi_1

Presentation pi1_presentation(const SimplicialComplex& complex, VertexId basepoint) {
  const std::size_t n = complex.vertex_count();
  if (index_of(basepoint) >= n) throw Error(ErrorKind::UnknownVertex, "basepoint not in complex");

  std::set<Simplex> tree;
  std::vector<bool> seen(n, false);
  seen[index_of(basepoint)] = true;
  std::deque<VertexId> queue{basepoint};
  std::size_t reached = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : complex.neighbors(u))
      if (!seen[index_of(w)]) {
        seen[index_of(w)] = true;
        ++reached;
        tree.insert(Simplex{u, w});
        queue.push_back(w);
      }
  }
  if (reached != n) throw Error(ErrorKind::Disconnected, "complex is not connected");

  std::map<Simplex, std::size_t> edge_gen;
  std::vector<Simplex> off_tree;
  for (const auto& e : complex.edges())
    if (!tree.count(e)) {
      edge_gen[e] = off_tree.size();
      off_tree.push_back(e);
    }

  std::vector<Word> words;
  for (const auto& t : complex.triangles()) {
    Word w;
    for (auto [a, b] : {std::pair{t[0], t[1]}, std::pair{t[1], t[2]}, std::pair{t[2], t[0]}}) {
      auto it = edge_gen.find(Simplex{a, b});
      if (it != edge_gen.end()) w.push_back(letter(it->second, b < a));
    }
    words.push_back(cyclically_reduce(w));
  }

  std::vector<bool> killed(off_tree.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& w : words)
      if (w.size() == 1 && !killed[generator_of(w[0])]) {
        killed[generator_of(w[0])] = true;
        changed = true;
      }
    if (!changed) break;
    for (auto& w : words) {
      Word kept;
      for (Letter l : w)
        if (!killed[generator_of(l)]) kept.push_back(l);
      w = cyclically_reduce(kept);
    }
  }

  std::vector<Generator> generators;
  std::vector<std::size_t> renumber(off_tree.size());
  for (std::size_t i = 0; i < off_tree.size(); ++i) {
    if (killed[i]) continue;
    renumber[i] = generators.size();
    const auto& e = off_tree[i];
    generators.push_back({"e(" + complex.name(e[0]) + "," + complex.name(e[1]) + ")", std::nullopt});
  }
  Presentation P(std::move(generators));
  for (const auto& w : words) {
    Word r;
    for (Letter l : w) r.push_back(letter(renumber[generator_of(l)], l < 0));
    P.add_relator(r, RelatorTag::Other);
  }
  return P;
}

}  // namespace stabpres
