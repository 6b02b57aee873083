#include "stabpres/abelian.hpp"

#include <algorithm>
#include <set>

namespace stabpres {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::Internal, "matrix dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += x * b(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()) && S(i, i) != 0; ++i)
    out.push_back(S(i, i));
  return out;
}

namespace {

struct SmithWork {
  IntMatrix A, U, V;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < A.cols(); ++c) std::swap(A(i, c), A(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < A.rows(); ++r) std::swap(A(r, i), A(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t c = 0; c < A.cols(); ++c)
      if (A(j, c) != 0) A(i, c) += q * A(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c)
      if (U(j, c) != 0) U(i, c) += q * U(j, c);
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t r = 0; r < A.rows(); ++r)
      if (A(r, j) != 0) A(r, i) += q * A(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r)
      if (V(r, j) != 0) V(r, i) += q * V(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) = -A(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
  }

  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool place_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t r = t; r < A.rows(); ++r)
      for (std::size_t c = t; c < A.cols(); ++c)
        if (A(r, c) != 0 && (!best || abs(A(r, c)) < abs(A(best->first, best->second))))
          best = {r, c};
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Clears row t and column t outside the pivot; returns false if a smaller
  // remainder had to be swapped in and the caller should retry.
  bool clear_cross(std::size_t t) {
    for (std::size_t r = t + 1; r < A.rows(); ++r) {
      if (A(r, t) == 0) continue;
      BigInt q = A(r, t) / A(t, t);
      add_row(r, t, -q);
      if (A(r, t) != 0) {
        swap_rows(t, r);
        return false;
      }
    }
    for (std::size_t c = t + 1; c < A.cols(); ++c) {
      if (A(t, c) == 0) continue;
      BigInt q = A(t, c) / A(t, t);
      add_col(c, t, -q);
      if (A(t, c) != 0) {
        swap_cols(t, c);
        return false;
      }
    }
    return true;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    if (!w.place_pivot(t)) break;
    for (;;) {
      while (!w.clear_cross(t)) {
      }
      // Divisibility: fold in any row whose entries the pivot does not divide.
      std::optional<std::size_t> bad;
      for (std::size_t r = t + 1; r < w.A.rows() && !bad; ++r)
        for (std::size_t c = t + 1; c < w.A.cols(); ++c)
          if (w.A(r, c) % w.A(t, t) != 0) {
            bad = r;
            break;
          }
      if (!bad) break;
      w.add_row(t, *bad, 1);
    }
    if (w.A(t, t) < 0) w.negate_row(t);
  }

  SmithForm out{std::move(w.A), std::move(w.U), std::move(w.V)};
  if (!out.S.is_diagonal() || out.U * m * out.V != out.S)
    throw Error(ErrorKind::Internal, "Smith form identity U*M*V = S failed");
  if (abs(determinant(out.U)) != 1 || abs(determinant(out.V)) != 1)
    throw Error(ErrorKind::Internal, "Smith form transform is not unimodular");
  const auto d = out.diagonal();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i] <= 0 || d[i + 1] % d[i] != 0)
      throw Error(ErrorKind::Internal, "Smith form divisibility chain broken");
  return out;
}

std::string format_invariants(const AbelianInvariants& a, bool unicode) {
  if (a.trivial()) return "0";
  const std::string sum = unicode ? " ⊕ " : " + ";
  std::string out;
  if (a.rank == 1) out = "Z";
  else if (a.rank > 1) out = "Z^" + std::to_string(a.rank);
  for (const auto& d : a.torsion) {
    if (!out.empty()) out += sum;
    out += "Z/" + d.str();
  }
  return out;
}

IntMatrix row_lattice_basis(const IntMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<std::optional<std::vector<BigInt>>> pivot_row(n);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<BigInt> row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = m(r, c);
    for (std::size_t c = 0; c < n; ++c) {
      if (row[c] == 0) continue;
      if (!pivot_row[c]) {
        if (row[c] < 0)
          for (auto& x : row) x = -x;
        pivot_row[c] = std::move(row);
        break;
      }
      auto& b = *pivot_row[c];
      if (row[c] % b[c] == 0) {
        const BigInt q = row[c] / b[c];
        for (std::size_t j = c; j < n; ++j) row[j] -= q * b[j];
        continue;
      }
      // Replace (b, row) by (s b + t row, (row_c/g) b - (b_c/g) row): a
      // unimodular change that leaves gcd(b_c, row_c) at the pivot.
      BigInt s, t;
      const BigInt g = [&] {
        BigInt a = b[c], bb = row[c], x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (bb != 0) {
          BigInt q = a / bb;
          a -= q * bb;
          x0 -= q * x1;
          y0 -= q * y1;
          std::swap(a, bb);
          std::swap(x0, x1);
          std::swap(y0, y1);
        }
        s = x0, t = y0;
        return a;
      }();
      const BigInt u = row[c] / g, v = b[c] / g;
      for (std::size_t j = c; j < n; ++j) {
        BigInt nb = s * b[j] + t * row[j];
        row[j] = u * b[j] - v * row[j];
        b[j] = std::move(nb);
      }
      if (b[c] < 0)
        for (auto& x : b) x = -x;
    }
  }
  std::size_t rank = 0;
  for (const auto& p : pivot_row) rank += p.has_value();
  IntMatrix out(rank, n);
  std::size_t r = 0;
  for (const auto& p : pivot_row)
    if (p) {
      for (std::size_t c = 0; c < n; ++c) out(r, c) = (*p)[c];
      ++r;
    }
  return out;
}

AbelianInvariants invariants_from_relations(const IntMatrix& relations) {
  const auto d = smith_normal_form(row_lattice_basis(relations)).diagonal();
  AbelianInvariants out;
  out.rank = relations.cols() - d.size();
  for (const auto& x : d)
    if (x != 1) out.torsion.push_back(x);
  return out;
}

namespace {

// Rows: k-simplices; columns: (k-1)-simplices. Row-vector convention, so the
// image of the boundary is the row space.
IntMatrix boundary(const SimplicialComplex& K, int k) {
  if (k == 1) {
    IntMatrix m(K.edges().size(), K.vertex_count());
    for (std::size_t r = 0; r < K.edges().size(); ++r) {
      const auto& e = K.edges()[r];
      m(r, index_of(e[0])) -= 1;
      m(r, index_of(e[1])) += 1;
    }
    return m;
  }
  const auto& edges = K.edges();
  IntMatrix m(K.triangles().size(), edges.size());
  auto col = [&](VertexId a, VertexId b) {
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), Simplex{a, b}) -
                                    edges.begin());
  };
  for (std::size_t r = 0; r < K.triangles().size(); ++r) {
    const auto& t = K.triangles()[r];
    m(r, col(t[1], t[2])) += 1;
    m(r, col(t[0], t[2])) -= 1;
    m(r, col(t[0], t[1])) += 1;
  }
  return m;
}

}  // namespace

AbelianInvariants homology_invariants(const SimplicialComplex& complex, int k) {
  if (k != 1 && k != 2) throw Error(ErrorKind::MalformedInput, "homology degree must be 1 or 2");
  auto diagonal = [&](int d) {
    return smith_normal_form(row_lattice_basis(boundary(complex, d))).diagonal();
  };
  const std::size_t rank1 = diagonal(1).size();
  const auto d2 = diagonal(2);
  AbelianInvariants out;
  if (k == 2) {
    out.rank = complex.triangles().size() - d2.size();
    return out;
  }
  out.rank = complex.edges().size() - rank1 - d2.size();
  for (const auto& x : d2)
    if (x != 1) out.torsion.push_back(x);
  return out;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Permutation power(const Permutation& x, std::uint64_t e) {
  Permutation out = Permutation::identity(x.degree()), base = x;
  for (; e; e >>= 1, base = base * base)
    if (e & 1) out = out * base;
  return out;
}

}  // namespace

AbelianInvariants group_abelianization(const PermGroup& group) {
  if (group.order() > kAbelianizationCap)
    throw Error(ErrorKind::GroupTooLarge, "abelianization limited to groups of order " +
                                              std::to_string(kAbelianizationCap));
  const auto& G = group.elements();
  std::set<Permutation> commutators;
  for (const auto& a : G)
    for (const auto& b : G) commutators.insert(a.inverse() * b.inverse() * a * b);

  // Commutator subgroup by closure from the identity.
  std::vector<char> in_d(G.size(), 0);
  std::vector<Permutation> queue{G.front()};
  in_d[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& c : commutators) {
      Permutation x = queue[i] * c;
      std::size_t j = *group.index(x);
      if (!in_d[j]) {
        in_d[j] = 1;
        queue.push_back(std::move(x));
      }
    }
  const std::uint64_t d_order = queue.size();
  const std::uint64_t m = G.size() / d_order;

  // For each prime p, the count of cosets killed by p^k gives the number of
  // cyclic p-factors of order at least p^k.
  std::vector<std::vector<std::uint64_t>> factors_by_prime;  // prime powers, descending
  for (std::uint64_t p : prime_factors(m)) {
    std::vector<std::uint64_t> at_least;  // at_least[k-1] = #factors of order >= p^k
    std::uint64_t prev_log = 0, pk = 1;
    for (;;) {
      pk *= p;
      std::uint64_t killed = 0;
      for (const auto& x : G)
        if (in_d[*group.index(power(x, pk))]) ++killed;
      std::uint64_t cosets = killed / d_order, log = 0;
      while (cosets > 1) cosets /= p, ++log;
      if (log == prev_log) break;
      at_least.push_back(log - prev_log);
      prev_log = log;
    }
    std::vector<std::uint64_t> powers;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      std::uint64_t exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      std::uint64_t q = 1;
      for (std::size_t i = 0; i <= k; ++i) q *= p;
      powers.insert(powers.end(), exact, q);
    }
    std::sort(powers.rbegin(), powers.rend());
    factors_by_prime.push_back(std::move(powers));
  }

  std::size_t count = 0;
  for (const auto& f : factors_by_prime) count = std::max(count, f.size());
  AbelianInvariants out;
  for (std::size_t i = 0; i < count; ++i) {
    BigInt d = 1;
    for (const auto& f : factors_by_prime)
      if (i < f.size()) d *= f[i];
    out.torsion.push_back(d);
  }
  std::reverse(out.torsion.begin(), out.torsion.end());
  return out;
}

namespace {

IntMatrix exponent_sums(const Presentation& P) {
  IntMatrix m(P.relators().size(), P.generator_count());
  for (std::size_t r = 0; r < P.relators().size(); ++r)
    for (Letter l : P.relators()[r].word) m(r, generator_of(l)) += l > 0 ? 1 : -1;
  return m;
}

}  // namespace

AbelianInvariants presentation_abelianization(const Presentation& presentation) {
  return invariants_from_relations(exponent_sums(presentation));
}

AbelianImage::AbelianImage(const Presentation& presentation)
    : generators_(presentation.generator_count()) {
  SmithForm f = smith_normal_form(row_lattice_basis(exponent_sums(presentation)));
  basis_change_ = std::move(f.V);
  moduli_.assign(generators_, 0);
  for (std::size_t i = 0; i < std::min(f.S.rows(), f.S.cols()); ++i) moduli_[i] = f.S(i, i);
}

std::vector<BigInt> AbelianImage::operator()(const Word& w) const {
  std::vector<BigInt> x(generators_);
  for (Letter l : w) {
    if (generator_of(l) >= generators_) throw Error(ErrorKind::UnknownSymbol, "letter out of range");
    x[generator_of(l)] += l > 0 ? 1 : -1;
  }
  std::vector<BigInt> y(generators_);
  for (std::size_t j = 0; j < generators_; ++j) {
    for (std::size_t i = 0; i < generators_; ++i)
      if (x[i] != 0) y[j] += x[i] * basis_change_(i, j);
    if (moduli_[j] != 0) {
      y[j] %= moduli_[j];
      if (y[j] < 0) y[j] += moduli_[j];
    }
  }
  return y;
}

AbelianInvariants colimit_H1(const GroupAction& action, const QuotientData& quotient) {
  if (!action.validated_without_rotations())
    throw Error(ErrorKind::PreconditionUnvalidated, "action not validated without rotations");
  const auto& Y = quotient.quotient;
  const auto& G = action.group().elements();

  // One column per nonidentity element of each representative's stabilizer.
  std::vector<std::vector<Permutation>> stab(Y.vertex_count());
  std::vector<std::map<Permutation, std::size_t>> column(Y.vertex_count());
  std::size_t columns = 0;
  for (std::size_t q = 0; q < Y.vertex_count(); ++q) {
    stab[q] = stabilizer(action, quotient.representative[q]);
    for (const auto& g : stab[q])
      if (!g.is_identity()) column[q][g] = columns++;
  }

  std::vector<std::vector<std::pair<std::size_t, int>>> rows;
  auto add = [&](std::vector<std::pair<std::size_t, int>>& row, std::size_t q,
                 const Permutation& g, int coefficient) {
    if (!g.is_identity()) row.emplace_back(column[q].at(g), coefficient);
  };
  for (std::size_t q = 0; q < Y.vertex_count(); ++q)
    for (const auto& g : stab[q])
      for (const auto& h : stab[q]) {
        if (g.is_identity() || h.is_identity()) continue;
        std::vector<std::pair<std::size_t, int>> row;
        add(row, q, g, 1);
        add(row, q, h, 1);
        add(row, q, g * h, -1);
        rows.push_back(std::move(row));
      }

  for (const auto& e : Y.edges()) {
    const Simplex& lift = quotient.lift_index.at(e).front();
    const std::size_t q1 = index_of(quotient.project(lift[0]));
    const std::size_t q2 = index_of(quotient.project(lift[1]));
    auto k1 = transporter(G, quotient.representative[q1], lift[0]);
    auto k2 = transporter(G, quotient.representative[q2], lift[1]);
    if (!k1 || !k2) throw Error(ErrorKind::Internal, "edge lift outside the representative orbit");
    for (const auto& x : stabilizer(action, lift)) {
      if (x.is_identity()) continue;
      std::vector<std::pair<std::size_t, int>> row;
      add(row, q1, k1->inverse() * x * *k1, 1);
      add(row, q2, k2->inverse() * x * *k2, -1);
      rows.push_back(std::move(row));
    }
  }

  IntMatrix m(rows.size(), columns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto [c, v] : rows[r]) m(r, c) += v;
  return invariants_from_relations(m);
}

TwoConnectivity is_two_connected(const SimplicialComplex& complex, std::size_t max_cosets) {
  if (complex.vertex_count() == 0) throw Error(ErrorKind::Disconnected, "empty complex");
  TwoConnectivity out;
  const Presentation pi1 = pi1_presentation(complex, vertex_at(0));
  out.h1 = homology_invariants(complex, 1);
  out.h2 = homology_invariants(complex, 2);
  const CosetTable table = todd_coxeter(pi1, max_cosets);
  if (table.complete()) out.pi1_order = table.order();

  using V = TwoConnectivity::Verdict;
  if (out.pi1_order && *out.pi1_order != 1) {
    out.verdict = V::No;
    out.witness = "pi_1 has order " + std::to_string(*out.pi1_order) +
                  " (H_1 = " + format_invariants(*out.h1, false) + ")";
  } else if (!out.pi1_order && !out.h1->trivial()) {
    out.verdict = V::No;
    out.witness = "H_1 = " + format_invariants(*out.h1, false);
  } else if (!out.h2->trivial()) {
    out.verdict = V::No;
    out.witness = "H_2 = " + format_invariants(*out.h2, false);
  } else {
    out.verdict = out.pi1_order ? V::Yes : V::Unknown;
    if (!out.pi1_order)
      out.witness = "coset enumeration exhausted at " + std::to_string(table.bound()) + " cosets";
  }
  return out;
}

}  // namespace stabpres
