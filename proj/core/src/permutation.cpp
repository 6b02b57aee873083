#include "stabpres/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace stabpres {

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
  std::vector<bool> hit(images.size(), false);
  for (auto i : images) {
    if (i >= images.size() || hit[i])
      throw Error(ErrorKind::NotABijection, "image vector is not a permutation");
    hit[i] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(const SimplicialComplex& complex,
                                     const std::vector<std::vector<std::string>>& cycles) {
  auto images = identity(complex.vertex_count()).images_;
  std::vector<bool> used(images.size(), false);
  for (const auto& cycle : cycles) {
    std::vector<std::uint32_t> ids;
    for (const auto& name : cycle) {
      auto v = index_of(complex.vertex(name));
      if (used[v]) throw Error(ErrorKind::NotABijection, "vertex '" + name + "' repeated in cycles");
      used[v] = true;
      ids.push_back(v);
    }
    for (std::size_t i = 0; i < ids.size(); ++i) images[ids[i]] = ids[(i + 1) % ids.size()];
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(inv));
}

Simplex Permutation::apply(const Simplex& s) const {
  std::vector<VertexId> image;
  for (VertexId v : s) image.push_back((*this)(v));
  return Simplex(std::span<const VertexId>(image));
}

std::vector<std::vector<VertexId>> Permutation::cycles() const {
  std::vector<std::vector<VertexId>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<VertexId> cycle;
    for (auto i = static_cast<std::uint32_t>(start); !seen[i]; i = images_[i]) {
      seen[i] = true;
      cycle.push_back(vertex_at(i));
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.degree() != rhs.degree())
    throw Error(ErrorKind::Internal, "composing permutations of different degree");
  std::vector<std::uint32_t> images(rhs.images_.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = lhs.images_[rhs.images_[i]];
  return Permutation(std::move(images));
}

std::string format_cycles(const SimplicialComplex& complex, const Permutation& p) {
  auto cycles = p.cycles();
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& cycle : cycles) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += ' ';
      out += complex.name(cycle[i]);
    }
    out += ')';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_cycle_notation(std::string_view text) {
  std::vector<std::vector<std::string>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedInput,
                "bad cycle notation '" + std::string(text) + "': " + why);
  };

  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<std::string> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      // A name runs to whitespace or an unmatched ')'.
      std::string name;
      int depth = 0;
      while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) break;
        if (c == ')' && depth == 0) break;
        if (c == '(') ++depth;
        if (c == ')') --depth;
        name += c;
        ++i;
      }
      if (depth != 0) fail("unbalanced parentheses in vertex name");
      cycle.push_back(std::move(name));
    }
    if (cycle.size() > 1) cycles.push_back(std::move(cycle));
    skip_space();
  }
  return cycles;
}

}  // namespace stabpres
