#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stabpres/io.hpp"

namespace stabpres::testing {

inline std::filesystem::path fixture(std::string_view name) {
  return std::filesystem::path(STABPRES_FIXTURE_DIR) / (std::string(name) + ".json");
}

inline GroupAction load_fixture(std::string_view name) {
  return io::action_from_json(io::load_json(fixture(name)));
}

struct Prepared {
  GroupAction action;
  QuotientData quotient;
};

/// Fixture validated without rotations (refined first if asked) plus its quotient.
inline Prepared prepare(std::string_view name, bool refine = false) {
  GroupAction a = load_fixture(name);
  a = refine ? refine_action(a).action : validate_without_rotations(std::move(a));
  QuotientData q = build_quotient(a);
  return {std::move(a), std::move(q)};
}

/// Complex from one-letter vertex names: cx("abc", {"ab", "bc", "ca"}, {"abc"}).
inline SimplicialComplex cx(std::string_view vertices, const std::vector<std::string>& edges = {},
                            const std::vector<std::string>& triangles = {}) {
  RawComplex raw;
  for (char v : vertices) raw.vertices.emplace_back(1, v);
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    for (char v : s) out.emplace_back(1, v);
    return out;
  };
  for (const auto& e : edges) raw.edges.push_back(split(e));
  for (const auto& t : triangles) raw.triangles.push_back(split(t));
  return validate_complex(raw);
}

inline EdgePath path(const SimplicialComplex& K, const std::vector<std::string>& names) {
  return validate_path(K, names);
}

inline Permutation perm(const SimplicialComplex& K, std::string_view cycles) {
  return Permutation::from_cycles(K, parse_cycle_notation(cycles));
}

/// The full 2-simplex on a, b, c.
inline SimplicialComplex filled_triangle() { return cx("abc", {"ab", "bc", "ac"}, {"abc"}); }

inline SimplicialComplex octahedron_boundary() {
  return io::complex_from_json(io::load_json(fixture("f5")).at("complex"));
}

}  // namespace stabpres::testing
