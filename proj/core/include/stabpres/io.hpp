#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "stabpres/abelian.hpp"
#include "stabpres/action.hpp"
#include "stabpres/armstrong.hpp"
#include "stabpres/homotopy.hpp"
#include "stabpres/presentation.hpp"

namespace stabpres::io {

using nlohmann::json;

/// Parses a file; throws MalformedInput with the parser's message.
json load_json(const std::filesystem::path& path);

// {"vertices":[...], "edges":[[u,v],...], "triangles":[[u,v,w],...]}
RawComplex raw_complex_from_json(const json& j);
SimplicialComplex complex_from_json(const json& j);
json complex_to_json(const SimplicialComplex& complex);

// {"complex": {...}, "generators": [[[a,b],[c,d,e]], ...]}
// Generators may also be given as cycle strings, e.g. "(a b)(c d e)".
GroupAction action_from_json(const json& j, std::size_t cap = kDefaultGroupCap);
json action_to_json(const GroupAction& action);

json cycles_to_json(const SimplicialComplex& complex, const Permutation& p);
Permutation cycles_from_json(const SimplicialComplex& complex, const json& j);

// {"initial":[...], "moves":[{"kind":"tri","pos":i,"apex":v} | {"kind":"back","pos":i}]}
json move_log_to_json(const SimplicialComplex& complex, const MoveLog& log);
MoveLog move_log_from_json(const SimplicialComplex& complex, const json& j);

// [{"element": [[cycles]], "vertex": v}, ...]
json word_to_json(const SimplicialComplex& complex, const StabilizerWord& word);
StabilizerWord word_from_json(const SimplicialComplex& complex, const json& j);

json presentation_to_json(const SimplicialComplex& complex, const Presentation& presentation);

// {"rank": r, "torsion": [d1, ...]}
json invariants_to_json(const AbelianInvariants& a);

}  // namespace stabpres::io
