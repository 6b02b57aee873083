#include "stabpres/io.hpp"

#include <fstream>

namespace stabpres::io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::MalformedInput, what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<std::string> names(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array of vertex names");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) malformed(std::string(what) + " must contain strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<std::vector<std::string>> name_lists(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<std::vector<std::string>> out;
  for (const auto& x : j) out.push_back(names(x, what));
  return out;
}

std::size_t index_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    malformed(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    malformed(path.string() + ": " + e.what());
  }
}

RawComplex raw_complex_from_json(const json& j) {
  RawComplex raw;
  raw.vertices = names(field(j, "vertices"), "vertices");
  raw.edges = name_lists(field(j, "edges"), "edges");
  raw.triangles = j.contains("triangles") ? name_lists(j.at("triangles"), "triangles")
                                          : std::vector<std::vector<std::string>>{};
  return raw;
}

SimplicialComplex complex_from_json(const json& j) {
  return validate_complex(raw_complex_from_json(j));
}

json complex_to_json(const SimplicialComplex& complex) {
  const RawComplex raw = complex.to_raw();
  return {{"vertices", raw.vertices}, {"edges", raw.edges}, {"triangles", raw.triangles}};
}

json cycles_to_json(const SimplicialComplex& complex, const Permutation& p) {
  json out = json::array();
  for (const auto& c : p.cycles()) {
    json cycle = json::array();
    for (VertexId v : c) cycle.push_back(complex.name(v));
    out.push_back(std::move(cycle));
  }
  return out;
}

Permutation cycles_from_json(const SimplicialComplex& complex, const json& j) {
  if (j.is_string()) return Permutation::from_cycles(complex, parse_cycle_notation(j.get<std::string>()));
  return Permutation::from_cycles(complex, name_lists(j, "cycles"));
}

GroupAction action_from_json(const json& j, std::size_t cap) {
  SimplicialComplex complex = complex_from_json(field(j, "complex"));
  const json& gens = field(j, "generators");
  if (!gens.is_array()) malformed("generators must be an array");
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(cycles_from_json(complex, g));
  return validate_simplicial_action(complex, std::move(perms), cap);
}

json action_to_json(const GroupAction& action) {
  json gens = json::array();
  for (const auto& g : action.group().generators())
    gens.push_back(cycles_to_json(action.complex(), g));
  return {{"complex", complex_to_json(action.complex())}, {"generators", gens}};
}

json move_log_to_json(const SimplicialComplex& complex, const MoveLog& log) {
  json initial = json::array(), moves = json::array();
  for (VertexId v : log.initial.vertices) initial.push_back(complex.name(v));
  for (const auto& m : log.moves) {
    if (m.kind == Move::Kind::TriangleInsert)
      moves.push_back({{"kind", "tri"}, {"pos", m.position}, {"apex", complex.name(m.apex)}});
    else
      moves.push_back({{"kind", "back"}, {"pos", m.position}});
  }
  return {{"initial", initial}, {"moves", moves}};
}

MoveLog move_log_from_json(const SimplicialComplex& complex, const json& j) {
  MoveLog log;
  log.initial = validate_path(complex, names(field(j, "initial"), "initial"));
  const json& moves = field(j, "moves");
  if (!moves.is_array()) malformed("moves must be an array");
  for (const auto& m : moves) {
    const json& kind = field(m, "kind");
    const std::size_t pos = index_field(m, "pos");
    if (kind == "tri") {
      const json& apex = field(m, "apex");
      if (!apex.is_string()) malformed("apex must be a vertex name");
      log.moves.push_back(Move::triangle(pos, complex.vertex(apex.get<std::string>())));
    } else if (kind == "back") {
      log.moves.push_back(Move::backtrack(pos));
    } else {
      malformed("move kind must be \"tri\" or \"back\"");
    }
  }
  return log;
}

json word_to_json(const SimplicialComplex& complex, const StabilizerWord& word) {
  json out = json::array();
  for (const auto& l : word.letters)
    out.push_back({{"element", cycles_to_json(complex, l.element)},
                   {"vertex", complex.name(l.vertex)}});
  return out;
}

StabilizerWord word_from_json(const SimplicialComplex& complex, const json& j) {
  if (!j.is_array()) malformed("a stabilizer word must be an array");
  StabilizerWord out;
  for (const auto& l : j) {
    const json& v = field(l, "vertex");
    if (!v.is_string()) malformed("vertex must be a name");
    out.letters.push_back(
        {cycles_from_json(complex, field(l, "element")), complex.vertex(v.get<std::string>())});
  }
  return out;
}

json presentation_to_json(const SimplicialComplex& complex, const Presentation& presentation) {
  json gens = json::array(), rels = json::array();
  for (const auto& g : presentation.generators()) {
    json entry = {{"name", g.name}};
    if (g.symbol) {
      entry["element"] = cycles_to_json(complex, g.symbol->element);
      entry["vertex"] = complex.name(g.symbol->vertex);
    }
    gens.push_back(std::move(entry));
  }
  for (const auto& r : presentation.relators()) {
    json letters = json::array();
    for (Letter l : r.word) letters.push_back(l);
    rels.push_back({{"tag", relator_tag_name(r.tag)},
                    {"letters", letters},
                    {"text", presentation.format_word(r.word)}});
  }
  return {{"generators", gens}, {"relators", rels}};
}

json invariants_to_json(const AbelianInvariants& a) {
  json torsion = json::array();
  for (const auto& d : a.torsion) torsion.push_back(d.convert_to<long long>());
  return {{"rank", a.rank}, {"torsion", torsion}};
}

}  // namespace stabpres::io
