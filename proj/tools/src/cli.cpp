#include "stabpres_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <deque>
#include <optional>
#include <ostream>
#include <sstream>

#include "stabpres/abelian.hpp"
#include "stabpres/io.hpp"

namespace stabpres::cli {

using io::json;

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string basepoint;
  std::uint64_t seed = 0;
  std::size_t max_cosets = kDefaultMaxCosets;
  std::size_t budget = ContractOptions{}.max_nodes;
  std::string format = "text";
  bool refine = false;
  std::string element;  // express
  int degree = 1;       // homology
  bool on_quotient = false;
};

bool json_output(const RunConfig& c) { return c.format == "json"; }

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used != std::string_view(v).size() || x == 0) throw std::invalid_argument(name);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedInput, std::string(name) + " must be a positive integer");
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput:
    case ErrorKind::UnknownVertex:
    case ErrorKind::UnknownSymbol:
    case ErrorKind::EmptyPath:
    case ErrorKind::NotAnEdge:
    case ErrorKind::BadSize:
      return kMalformed;
    case ErrorKind::GroupTooLarge:
    case ErrorKind::BudgetExhausted:
      return kResourceBound;
    default:
      return kFailed;
  }
}

class ResourceBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  json data = json::object();
  std::ostringstream text;
  int exit = kOk;
};

// ------------------------------------------------------------------ pipeline

struct Pipeline {
  GroupAction action;
  int subdivisions = 0;
  std::optional<QuotientData> quotient;
};

json load_input(const RunConfig& c) { return io::load_json(c.input); }

GroupAction load_action(const RunConfig& c) {
  const json doc = load_input(c);
  if (!doc.is_object() || !doc.contains("generators"))
    throw Error(ErrorKind::MalformedInput, c.input + " is not an action file");
  return io::action_from_json(doc);
}

Pipeline prepare(const RunConfig& c) {
  Pipeline p{load_action(c)};
  if (c.refine) {
    Refinement r = refine_action(p.action);
    p.action = std::move(r.action);
    p.subdivisions = r.subdivisions;
  } else {
    p.action = validate_without_rotations(std::move(p.action));
  }
  p.quotient = build_quotient(p.action);
  return p;
}

VertexId basepoint(const RunConfig& c, const SimplicialComplex& X) {
  return c.basepoint.empty() ? vertex_at(0) : X.vertex(c.basepoint);
}

ArmstrongOptions armstrong_options(const RunConfig& c) {
  ArmstrongOptions o;
  o.seed = c.seed;
  o.contraction.max_nodes = c.budget;
  return o;
}

bool connected(const SimplicialComplex& K) {
  if (K.vertex_count() == 0) return false;
  std::vector<char> seen(K.vertex_count(), 0);
  std::deque<VertexId> queue{vertex_at(0)};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : K.neighbors(u))
      if (!seen[index_of(w)]) {
        seen[index_of(w)] = 1;
        ++reached;
        queue.push_back(w);
      }
  }
  return reached == K.vertex_count();
}

std::string verdict_name(TwoConnectivity::Verdict v) {
  switch (v) {
    case TwoConnectivity::Verdict::Yes: return "yes";
    case TwoConnectivity::Verdict::No: return "no";
    default: return "unknown";
  }
}

json connectivity_json(const TwoConnectivity& t) {
  json j = {{"verdict", verdict_name(t.verdict)}, {"witness", t.witness}};
  j["pi1_order"] = t.pi1_order ? json(*t.pi1_order) : json(nullptr);
  if (t.h1) j["h1"] = io::invariants_to_json(*t.h1);
  if (t.h2) j["h2"] = io::invariants_to_json(*t.h2);
  return j;
}

// ------------------------------------------------------------------ commands

void cmd_validate(const RunConfig& c, Report& r) {
  GroupAction action = load_action(c);
  json checks = json::array();
  bool ok = true;
  auto check = [&](const std::string& name, bool pass, const std::string& witness) {
    json entry = {{"check", name}, {"ok", pass}};
    if (!witness.empty()) entry["witness"] = witness;
    checks.push_back(entry);
    r.text << name << ": " << (pass ? "ok" : "FAIL");
    if (!witness.empty()) r.text << " (" << witness << ")";
    r.text << '\n';
    ok = ok && pass;
    return pass;
  };
  const auto& X0 = action.complex();
  r.text << "action: |G| = " << action.group().order() << " on " << X0.vertex_count()
         << " vertices\n";
  check("simplicial", true, "");

  bool go = check("connected", connected(X0), connected(X0) ? "" : "X is disconnected");
  if (go) {
    auto t = is_two_connected(X0, c.max_cosets);
    if (!t.pi1_order) {
      check("simply_connected", false, "pi_1(X) undecided: " + t.witness);
      r.exit = kResourceBound;
    } else {
      go = check("simply_connected", *t.pi1_order == 1,
                 *t.pi1_order == 1 ? "" : "pi_1(X) has order " + std::to_string(*t.pi1_order));
    }
  }

  int subdivisions = 0;
  if (c.refine) {
    Refinement ref = refine_action(action);
    action = std::move(ref.action);
    subdivisions = ref.subdivisions;
  }
  const RotationCheck rot = check_without_rotations(action);
  std::string rot_witness;
  if (!rot.without_rotations)
    rot_witness = format_cycles(action.complex(), rot.witness->element) + " rotates simplex " +
                  action.complex().format(rot.witness->simplex);
  if (check("without_rotations", rot.without_rotations, rot_witness)) {
    action = validate_without_rotations(std::move(action));
    const auto collision = find_orbit_collision(action);
    std::string witness;
    if (collision)
      witness = "orbits of " + action.complex().format(collision->first) + " and " +
                action.complex().format(collision->second) + " project to the same simplex";
    if (check("orbit_condition", !collision, witness)) {
      const QuotientData q = build_quotient(action);
      const auto t = is_two_connected(q.quotient, c.max_cosets);
      r.data["quotient_connectivity"] = connectivity_json(t);
      if (t.verdict == TwoConnectivity::Verdict::Unknown) {
        check("quotient_two_connected", false, t.witness);
        if (r.exit == kOk) r.exit = kResourceBound;
      } else {
        check("quotient_two_connected", t.verdict == TwoConnectivity::Verdict::Yes, t.witness);
      }
    }
  }
  r.data["group_order"] = action.group().order();
  r.data["subdivisions"] = subdivisions;
  r.data["checks"] = checks;
  r.data["ok"] = ok;
  if (!ok && r.exit == kOk) r.exit = kFailed;
  r.text << (ok ? "hypotheses hold\n" : "hypotheses fail\n");
}

void cmd_quotient(const RunConfig& c, Report& r) {
  const Pipeline p = prepare(c);
  const auto& X = p.action.complex();
  const auto& Q = *p.quotient;
  json projection = json::object();
  for (std::size_t i = 0; i < X.vertex_count(); ++i)
    projection[X.name(vertex_at(i))] = Q.quotient.name(Q.projection[i]);
  r.data["subdivisions"] = p.subdivisions;
  r.data["quotient"] = io::complex_to_json(Q.quotient);
  r.data["projection"] = projection;
  r.text << "X/G: " << Q.quotient.vertex_count() << " vertices, " << Q.quotient.edges().size()
         << " edges, " << Q.quotient.triangles().size() << " triangles\n";
  for (const auto& s : Q.quotient.simplices()) r.text << "  " << Q.quotient.format(s) << '\n';
  r.text << "projection:\n";
  for (std::size_t i = 0; i < X.vertex_count(); ++i)
    r.text << "  " << X.name(vertex_at(i)) << " -> " << Q.quotient.name(Q.projection[i]) << '\n';
}

void cmd_present(const RunConfig& c, Report& r) {
  const Pipeline p = prepare(c);
  const Presentation P = build_presentation(p.action, *p.quotient);
  r.data["subdivisions"] = p.subdivisions;
  r.data["presentation"] = io::presentation_to_json(p.action.complex(), P);
  r.data["text"] = P.format();
  r.text << P.generator_count() << " generators, " << P.relators().size() << " relators\n"
         << P.format() << '\n';
}

void cmd_express(const RunConfig& c, Report& r) {
  const Pipeline p = prepare(c);
  const auto& X = p.action.complex();
  const Permutation g = Permutation::from_cycles(X, parse_cycle_notation(c.element));
  if (!p.action.group().contains(g))
    throw Error(ErrorKind::MalformedInput, c.element + " is not an element of G");
  const VertexId base = basepoint(c, X);
  const ArmstrongTrace trace =
      armstrong_trace(p.action, *p.quotient, base, g, armstrong_options(c));
  const Permutation psi = psi_evaluate(trace.word, X.vertex_count());
  const bool ok = psi == g;
  r.data["element"] = io::cycles_to_json(X, g);
  r.data["basepoint"] = X.name(base);
  r.data["path"] = format_path(X, trace.path);
  r.data["moves"] = trace.lifted.base.moves.size();
  r.data["word"] = io::word_to_json(X, trace.word);
  r.data["word_text"] = format_word(X, trace.word);
  r.data["psi"] = io::cycles_to_json(X, psi);
  r.data["psi_ok"] = ok;
  r.text << "word: " << format_word(X, trace.word) << '\n'
         << "psi(word) = " << format_cycles(X, psi) << ": " << (ok ? "OK" : "MISMATCH") << '\n';
  if (!ok) r.exit = kFailed;
}

void cmd_verify(const RunConfig& c, Report& r) {
  const Pipeline p = prepare(c);
  const auto& X = p.action.complex();
  const auto connectivity = is_two_connected(p.quotient->quotient, c.max_cosets);
  r.data["quotient_connectivity"] = connectivity_json(connectivity);
  if (connectivity.verdict == TwoConnectivity::Verdict::No)
    throw Error(ErrorKind::CertificateFailed, "X/G is not 2-connected: " + connectivity.witness);

  const Presentation P = build_presentation(p.action, *p.quotient);
  const CosetTable T = todd_coxeter(P, c.max_cosets);
  if (!T.complete())
    throw ResourceBound("coset enumeration exhausted at " + std::to_string(T.bound()) +
                        " cosets");
  const TheoremCertificate cert =
      verify_theorem(p.action, *p.quotient, P, T, basepoint(c, X), armstrong_options(c));
  r.data["subdivisions"] = p.subdivisions;
  r.data["generators"] = P.generator_count();
  r.data["relators"] = P.relators().size();
  r.data["relators_checked"] = cert.relators_checked;
  r.data["presented_order"] = cert.presented_order;
  r.data["group_order"] = cert.group_order;
  r.data["elements_expressed"] = cert.elements_expressed;
  r.data["peak_cosets"] = T.peak_cosets();
  r.data["certified"] = true;
  r.text << "presentation: " << P.generator_count() << " generators, " << P.relators().size()
         << " relators\n"
         << "relators in ker psi: " << cert.relators_checked << '\n'
         << "order " << cert.presented_order << " = |G|, psi certified\n"
         << "elements expressed: " << cert.elements_expressed << '\n';
  if (connectivity.verdict == TwoConnectivity::Verdict::Unknown)
    r.text << "note: 2-connectivity of X/G undecided (" << connectivity.witness << ")\n";
}

void cmd_abelianize(const RunConfig& c, Report& r) {
  const Pipeline p = prepare(c);
  const AbelianInvariants gab = group_abelianization(p.action.group());
  const AbelianInvariants colim = colimit_H1(p.action, *p.quotient);
  const AbelianInvariants pres =
      presentation_abelianization(build_presentation(p.action, *p.quotient));
  const bool agree = gab == colim && gab == pres;
  r.data["group"] = io::invariants_to_json(gab);
  r.data["colimit"] = io::invariants_to_json(colim);
  r.data["presentation"] = io::invariants_to_json(pres);
  r.data["agree"] = agree;
  r.text << "G^ab          = " << format_invariants(gab) << '\n'
         << "C(H_1)        = " << format_invariants(colim) << '\n'
         << "presented^ab  = " << format_invariants(pres) << '\n'
         << (agree ? "agree\n" : "DISAGREE\n");
  if (!agree) r.exit = kFailed;
}

void cmd_homology(const RunConfig& c, Report& r) {
  std::optional<SimplicialComplex> K;
  if (c.on_quotient) {
    K = prepare(c).quotient->quotient;
  } else {
    const json doc = load_input(c);
    K = io::complex_from_json(doc.is_object() && doc.contains("complex") ? doc.at("complex") : doc);
  }
  const AbelianInvariants h = homology_invariants(*K, c.degree);
  r.data["degree"] = c.degree;
  r.data["homology"] = io::invariants_to_json(h);
  r.data["text"] = format_invariants(h);
  r.text << "H_" << c.degree << " = " << format_invariants(h) << '\n';
}

void dispatch(const RunConfig& c, Report& r) {
  r.data["command"] = c.command;
  if (c.command == "validate") cmd_validate(c, r);
  else if (c.command == "quotient") cmd_quotient(c, r);
  else if (c.command == "present") cmd_present(c, r);
  else if (c.command == "express") cmd_express(c, r);
  else if (c.command == "verify") cmd_verify(c, r);
  else if (c.command == "abelianize") cmd_abelianize(c, r);
  else if (c.command == "homology") cmd_homology(c, r);
}

void report_error(const RunConfig& c, std::ostream& err, const std::string& kind,
                  const std::string& message, int code) {
  if (json_output(c))
    err << json{{"error", {{"kind", kind}, {"message", message}, {"exit", code}}}}.dump(2) << '\n';
  else
    err << "error: " << message << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Presentations of groups acting on simplicial complexes", "stabpres"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "Action (or complex) JSON file")->required();
    sub->add_option("--basepoint", c.basepoint, "Basepoint vertex name (default: least vertex)");
    sub->add_option("--seed", c.seed, "Seed for path, contraction and lift choices");
    sub->add_option("--max-cosets", c.max_cosets, "Coset table bound")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget", c.budget, "Loop contraction node budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--refine", c.refine, "Barycentrically subdivide until the theorem applies");
  };

  add_common(app.add_subcommand("validate", "Check the theorem's hypotheses"));
  add_common(app.add_subcommand("quotient", "Emit X/G and the projection"));
  add_common(app.add_subcommand("present", "Emit the stabilizer presentation"));
  auto* express = app.add_subcommand("express", "Armstrong word for an element");
  add_common(express);
  express->add_option("-g,--element", c.element, "Element in cycle notation")->required();
  add_common(app.add_subcommand("verify", "Certify the presentation"));
  add_common(app.add_subcommand("abelianize", "Compare G^ab, C(H_1) and the presented abelianization"));
  auto* homology = app.add_subcommand("homology", "Integral homology of X (or X/G)");
  add_common(homology);
  homology->add_option("-k", c.degree, "Degree")->required()->check(CLI::IsMember({1, 2}));
  homology->add_flag("--quotient", c.on_quotient, "Use X/G instead of X");

  try {
    c.max_cosets = env_size("STABPRES_MAX_COSETS", c.max_cosets);
    c.budget = env_size("STABPRES_BUDGET", c.budget);
  } catch (const Error& e) {
    report_error(c, err, std::string(error_kind_name(e.kind())), e.what(), kMalformed);
    return kMalformed;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(c, err, "Usage", e.what(), kMalformed);
    return kMalformed;
  }
  c.command = app.get_subcommands().front()->get_name();

  Report r;
  try {
    dispatch(c, r);
  } catch (const ResourceBound& e) {
    report_error(c, err, "Exhausted", e.what(), kResourceBound);
    return kResourceBound;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    report_error(c, err, std::string(error_kind_name(e.kind())), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(c, err, "Internal", e.what(), kFailed);
    return kFailed;
  }
  r.data["exit"] = r.exit;
  if (json_output(c)) out << r.data.dump(2) << '\n';
  else out << r.text.str();
  return r.exit;
}

}  // namespace stabpres::cli
