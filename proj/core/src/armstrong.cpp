#include "stabpres/armstrong.hpp"

#include <algorithm>
#include <deque>

namespace stabpres {

StabilizerWord StabilizerWord::normalized() const {
  StabilizerWord out;
  for (const auto& l : letters)
    if (!l.element.is_identity()) out.letters.push_back(l);
  return out;
}

StabilizerWord operator*(const StabilizerWord& lhs, const StabilizerWord& rhs) {
  StabilizerWord out = lhs;
  out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
  return out;
}

std::string format_word(const SimplicialComplex& complex, const StabilizerWord& word) {
  if (word.letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    if (i) out += ' ';
    out += format_cycles(complex, word.letters[i].element) + "@" +
           complex.name(word.letters[i].vertex);
  }
  return out;
}

Permutation psi_evaluate(const StabilizerWord& word, std::size_t degree) {
  Permutation out = Permutation::identity(degree);
  for (const auto& l : word.letters) {
    if (index_of(l.vertex) >= l.element.degree() || l.element(l.vertex) != l.vertex)
      throw Error(ErrorKind::LetterInvariantViolated,
                  "letter element does not fix vertex index " + std::to_string(index_of(l.vertex)));
    out = out * l.element;
  }
  return out;
}

EdgePath find_path(const SimplicialComplex& complex, VertexId from, VertexId to,
                   std::uint64_t seed) {
  const std::size_t n = complex.vertex_count();
  if (index_of(from) >= n || index_of(to) >= n)
    throw Error(ErrorKind::UnknownVertex, "path endpoint not in complex");
  std::mt19937_64 rng(seed);
  std::vector<std::optional<VertexId>> parent(n);
  parent[index_of(from)] = from;
  std::deque<VertexId> queue{from};
  while (!queue.empty() && !parent[index_of(to)]) {
    VertexId u = queue.front();
    queue.pop_front();
    std::vector<VertexId> next = complex.neighbors(u);
    if (seed != 0) std::shuffle(next.begin(), next.end(), rng);
    for (VertexId w : next)
      if (!parent[index_of(w)]) {
        parent[index_of(w)] = u;
        queue.push_back(w);
      }
  }
  if (!parent[index_of(to)])
    throw Error(ErrorKind::Disconnected,
                "no path from " + complex.name(from) + " to " + complex.name(to));
  EdgePath path;
  for (VertexId v = to; v != from; v = *parent[index_of(v)]) path.vertices.push_back(v);
  path.vertices.push_back(from);
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

std::size_t LiftChooser::pick(std::size_t candidates) {
  if (seed_ == 0 || candidates <= 1) return 0;
  return std::uniform_int_distribution<std::size_t>(0, candidates - 1)(rng_);
}

void lift_and_swing(const GroupAction& action, const QuotientData& quotient, LiftedMoveLog& state,
                    const Move& move, LiftChooser& chooser) {
  const auto& X = action.complex();
  const EdgePath& lifted = state.lifted_paths.back();
  const EdgePath base_before = quotient.project(lifted);
  const EdgePath base_after = apply_move(quotient.quotient, base_before, move);
  const auto& P = lifted.vertices;
  const std::size_t i = move.position;
  const std::size_t degree = X.vertex_count();

  LiftStep step{move, state.basepoint, Permutation::identity(degree), std::nullopt};
  EdgePath next;

  if (move.kind == Move::Kind::TriangleInsert) {
    std::vector<VertexId> candidates;
    for (VertexId y : X.apexes(P[i], P[i + 1]))
      if (quotient.project(y) == move.apex) candidates.push_back(y);
    if (candidates.empty())
      throw Error(ErrorKind::LiftFailed, "no triangle over {" + X.name(P[i]) + "," +
                                             X.name(P[i + 1]) + "} lifts apex " +
                                             quotient.quotient.name(move.apex));
    VertexId y = candidates[chooser.pick(candidates.size())];
    next = lifted;
    next.vertices.insert(next.vertices.begin() + static_cast<std::ptrdiff_t>(i + 1), y);
    step.lifted_apex = y;
  } else {
    const VertexId near = P[i], pivot = P[i + 1], far = P[i + 2];
    std::vector<Permutation> swings;
    for (const auto& h : stabilizer(action, pivot))
      if (h(far) == near) swings.push_back(h);
    if (swings.empty())
      throw Error(ErrorKind::LiftFailed, "no element of the stabilizer of " + X.name(pivot) +
                                             " takes " + X.name(far) + " to " + X.name(near));
    const Permutation& h = swings[chooser.pick(swings.size())];
    next.vertices.assign(P.begin(), P.begin() + static_cast<std::ptrdiff_t>(i + 1));
    for (std::size_t k = i + 3; k < P.size(); ++k) next.vertices.push_back(h(P[k]));
    step.pivot = pivot;
    step.swing = h;
  }

  if (quotient.project(next) != base_after)
    throw Error(ErrorKind::LiftFailed, "lifted path does not project onto the base loop");
  validate_path(X, next.vertices);
  state.base.moves.push_back(move);
  state.lifted_paths.push_back(std::move(next));
  state.steps.push_back(std::move(step));
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  if (seed == 0) return 0;
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z == 0 ? 1 : z;
}

}  // namespace

ArmstrongTrace armstrong_trace(const GroupAction& action, const QuotientData& quotient,
                               VertexId basepoint, const Permutation& g,
                               const ArmstrongOptions& options) {
  if (!action.validated_without_rotations())
    throw Error(ErrorKind::PreconditionUnvalidated, "action not validated without rotations");
  if (!action.group().contains(g))
    throw Error(ErrorKind::PreconditionUnvalidated, "element is not in the group");
  const auto& X = action.complex();
  const std::size_t degree = X.vertex_count();

  ArmstrongTrace trace;
  trace.element = g;
  trace.path = find_path(X, basepoint, g(basepoint), derive_seed(options.seed, 0));

  ContractOptions contraction = options.contraction;
  contraction.seed = derive_seed(options.seed, 1);
  MoveLog base = contract_loop(quotient.quotient, quotient.project(trace.path), contraction);

  LiftedMoveLog& lifted = trace.lifted;
  lifted.base = MoveLog{base.initial, {}};
  lifted.basepoint = basepoint;
  lifted.lifted_paths = {trace.path};
  LiftChooser chooser(derive_seed(options.seed, 2));

  Permutation swings = Permutation::identity(degree);  // h_k ... h_1
  for (const auto& m : base.moves) {
    const VertexId end_before = lifted.lifted_paths.back().back();
    lift_and_swing(action, quotient, lifted, m, chooser);
    const auto& step = lifted.steps.back();
    if (lifted.lifted_paths.back().back() != step.swing(end_before))
      throw Error(ErrorKind::Internal, "endpoint recurrence violated");
    swings = step.swing * swings;
  }

  const EdgePath& last = lifted.lifted_paths.back();
  if (last.vertices.size() != 1 || last.front() != basepoint)
    throw Error(ErrorKind::Internal, "lifted contraction does not end at the basepoint");

  const Permutation reached = swings * g;
  if (reached(basepoint) != basepoint)
    throw Error(ErrorKind::Internal, "final swing product does not fix the basepoint");
  trace.closing = reached.inverse();

  for (const auto& step : lifted.steps)
    trace.word.letters.push_back({step.swing.inverse(), step.pivot});
  trace.word.letters.push_back({reached, basepoint});
  trace.word = trace.word.normalized();
  return trace;
}

StabilizerWord armstrong_express(const GroupAction& action, const QuotientData& quotient,
                                 VertexId basepoint, const Permutation& g,
                                 const ArmstrongOptions& options) {
  return armstrong_trace(action, quotient, basepoint, g, options).word;
}

}  // namespace stabpres
