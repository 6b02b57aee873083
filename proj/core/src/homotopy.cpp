#include "stabpres/homotopy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>

namespace stabpres {

std::size_t MoveLog::triangle_count() const {
  return static_cast<std::size_t>(std::count_if(
      moves.begin(), moves.end(), [](const Move& m) { return m.kind == Move::Kind::TriangleInsert; }));
}

std::size_t MoveLog::backtrack_count() const { return moves.size() - triangle_count(); }

EdgePath apply_move(const SimplicialComplex& complex, const EdgePath& loop, const Move& move) {
  const auto& v = loop.vertices;
  const std::size_t i = move.position;
  auto illegal = [&](const std::string& why) -> EdgePath {
    throw Error(ErrorKind::IllegalMove, why + " (position " + std::to_string(i) + ")");
  };

  if (move.kind == Move::Kind::TriangleInsert) {
    if (i + 1 >= v.size()) return illegal("triangle insert needs an edge");
    if (index_of(move.apex) >= complex.vertex_count()) return illegal("unknown apex");
    if (move.apex == v[i] || move.apex == v[i + 1] ||
        !complex.contains(Simplex{v[i], v[i + 1], move.apex}))
      return illegal("{" + complex.name(v[i]) + "," + complex.name(v[i + 1]) + "," +
                     complex.name(move.apex) + "} is not a triangle");
    EdgePath out = loop;
    out.vertices.insert(out.vertices.begin() + static_cast<std::ptrdiff_t>(i + 1), move.apex);
    return out;
  }

  // The middle of a window never sits at the loop's ends, so the basepoint
  // occurrence that anchors the loop is never deleted.
  if (i + 2 >= v.size()) return illegal("backtrack delete needs a three-vertex window");
  if (v[i] != v[i + 2]) return illegal("window is not a backtrack");
  EdgePath out = loop;
  out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(i + 1),
                     out.vertices.begin() + static_cast<std::ptrdiff_t>(i + 3));
  return out;
}

std::vector<EdgePath> replay(const SimplicialComplex& complex, const MoveLog& log) {
  std::vector<EdgePath> loops{log.initial};
  for (const auto& m : log.moves) loops.push_back(apply_move(complex, loops.back(), m));
  return loops;
}

bool is_complete(const SimplicialComplex& complex, const MoveLog& log) {
  try {
    auto loops = replay(complex, log);
    return loops.back().vertices.size() == 1 && loops.back().front() == log.initial.front();
  } catch (const Error&) {
    return false;
  }
}

namespace {

class LoopSearch {
 public:
  LoopSearch(const SimplicialComplex& complex, const ContractOptions& options, std::size_t cap)
      : complex_(complex), options_(options), cap_(cap), rng_(options.seed) {}

  bool run(const std::vector<VertexId>& loop, std::size_t remaining) {
    if (loop.size() == 1) return true;
    const std::size_t length = loop.size() - 1;
    if ((length + 1) / 2 > remaining) return false;
    if (auto it = failed_.find(loop); it != failed_.end() && it->second >= remaining) return false;
    if (++nodes_ > options_.max_nodes)
      throw Error(ErrorKind::BudgetExhausted,
                  "loop contraction expanded more than " + std::to_string(options_.max_nodes) +
                      " search nodes");

    std::vector<Move> backs, tris;
    for (std::size_t i = 0; i + 2 < loop.size(); ++i)
      if (loop[i] == loop[i + 2]) backs.push_back(Move::backtrack(i));
    if (length + 1 <= cap_)
      for (std::size_t i = 0; i + 1 < loop.size(); ++i)
        for (VertexId apex : complex_.apexes(loop[i], loop[i + 1]))
          tris.push_back(Move::triangle(i, apex));
    if (options_.seed != 0) {
      std::shuffle(backs.begin(), backs.end(), rng_);
      std::shuffle(tris.begin(), tris.end(), rng_);
    }

    for (const auto* moves : {&backs, &tris})
      for (const auto& m : *moves) {
        std::vector<VertexId> next = loop;
        if (m.kind == Move::Kind::BacktrackDelete) {
          next.erase(next.begin() + static_cast<std::ptrdiff_t>(m.position + 1),
                     next.begin() + static_cast<std::ptrdiff_t>(m.position + 3));
        } else {
          next.insert(next.begin() + static_cast<std::ptrdiff_t>(m.position + 1), m.apex);
        }
        trail_.push_back(m);
        if (run(next, remaining - 1)) return true;
        trail_.pop_back();
      }

    auto& best = failed_[loop];
    best = std::max(best, remaining);
    return false;
  }

  const std::vector<Move>& trail() const noexcept { return trail_; }
  std::size_t nodes() const noexcept { return nodes_; }

 private:
  const SimplicialComplex& complex_;
  const ContractOptions& options_;
  std::size_t cap_;
  std::mt19937_64 rng_;
  std::size_t nodes_ = 0;
  std::map<std::vector<VertexId>, std::size_t> failed_;
  std::vector<Move> trail_;
};

// Depth-first descent over star sweeps. A sweep at an interior vertex x with
// loop neighbors u != w walks a path u = p0, p1, ..., pk = w in the link of x,
// inserting each p_j across the triangle {p_{j-1}, x, p_j}, then deletes the
// backtrack w-x-w. Sweeps that lower the distance to the basepoint are tried
// first, then level ones, then the rest; loops already seen are skipped.
class StarSweep {
 public:
  StarSweep(const SimplicialComplex& complex, const ContractOptions& options, VertexId base,
            std::size_t budget)
      : complex_(complex), budget_(budget), rng_(options.seed), shuffle_(options.seed != 0) {
    const std::size_t n = complex.vertex_count();
    dist_.assign(n, std::numeric_limits<std::size_t>::max());
    dist_[index_of(base)] = 0;
    std::vector<VertexId> queue{base};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (VertexId w : complex.neighbors(queue[h]))
        if (dist_[index_of(w)] == std::numeric_limits<std::size_t>::max()) {
          dist_[index_of(w)] = dist_[index_of(queue[h])] + 1;
          queue.push_back(w);
        }
  }

  std::optional<std::vector<Move>> run(const std::vector<VertexId>& loop) {
    struct Frame {
      std::vector<VertexId> loop;
      std::vector<Step> steps;
      std::size_t next = 0;
      std::size_t trail_size = 0;
    };
    std::vector<Frame> stack;
    std::vector<Move> trail;
    auto push = [&](std::vector<VertexId> l) {
      if (!seen_.insert(l).second) return;
      ++nodes_;
      Frame f{std::move(l), {}, 0, trail.size()};
      f.steps = successors(f.loop);
      stack.push_back(std::move(f));
    };
    push(loop);
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.loop.size() == 1) return trail;
      if (top.next == top.steps.size() || nodes_ >= budget_) {
        trail.resize(top.trail_size);
        stack.pop_back();
        if (nodes_ >= budget_) return std::nullopt;
        continue;
      }
      Step step = std::move(top.steps[top.next++]);
      trail.resize(top.trail_size);
      trail.insert(trail.end(), step.moves.begin(), step.moves.end());
      push(std::move(step.result));
    }
    return std::nullopt;
  }

 private:
  struct Step {
    std::vector<VertexId> result;
    std::vector<Move> moves;
  };

  std::size_t d(VertexId v) const { return dist_[index_of(v)]; }

  // Link path from u to w minimizing (highest interior distance, length).
  std::optional<std::pair<std::size_t, std::vector<VertexId>>> link_path(VertexId x, VertexId u,
                                                                         VertexId w) const {
    using Key = std::pair<std::size_t, std::size_t>;  // (max interior distance + 1, length)
    std::map<VertexId, Key> best;
    std::map<VertexId, VertexId> parent;
    std::set<std::pair<Key, VertexId>> open{{{0, 0}, u}};
    best[u] = {0, 0};
    while (!open.empty()) {
      auto [key, y] = *open.begin();
      open.erase(open.begin());
      if (y == w) {
        std::vector<VertexId> p{w};
        while (p.back() != u) p.push_back(parent.at(p.back()));
        std::reverse(p.begin(), p.end());
        return std::pair{key.first == 0 ? 0 : key.first - 1, std::move(p)};
      }
      for (VertexId z : complex_.apexes(x, y)) {
        Key next{z == w ? key.first : std::max(key.first, d(z) + 1), key.second + 1};
        auto it = best.find(z);
        if (it != best.end() && it->second <= next) continue;
        if (it != best.end()) open.erase({it->second, z});
        best[z] = next;
        parent[z] = y;
        open.insert({next, z});
      }
    }
    return std::nullopt;
  }

  std::vector<Step> successors(const std::vector<VertexId>& loop) {
    std::vector<Step> out;
    for (std::size_t i = 1; i + 1 < loop.size(); ++i)
      if (loop[i - 1] == loop[i + 1]) {
        std::vector<VertexId> next = loop;
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(i),
                   next.begin() + static_cast<std::ptrdiff_t>(i + 2));
        out.push_back({std::move(next), {Move::backtrack(i - 1)}});
        return out;
      }

    struct Ranked {
      int tier;
      std::size_t depth;
      std::uint64_t tie;
      Step step;
    };
    std::vector<Ranked> ranked;
    for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
      const VertexId x = loop[i];
      auto found = link_path(x, loop[i - 1], loop[i + 1]);
      if (!found) continue;
      const auto& [height, p] = *found;
      Step step;
      for (std::size_t j = 1; j < p.size(); ++j) step.moves.push_back(Move::triangle(i + j - 2, p[j]));
      step.moves.push_back(Move::backtrack(i + p.size() - 2));
      step.result.assign(loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>(i - 1));
      step.result.insert(step.result.end(), p.begin(), p.end());
      step.result.insert(step.result.end(), loop.begin() + static_cast<std::ptrdiff_t>(i + 2),
                         loop.end());
      const int tier = height < d(x) ? 0 : height == d(x) ? 1 : 2;
      ranked.push_back({tier, d(x), shuffle_ ? rng_() : i, std::move(step)});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      if (a.tier != b.tier) return a.tier < b.tier;
      if (a.depth != b.depth) return a.depth > b.depth;
      return a.tie < b.tie;
    });
    for (auto& r : ranked) out.push_back(std::move(r.step));
    return out;
  }

  const SimplicialComplex& complex_;
  std::size_t budget_;
  std::mt19937_64 rng_;
  bool shuffle_;
  std::vector<std::size_t> dist_;
  std::set<std::vector<VertexId>> seen_;
  std::size_t nodes_ = 0;
};

}  // namespace

MoveLog contract_loop(const SimplicialComplex& complex, const EdgePath& loop,
                      const ContractOptions& options) {
  EdgePath checked = validate_path(complex, loop.vertices);
  if (!checked.is_loop()) throw Error(ErrorKind::IllegalMove, "path is not a loop");

  auto certified = [&](std::vector<Move> moves) {
    MoveLog log{checked, std::move(moves)};
    if (!is_complete(complex, log))
      throw Error(ErrorKind::Internal, "contraction certificate failed replay");
    return log;
  };

  // Exact phase: shortest logs for short loops.
  ContractOptions exact = options;
  exact.max_nodes = std::min(options.max_nodes, kExactSearchNodes);
  const std::size_t cap =
      options.length_cap != 0 ? options.length_cap : 3 * checked.length() + 8;
  LoopSearch search(complex, exact, cap);
  try {
    for (std::size_t bound = (checked.length() + 1) / 2; bound <= options.max_moves; ++bound)
      if (search.run(checked.vertices, bound)) return certified(search.trail());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExhausted) throw;
  }

  // Descent phase: sweep the loop across vertex stars.
  StarSweep sweep(complex, options, checked.front(), options.max_nodes - std::min(options.max_nodes, search.nodes()));
  if (auto moves = sweep.run(checked.vertices)) return certified(std::move(*moves));
  throw Error(ErrorKind::BudgetExhausted,
              "no contraction found within " + std::to_string(options.max_nodes) +
                  " search nodes");
}

// --------------------------------------------------------- disc collapse

namespace {

std::size_t edge_uses(const std::vector<VertexId>& loop, const Simplex& edge) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i)
    if (Simplex{loop[i], loop[i + 1]} == edge) ++n;
  return n;
}

}  // namespace

std::vector<Collapse> collapse_disc(const DegenerateDisc& disc) {
  const auto& D = disc.complex;
  validate_path(D, disc.boundary.vertices);
  if (!disc.boundary.is_loop()) throw Error(ErrorKind::NotCollapsible, "boundary is not a loop");

  const VertexId base = disc.boundary.front();
  std::set<VertexId> vertices;
  for (std::size_t i = 0; i < D.vertex_count(); ++i) vertices.insert(vertex_at(i));
  std::set<Simplex> edges(D.edges().begin(), D.edges().end());
  std::set<Simplex> triangles(D.triangles().begin(), D.triangles().end());
  std::vector<VertexId> loop = disc.boundary.vertices;

  auto remaining = [&] { return vertices.size() + edges.size() + triangles.size(); };
  auto triangle_on = [&](const Simplex& e) -> std::optional<Simplex> {
    for (const auto& t : triangles)
      if (e.is_face_of(t)) return t;
    return std::nullopt;
  };

  std::vector<Collapse> out;
  while (loop.size() > 1) {
    bool progressed = false;

    for (std::size_t i = 0; i + 1 < loop.size() && !progressed; ++i) {
      Simplex e{loop[i], loop[i + 1]};
      auto t = triangle_on(e);
      if (!t || edge_uses(loop, e) != 1) continue;
      VertexId y = *std::find_if(t->begin(), t->end(), [&](VertexId w) { return !e.contains(w); });
      loop.insert(loop.begin() + static_cast<std::ptrdiff_t>(i + 1), y);
      edges.erase(e);
      triangles.erase(*t);
      out.push_back({Collapse::Kind::TwoDimensional, i, loop[i], loop[i + 2], y, {*t, e}, remaining()});
      progressed = true;
    }

    for (std::size_t i = 0; i + 2 < loop.size() && !progressed; ++i) {
      if (loop[i] != loop[i + 2] || loop[i + 1] == base) continue;
      Simplex e{loop[i], loop[i + 1]};
      if (triangle_on(e) || edge_uses(loop, e) != 2) continue;
      VertexId x1 = loop[i], x2 = loop[i + 1];
      loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(i + 1),
                 loop.begin() + static_cast<std::ptrdiff_t>(i + 3));
      edges.erase(e);
      std::vector<Simplex> removed{e};
      bool x2_isolated = std::find(loop.begin(), loop.end(), x2) == loop.end() &&
                         std::none_of(edges.begin(), edges.end(),
                                      [&](const Simplex& f) { return f.contains(x2); });
      if (x2_isolated) {
        vertices.erase(x2);
        removed.push_back(Simplex{x2});
      }
      out.push_back({Collapse::Kind::OneDimensional, i, x1, x2, {}, removed, remaining()});
      progressed = true;
    }

    if (!progressed)
      throw Error(ErrorKind::NotCollapsible,
                  "stuck at boundary " + format_path(D, EdgePath{loop}));
  }

  if (vertices != std::set<VertexId>{base} || !edges.empty() || !triangles.empty())
    throw Error(ErrorKind::NotCollapsible, "boundary contracted but the disc is not a point");
  return out;
}

MoveLog to_move_log(const DegenerateDisc& disc, const std::vector<Collapse>& collapses) {
  MoveLog log{disc.boundary, {}};
  for (const auto& c : collapses)
    log.moves.push_back(c.kind == Collapse::Kind::TwoDimensional ? Move::triangle(c.position, c.y)
                                                                 : Move::backtrack(c.position));
  return log;
}

DegenerateDisc random_nondegenerate_disc(std::size_t n, std::uint64_t seed) {
  if (n < 3 || n > kMaxDiscBoundary)
    throw Error(ErrorKind::BadSize, "disc boundary size " + std::to_string(n) + " outside [3, " +
                                        std::to_string(kMaxDiscBoundary) + "]");
  std::mt19937_64 rng(seed);
  auto name = [](std::size_t i) { return "p" + std::to_string(i); };

  RawComplex raw;
  for (std::size_t i = 0; i < n; ++i) raw.vertices.push_back(name(i));
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) edges.insert(std::minmax(i, (i + 1) % n));

  // Triangulate the sub-polygon lo..hi, whose closing edge is lo-hi.
  auto split = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (hi - lo < 2) return;
    std::uniform_int_distribution<std::size_t> pick(lo + 1, hi - 1);
    std::size_t apex = pick(rng);
    raw.triangles.push_back({name(lo), name(apex), name(hi)});
    edges.insert({lo, apex});
    edges.insert({apex, hi});
    self(self, lo, apex);
    self(self, apex, hi);
  };
  split(split, 0, n - 1);
  for (auto [a, b] : edges) raw.edges.push_back({name(a), name(b)});

  DegenerateDisc disc{validate_complex(raw), {}};
  std::vector<std::string> boundary;
  for (std::size_t i = 0; i <= n; ++i) boundary.push_back(name(i % n));
  disc.boundary = validate_path(disc.complex, boundary);
  return disc;
}

}  // namespace stabpres
