#include "binet/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <set>
#include <stdexcept>

namespace binet {

namespace {

bool in_raw_V(int t1, int t2, int T1, int T2) {
  return t1 >= -T1 && t1 <= 3 * T1 && t2 >= -T2 && t2 <= T2 && t1 % 2 == 0 && t2 % 2 == 0;
}

bool in_raw_Vstar(int t1, int t2, int T1, int T2) {
  return t1 >= -T1 + 1 && t1 <= 3 * T1 - 1 && t2 >= -T2 + 1 && t2 <= T2 - 1 &&
         std::abs(t1) % 2 == 1 && std::abs(t2) % 2 == 1;
}

std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

DomainSpec make_domain(DomainKind kind, int n1_max, int n2_max) {
  if (n1_max < 1 || n2_max < 1)
    throw std::invalid_argument("make_domain: N1 and N2 must be positive");
  return DomainSpec{kind, n1_max, n2_max};
}

bool domain_contains(const DomainSpec& d, LatticePoint p) {
  const int t1 = p.n1.twice(), t2 = p.n2.twice();
  const int T1 = 2 * d.n1_max, T2 = 2 * d.n2_max;
  switch (d.kind) {
    case DomainKind::U:
      return p.on_primal() && std::abs(t1) <= T1 && std::abs(t2) <= T2;
    case DomainKind::UStar:
      return p.on_dual() && std::abs(t1) <= T1 - 1 && std::abs(t2) <= T2 - 1;
    case DomainKind::V:
      return p.on_primal() && in_raw_V(t1, t2, T1, T2);
    case DomainKind::VStar:
      return p.on_dual() && in_raw_Vstar(t1, t2, T1, T2);
  }
  return false;
}

std::vector<LatticePoint> domain_vertices(const DomainSpec& d) {
  const int T1 = 2 * d.n1_max, T2 = 2 * d.n2_max;
  int lo1 = -T1, hi1 = T1, lo2 = -T2, hi2 = T2;
  if (d.kind == DomainKind::UStar) { ++lo1; --hi1; ++lo2; --hi2; }
  if (d.kind == DomainKind::V) hi1 = 3 * T1;
  if (d.kind == DomainKind::VStar) { ++lo1; hi1 = 3 * T1 - 1; ++lo2; --hi2; }
  std::vector<LatticePoint> out;
  for (int t1 = lo1; t1 <= hi1; t1 += 2)
    for (int t2 = lo2; t2 <= hi2; t2 += 2)
      out.push_back(make_point(t1, t2));
  return out;
}

long long domain_vertex_count(const DomainSpec& d) {
  const long long N1 = d.n1_max, N2 = d.n2_max;
  switch (d.kind) {
    case DomainKind::U:     return (2 * N1 + 1) * (2 * N2 + 1);
    case DomainKind::UStar: return (2 * N1) * (2 * N2);
    case DomainKind::V:     return (4 * N1 + 1) * (2 * N2 + 1);
    case DomainKind::VStar: return (4 * N1) * (2 * N2);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Edges
// ---------------------------------------------------------------------------

LatticeEdge make_edge(LatticePoint a, LatticePoint b) {
  if (b < a) std::swap(a, b);
  return LatticeEdge{a, b};
}

CrossingEdge dual_edge(const DomainSpec& domain, const LatticeEdge& e) {
  if (domain.kind != DomainKind::U && domain.kind != DomainKind::UStar)
    throw std::invalid_argument("dual_edge: expects a U/U* domain spec");
  const int t1a = e.a.n1.twice(), t2a = e.a.n2.twice();
  const int t1b = e.b.n1.twice(), t2b = e.b.n2.twice();
  const bool same_lattice = (e.a.on_primal() && e.b.on_primal()) || (e.a.on_dual() && e.b.on_dual());
  const bool horizontal = (t2a == t2b) && (t1b - t1a == 2);
  const bool vertical = (t1a == t1b) && (t2b - t2a == 2);
  if (!same_lattice || (!horizontal && !vertical))
    throw std::invalid_argument("dual_edge: not a unit edge of one sublattice");

  LatticeEdge cross;
  if (horizontal) {
    const int m1 = t1a + 1;  // midpoint coordinate (half-odd vs the edge's lattice)
    cross = make_edge(make_point(m1, t2a - 1), make_point(m1, t2a + 1));
  } else {
    const int m2 = t2a + 1;
    cross = make_edge(make_point(t1a - 1, m2), make_point(t1a + 1, m2));
  }
  DomainSpec partner = domain;
  partner.kind = e.a.on_primal() ? DomainKind::UStar : DomainKind::U;
  const bool complete = domain_contains(partner, cross.a) && domain_contains(partner, cross.b);
  return CrossingEdge{cross, complete};
}

// ---------------------------------------------------------------------------
// IdentificationMap
// ---------------------------------------------------------------------------

IdentificationMap::IdentificationMap(int n1_max, int n2_max) : n1_(n1_max), n2_(n2_max) {
  if (n1_max < 1 || n2_max < 1)
    throw std::invalid_argument("IdentificationMap: N1 and N2 must be positive");
  const int T1 = 2 * n1_max, T2 = 2 * n2_max;

  // primal vertex classes
  for (int t1 = -T1; t1 <= 3 * T1; t1 += 2)
    for (int t2 = -T2; t2 <= T2; t2 += 2) {
      const LatticePoint c = canonical(make_point(t1, t2));
      if (!primal_ids_.count(c)) {
        primal_ids_[c] = -1;  // assigned below in sorted order
      }
    }
  for (auto& [p, id] : primal_ids_) {
    id = static_cast<int>(primal_verts_.size());
    primal_verts_.push_back(p);
  }

  // dual vertices (no identification)
  for (int t1 = -T1 + 1; t1 <= 3 * T1 - 1; t1 += 2)
    for (int t2 = -T2 + 1; t2 <= T2 - 1; t2 += 2) {
      const LatticePoint p = make_point(t1, t2);
      dual_ids_[p] = static_cast<int>(dual_verts_.size());
      dual_verts_.push_back(p);
    }

  // umbilic vertices: where g1 and g2 vanish simultaneously
  umbilic_verts_ = {primal_id(make_point(T1, T2)), primal_id(make_point(T1, -T2)),
                    primal_id(make_point(-T1, T2)), primal_id(make_point(-T1, -T2))};

  // primal faces, uniform orientation in glued coordinates
  std::map<std::pair<int, int>, int> primal_face_of_anchor;
  for (int t1 = -T1; t1 < 3 * T1; t1 += 2)
    for (int t2 = -T2; t2 < T2; t2 += 2) {
      primal_face_of_anchor[{t1, t2}] = static_cast<int>(primal_faces_.size());
      primal_faces_.push_back({primal_id(make_point(t1, t2)), primal_id(make_point(t1 + 2, t2)),
                               primal_id(make_point(t1 + 2, t2 + 2)),
                               primal_id(make_point(t1, t2 + 2))});
    }

  // primal edges from faces
  std::map<std::pair<int, int>, int> primal_edge_ids;
  for (const auto& f : primal_faces_)
    for (int i = 0; i < 4; ++i) {
      const int u = f[i], v = f[(i + 1) % 4];
      if (u == v) continue;
      const auto k = key(u, v);
      if (!primal_edge_ids.count(k)) {
        primal_edge_ids[k] = static_cast<int>(primal_edges_.size());
        primal_edges_.push_back(k);
      }
    }

  // dual edges: copy-internal lattice edges first, then the glue families
  std::set<std::pair<int, int>> seen;
  auto push_dual = [&](LatticePoint a, LatticePoint b, bool glue, LatticeEdge crossing) {
    const auto k = key(dual_id(a), dual_id(b));
    if (seen.count(k)) {
      // covered by a second gluing rule: one of the four umbilic edges
      for (std::size_t i = 0; i < dual_edges_.size(); ++i)
        if (key(dual_edges_[i].a, dual_edges_[i].b) == k) dual_edges_[i].umbilic = true;
      return;
    }
    seen.insert(k);
    const int pe = primal_edge_ids.at(
        key(primal_id(crossing.a), primal_id(crossing.b)));
    dual_edges_.push_back(DualEdgeRec{k.first, k.second, glue, false});
    dual_to_primal_edge_.push_back(pe);
  };

  for (int t1 = -T1 + 1; t1 <= 3 * T1 - 1; t1 += 2)
    for (int t2 = -T2 + 1; t2 <= T2 - 1; t2 += 2) {
      if (t1 + 2 <= 3 * T1 - 1 && t1 + 1 != T1)  // horizontal, not crossing the seam
        push_dual(make_point(t1, t2), make_point(t1 + 2, t2), false,
                  make_edge(make_point(t1 + 1, t2 - 1), make_point(t1 + 1, t2 + 1)));
      if (t2 + 2 <= T2 - 1)
        push_dual(make_point(t1, t2), make_point(t1, t2 + 2), false,
                  make_edge(make_point(t1 - 1, t2 + 1), make_point(t1 + 1, t2 + 1)));
    }
  // seam glue: (N1-1/2, n2) -- (N1+1/2, n2), crossing the primal seam edge
  for (int t2 = -T2 + 1; t2 <= T2 - 1; t2 += 2)
    push_dual(make_point(T1 - 1, t2), make_point(T1 + 1, t2), true,
              make_edge(make_point(T1, t2 - 1), make_point(T1, t2 + 1)));
  // fold glue along the rows n2 = +-N2: (n1, r) -- (2N1-n1, r)
  for (int r : {T2 - 1, -T2 + 1})
    for (int t = -T1 + 1; t <= T1 - 1; t += 2)
      push_dual(make_point(t, r), make_point(2 * T1 - t, r), true,
                make_edge(make_point(t - 1, r > 0 ? T2 : -T2),
                          make_point(t + 1, r > 0 ? T2 : -T2)));
  // outer glue: (-N1+1/2, n2) -- (3N1-1/2, n2)
  for (int t2 = -T2 + 1; t2 <= T2 - 1; t2 += 2)
    push_dual(make_point(-T1 + 1, t2), make_point(3 * T1 - 1, t2), true,
              make_edge(make_point(-T1, t2 - 1), make_point(-T1, t2 + 1)));

  {
    int k = 0;
    for (std::size_t i = 0; i < dual_edges_.size() && k < 4; ++i)
      if (dual_edges_[i].umbilic) umbilic_edges_[k++] = static_cast<int>(i);
    if (k != 4) throw std::logic_error("IdentificationMap: expected four umbilic edges");
  }

  // dual faces: one per primal vertex class except the umbilics
  dual_face_of_primal_.assign(primal_verts_.size(), -1);
  primal_face_of_dual_.assign(dual_verts_.size(), -1);
  for (std::size_t pid = 0; pid < primal_verts_.size(); ++pid) {
    if (std::count(umbilic_verts_.begin(), umbilic_verts_.end(), static_cast<int>(pid))) continue;
    const LatticePoint p = primal_verts_[pid];
    const int t1 = p.n1.twice(), t2 = p.n2.twice();
    std::array<int, 4> q;
    if (std::abs(t2) == T2) {
      // row-boundary class {(t1,r), (2T1-t1,r)}; face around the inner row
      const int v1 = 2 * T1 - t1;
      const int inner = (t2 > 0) ? T2 - 1 : -T2 + 1;
      q = {dual_id(make_point(t1 - 1, inner)), dual_id(make_point(t1 + 1, inner)),
           dual_id(make_point(v1 - 1, inner)), dual_id(make_point(v1 + 1, inner))};
    } else if (t1 == -T1) {
      // outer-column class {(-T1,t2), (3T1,t2)}
      q = {dual_id(make_point(-T1 + 1, t2 - 1)), dual_id(make_point(-T1 + 1, t2 + 1)),
           dual_id(make_point(3 * T1 - 1, t2 + 1)), dual_id(make_point(3 * T1 - 1, t2 - 1))};
    } else {
      q = {dual_id(make_point(t1 - 1, t2 - 1)), dual_id(make_point(t1 + 1, t2 - 1)),
           dual_id(make_point(t1 + 1, t2 + 1)), dual_id(make_point(t1 - 1, t2 + 1))};
    }
    dual_face_of_primal_[pid] = static_cast<int>(dual_faces_.size());
    dual_faces_.push_back(q);
  }
  for (std::size_t did = 0; did < dual_verts_.size(); ++did) {
    const LatticePoint p = dual_verts_[did];
    primal_face_of_dual_[did] =
        primal_face_of_anchor.at({p.n1.twice() - 1, p.n2.twice() - 1});
  }

  // orient the dual faces consistently by adjacency propagation from face 0
  {
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (std::size_t fi = 0; fi < dual_faces_.size(); ++fi)
      for (int i = 0; i < 4; ++i)
        by_edge[key(dual_faces_[fi][i], dual_faces_[fi][(i + 1) % 4])].push_back(
            static_cast<int>(fi));
    std::vector<char> done(dual_faces_.size(), 0);
    std::queue<int> bfs;
    bfs.push(0);
    done[0] = 1;
    auto direction = [&](const std::array<int, 4>& f, int u, int v) {
      for (int i = 0; i < 4; ++i)
        if (f[i] == u && f[(i + 1) % 4] == v) return +1;
      return -1;
    };
    while (!bfs.empty()) {
      const int fi = bfs.front();
      bfs.pop();
      for (int i = 0; i < 4; ++i) {
        const int u = dual_faces_[fi][i], v = dual_faces_[fi][(i + 1) % 4];
        for (int gj : by_edge.at(key(u, v))) {
          if (gj == fi || done[gj]) continue;
          // shared edge must be traversed in opposite directions
          if (direction(dual_faces_[gj], u, v) == +1)
            std::reverse(dual_faces_[gj].begin(), dual_faces_[gj].end());
          done[gj] = 1;
          bfs.push(gj);
        }
      }
    }
  }
}

LatticePoint IdentificationMap::canonical(LatticePoint v) const {
  const int T1 = 2 * n1_, T2 = 2 * n2_;
  int t1 = v.n1.twice(), t2 = v.n2.twice();
  if (!in_raw_V(t1, t2, T1, T2))
    throw std::invalid_argument("IdentificationMap::canonical: point outside V");
  std::set<std::pair<int, int>> orbit{{t1, t2}};
  for (bool grew = true; grew;) {
    grew = false;
    std::set<std::pair<int, int>> next = orbit;
    for (auto [u1, u2] : orbit) {
      if (std::abs(u2) == T2) next.insert({2 * T1 - u1, u2});
      if (u1 == -T1) next.insert({3 * T1, u2});
      if (u1 == 3 * T1) next.insert({-T1, u2});
    }
    if (next.size() != orbit.size()) { orbit = std::move(next); grew = true; }
  }
  const auto [m1, m2] = *orbit.begin();
  return make_point(m1, m2);
}

int IdentificationMap::primal_id(LatticePoint v) const { return primal_ids_.at(canonical(v)); }
int IdentificationMap::dual_id(LatticePoint v) const { return dual_ids_.at(v); }

int IdentificationMap::dual_face_of_primal_vertex(int pid) const {
  return dual_face_of_primal_.at(pid);
}
int IdentificationMap::primal_face_of_dual_vertex(int did) const {
  return primal_face_of_dual_.at(did);
}

// ---------------------------------------------------------------------------
// Diagonal polygons
// ---------------------------------------------------------------------------

std::vector<DiagonalPath> diagonal_polygons(const DomainSpec& d) {
  if (d.kind != DomainKind::U && d.kind != DomainKind::UStar)
    throw std::invalid_argument("diagonal_polygons: open form expects U or U*");
  const int T1 = 2 * d.n1_max, T2 = 2 * d.n2_max;
  const int b1 = (d.kind == DomainKind::U) ? T1 : T1 - 1;
  const int b2 = (d.kind == DomainKind::U) ? T2 : T2 - 1;
  const int par = (d.kind == DomainKind::U) ? 0 : 1;
  std::vector<DiagonalPath> out;
  for (int family : {+1, -1}) {
    for (int L = -(b1 + b2) / 2; L <= (b1 + b2) / 2; ++L) {
      DiagonalPath path;
      path.family = family;
      path.level = HalfIndex::from_twice(L);
      for (int t1 = -b1; t1 <= b1; t1 += 2) {
        if (std::abs(t1) % 2 != par) continue;
        const int t2 = family * (2 * L - t1);
        if (std::abs(t2) > b2 || std::abs(t2) % 2 != par) continue;
        path.points.push_back(make_point(t1, t2));
      }
      if (!path.points.empty()) out.push_back(std::move(path));
    }
  }
  return out;
}

namespace {

// Raw interleaved points of a glued diagonal level over V u V*,
// cyclic order; primal points not yet canonicalized.
std::vector<LatticePoint> raw_level_cycle(int N1, int N2, int family, int Ltwice) {
  const int T1 = 2 * N1, T2 = 2 * N2;
  std::vector<LatticePoint> seq;
  // region 1 (chart n1 <= N1): t1 + family*t2 = 2L
  for (int t1 = -T1; t1 <= T1; ++t1) {
    const int t2 = family * (2 * Ltwice - t1);
    if (std::abs(t2) > T2) continue;
    const bool prim = (t1 % 2 == 0);
    if (prim != (t2 % 2 == 0)) continue;
    if (!prim && (std::abs(t1) > T1 - 1 || std::abs(t2) > T2 - 1)) continue;
    seq.push_back(make_point(t1, t2));
  }
  // region 2: reflected chart, t1 - family*t2 = 2*T1 - 2L
  for (int t1 = T1; t1 <= 3 * T1; ++t1) {
    const int t2 = family * (t1 - (2 * T1 - 2 * Ltwice));
    if (std::abs(t2) > T2) continue;
    const bool prim = (std::abs(t1) % 2 == 0);
    if (prim != (std::abs(t2) % 2 == 0)) continue;
    if (!prim && (t1 < -T1 + 1 || t1 > 3 * T1 - 1 || std::abs(t2) > T2 - 1)) continue;
    seq.push_back(make_point(t1, t2));
  }
  return seq;
}

}  // namespace

std::vector<LatticePoint> diagonal_level_cycle(const IdentificationMap& ident, int family,
                                               HalfIndex level) {
  const auto raw = raw_level_cycle(ident.n1_max(), ident.n2_max(), family, level.twice());
  std::vector<LatticePoint> out;
  for (const LatticePoint& p : raw) {
    const LatticePoint c = p.on_primal() ? ident.canonical(p) : p;
    if (out.empty() || !(out.back() == c)) out.push_back(c);
  }
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

std::vector<LatticePoint> diagonal_level_chain(int n1_max, int n2_max, int family,
                                               HalfIndex level) {
  const int T1 = 2 * n1_max, T2 = 2 * n2_max;
  std::vector<LatticePoint> seq;
  for (int t1 = -T1; t1 <= T1; ++t1) {
    const int t2 = family * (2 * level.twice() - t1);
    if (std::abs(t2) > T2) continue;
    const bool prim = (std::abs(t1) % 2 == 0);
    if (prim != (std::abs(t2) % 2 == 0)) continue;
    if (!prim && (std::abs(t1) > T1 - 1 || std::abs(t2) > T2 - 1)) continue;
    seq.push_back(make_point(t1, t2));
  }
  return seq;
}

std::vector<DiagonalPath> diagonal_polygons(const DomainSpec& d, const IdentificationMap& ident) {
  if (d.kind != DomainKind::V && d.kind != DomainKind::VStar)
    throw std::invalid_argument("diagonal_polygons: glued form expects V or V*");
  if (d.n1_max != ident.n1_max() || d.n2_max != ident.n2_max())
    throw std::invalid_argument("diagonal_polygons: domain/identification mismatch");
  const int N1 = d.n1_max, N2 = d.n2_max;
  const bool primal = (d.kind == DomainKind::V);
  std::vector<DiagonalPath> out;
  for (int family : {+1, -1}) {
    for (int L = -(N1 + N2); L <= N1 + N2; ++L) {
      const auto cycle = diagonal_level_cycle(ident, family, HalfIndex::from_twice(L));
      DiagonalPath path;
      path.family = family;
      path.level = HalfIndex::from_twice(L);
      for (const LatticePoint& p : cycle)
        if (p.on_primal() == primal) path.points.push_back(p);
      if (path.points.empty()) continue;
      path.closed = true;
      out.push_back(std::move(path));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Surface bookkeeping
// ---------------------------------------------------------------------------

SurfaceTopology analyze_complex(int vertex_count, const std::vector<std::array<int, 4>>& faces,
                                const std::vector<std::pair<int, int>>& edges) {
  SurfaceTopology t;
  t.vertex_count = vertex_count;
  t.edge_count = static_cast<long long>(edges.size());
  t.face_count = static_cast<long long>(faces.size());
  t.euler = t.vertex_count - t.edge_count + t.face_count;

  std::map<std::pair<int, int>, int> undirected;
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : faces)
    for (int i = 0; i < 4; ++i) {
      const int u = f[i], v = f[(i + 1) % 4];
      if (u == v) continue;
      ++undirected[key(u, v)];
      ++directed[{u, v}];
    }
  const std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
  t.closed = undirected.size() == edge_set.size();
  for (const auto& [e, c] : undirected)
    if (c != 2 || !edge_set.count(e)) t.closed = false;
  t.consistently_oriented = true;
  for (const auto& [e, c] : directed)
    if (c != 1) t.consistently_oriented = false;
  std::vector<int> val(vertex_count, 0);
  for (const auto& [u, v] : edge_set) { ++val[u]; ++val[v]; }
  for (int v : val) ++t.valence_histogram[v];
  return t;
}

SurfaceTopology primal_topology(const IdentificationMap& ident) {
  return analyze_complex(static_cast<int>(ident.primal_vertices().size()), ident.primal_faces(),
                         ident.primal_edges());
}

SurfaceTopology dual_topology(const IdentificationMap& ident) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(ident.dual_edges().size());
  for (const auto& e : ident.dual_edges()) edges.emplace_back(e.a, e.b);
  return analyze_complex(static_cast<int>(ident.dual_vertices().size()), ident.dual_faces(),
                         edges);
}

}  // namespace binet
