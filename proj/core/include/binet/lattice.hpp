#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binet/half_index.hpp"

namespace binet {

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

/// U/U*: the domain pair of one semi-ellipsoid. V/V*: the glued double
/// domains whose quotients carry the closed ellipsoid pair.
enum class DomainKind { U, UStar, V, VStar };

struct DomainSpec {
  DomainKind kind = DomainKind::U;
  int n1_max = 1;  // N1
  int n2_max = 1;  // N2
};

/// Throws std::invalid_argument unless N1, N2 >= 1.
DomainSpec make_domain(DomainKind kind, int n1_max, int n2_max);

bool domain_contains(const DomainSpec& d, LatticePoint p);

/// All vertices of the domain in lexicographic order.
std::vector<LatticePoint> domain_vertices(const DomainSpec& d);

/// Closed-form vertex count (raw, before any identification).
long long domain_vertex_count(const DomainSpec& d);

// ---------------------------------------------------------------------------
// Edges
// ---------------------------------------------------------------------------

/// Undirected lattice edge, endpoints ordered so that a < b.
struct LatticeEdge {
  LatticePoint a, b;
  friend constexpr auto operator<=>(const LatticeEdge&, const LatticeEdge&) = default;
};

LatticeEdge make_edge(LatticePoint a, LatticePoint b);

struct CrossingEdge {
  LatticeEdge edge;
  bool complete;  // both endpoints inside the partner domain of the U/U* pair
};

/// The dual partner of a sublattice edge: ((n1-1/2,n2),(n1+1/2,n2)) maps to
/// ((n1,n2-1/2),(n1,n2+1/2)) and vice versa. `domain` must be a U or U*
/// spec; completeness is judged against the other member of the pair.
/// Throws std::invalid_argument if `e` is not a unit edge of one sublattice.
CrossingEdge dual_edge(const DomainSpec& domain, const LatticeEdge& e);

// ---------------------------------------------------------------------------
// Identification map (gluing of the closed pair)
// ---------------------------------------------------------------------------

struct DualEdgeRec {
  int a, b;       // dual vertex ids
  bool glue;      // inserted by the gluing, as opposed to a copy-internal edge
  bool umbilic;   // one of the four edges covered by two gluing rules
};

/// Quotient combinatorics of the glued domains V and V*. Primal vertices of
/// V are identified along the boundary ((n1,+-N2) ~ (2N1-n1,+-N2) and
/// (-N1,n2) ~ (3N1,n2)); dual vertices of V* are all distinct and the two
/// U* copies are joined by explicit glue edges. Both quotients are closed
/// spheres (checked by the test suite, Euler characteristic 2).
class IdentificationMap {
 public:
  IdentificationMap(int n1_max, int n2_max);

  int n1_max() const { return n1_; }
  int n2_max() const { return n2_; }

  /// Canonical representative (lexicographic minimum) of a primal vertex
  /// class of V. Requires an integer point inside V.
  LatticePoint canonical(LatticePoint v) const;

  int primal_id(LatticePoint v) const;  // id of canonical(v)
  int dual_id(LatticePoint v) const;    // dual points are their own class

  const std::vector<LatticePoint>& primal_vertices() const { return primal_verts_; }
  const std::vector<LatticePoint>& dual_vertices() const { return dual_verts_; }

  // faces as vertex-id quads; a uniform orientation in glued coordinates
  // (globally consistent; the outward flip is applied by the geometry layer)
  const std::vector<std::array<int, 4>>& primal_faces() const { return primal_faces_; }
  const std::vector<std::array<int, 4>>& dual_faces() const { return dual_faces_; }

  const std::vector<std::pair<int, int>>& primal_edges() const { return primal_edges_; }
  const std::vector<DualEdgeRec>& dual_edges() const { return dual_edges_; }

  const std::array<int, 4>& umbilic_vertex_ids() const { return umbilic_verts_; }
  /// Indices into dual_edges() of the four umbilic edges.
  const std::array<int, 4>& umbilic_edge_ids() const { return umbilic_edges_; }

  /// Face of the other complex centred at a vertex; -1 for the four umbilic
  /// vertices, whose dual face degenerates to the umbilic edge.
  int dual_face_of_primal_vertex(int primal_id) const;
  int primal_face_of_dual_vertex(int dual_id) const;

  /// Primal edge crossed by each dual edge (same indexing as dual_edges()).
  const std::vector<int>& crossing_primal_edge() const { return dual_to_primal_edge_; }

 private:
  int n1_, n2_;
  std::vector<LatticePoint> primal_verts_, dual_verts_;
  std::map<LatticePoint, int> primal_ids_, dual_ids_;
  std::vector<std::array<int, 4>> primal_faces_, dual_faces_;
  std::vector<std::pair<int, int>> primal_edges_;
  std::vector<DualEdgeRec> dual_edges_;
  std::vector<int> dual_to_primal_edge_;
  std::array<int, 4> umbilic_verts_{}, umbilic_edges_{};
  std::vector<int> dual_face_of_primal_, primal_face_of_dual_;
};

// ---------------------------------------------------------------------------
// Diagonal polygons
// ---------------------------------------------------------------------------

struct DiagonalPath {
  int family = +1;   // +1: constant n_+ = (n1+n2)/2, -1: constant n_- = (n1-n2)/2
  HalfIndex level;   // the constant, in the n1 <= N1 chart
  std::vector<LatticePoint> points;  // path order; raw chart coordinates
  bool closed = false;
};

/// Diagonal polygons of a single-sublattice domain. On U/U* these are the
/// open polylines n_+ = const and n_- = const. Requires kind U or U*.
std::vector<DiagonalPath> diagonal_polygons(const DomainSpec& d);

/// Diagonal polygons on the glued domains. Paths switch diagonal direction
/// at every gluing line and close into loops; on V* the seam and fold glue
/// edges are traversed. `kind` selects V (primal loops, points given as
/// canonical representatives) or V* (dual loops).
std::vector<DiagonalPath> diagonal_polygons(const DomainSpec& d, const IdentificationMap& ident);

/// The full pre-image of one discrete circle: primal and dual points of the
/// level interleaved in cyclic order over the glued domain pair. Degenerate
/// levels (|level| = (N1+N2)/2) yield the single umbilic vertex.
std::vector<LatticePoint> diagonal_level_cycle(const IdentificationMap& ident, int family,
                                               HalfIndex level);

/// Open counterpart on U u U*: the interleaved chain of one semi-circle.
std::vector<LatticePoint> diagonal_level_chain(int n1_max, int n2_max, int family,
                                               HalfIndex level);

// ---------------------------------------------------------------------------
// Surface bookkeeping
// ---------------------------------------------------------------------------

struct SurfaceTopology {
  long long vertex_count = 0, edge_count = 0, face_count = 0;
  long long euler = 0;
  bool closed = false;           // every edge bounds exactly two faces
  bool consistently_oriented = false;  // each directed edge used exactly once
  std::map<int, int> valence_histogram;
};

/// Edge/face incidence analysis of a quad complex given by oriented faces
/// and an explicit undirected edge list.
SurfaceTopology analyze_complex(int vertex_count, const std::vector<std::array<int, 4>>& faces,
                                const std::vector<std::pair<int, int>>& edges);

SurfaceTopology primal_topology(const IdentificationMap& ident);
SurfaceTopology dual_topology(const IdentificationMap& ident);

}  // namespace binet
