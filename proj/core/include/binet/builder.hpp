#pragma once

#include <array>
#include <map>
#include <vector>

#include "binet/classical.hpp"
#include "binet/half_index.hpp"
#include "binet/lattice.hpp"
#include "binet/shape.hpp"

namespace binet {

// ---------------------------------------------------------------------------
// Discrete circles
// ---------------------------------------------------------------------------

struct CircleVertex {
  LatticePoint p;   // canonical chart coordinates
  bool dual = false;
  int id = -1;      // canonical vertex id on glued pairs, -1 on semi-binets
};

/// One diagonal level of one family: the interleaved primal/dual polygon
/// that discretizes a circular cross section (Def. of discrete circles: each
/// vertex is the pole of the line through its neighbours w.r.t. the circle
/// (center, radius) inside `plane`).
struct DiscreteCircle {
  int family = +1;
  HalfIndex level;  // (n1 + family*n2)/2 in the n1 <= N1 chart
  std::vector<CircleVertex> vertices;
  bool closed = false;
  bool degenerate = false;  // umbilic level (single vertex / vertex + edge)

  PlaneH plane;             // fitted; umbilic polar plane when degenerate
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  double plane_residual = 0.0;     // max out-of-plane distance / diameter
  double relation_residual = 0.0;  // discrete-circle relation, relative
};

// ---------------------------------------------------------------------------
// Semi-ellipsoid (one half, domain U u U*)
// ---------------------------------------------------------------------------

struct SemiBinet {
  ShapeParams shape;
  double s3 = 0.0;
  int hemisphere = +1;          // sign of g1(0)
  double g1_0 = 0.0, g2_0 = 0.0;  // signed initial values actually used
  QuadricForm quadric;          // underlying classical quadric (f3^2, 1, h3^2)
  GFunctions g;

  DomainSpec primal_domain, dual_domain;
  std::vector<LatticePoint> points;            // U u U*, lexicographic
  std::map<LatticePoint, Vec3> positions;

  const Vec3& r(LatticePoint p) const { return positions.at(p); }
  bool contains(LatticePoint p) const { return positions.count(p) != 0; }
};

/// Vertex map (family form): r = (f1 f2 f3_hat, g1 g2, h1 h2 h3_hat) over
/// U u U* with the usual normalizing denominators. g1_0's sign is flipped
/// for hemisphere = -1.
SemiBinet build_semi_ellipsoid(const ShapeParams& p, double s3, int hemisphere, double g1_0,
                               double g2_0);

/// Vertex map for a single discrete ellipsoid with prescribed quadric
/// (alpha, beta, gamma) and step delta (closure conditions not enforced).
SemiBinet build_single_ellipsoid(double alpha, double beta, double gamma, double delta,
                                 int n1_max, int n2_max, double g1_0, double g2_0,
                                 int hemisphere);

/// Open discrete semi-circles (one per family and diagonal level).
std::vector<DiscreteCircle> extract_discrete_circles(const SemiBinet& sb);

// ---------------------------------------------------------------------------
// Closed ellipsoid pair
// ---------------------------------------------------------------------------

struct MeshBuffers {
  std::vector<Vec3> positions;                // by canonical vertex id
  std::vector<std::array<int, 4>> faces;      // outward-oriented quads
  std::vector<std::pair<int, int>> edges;
};

struct ClosedEllipsoidPair {
  ShapeParams shape;
  double s3 = 0.0;
  QuadricForm quadric;
  IdentificationMap ident;

  MeshBuffers primal, dual;
  std::array<int, 4> umbilic_vertices{};  // primal ids, valence 2
  std::array<int, 4> umbilic_edges{};     // indices into ident.dual_edges()
  std::vector<DiscreteCircle> circles;

  double seam_residual = 0.0;  // worst boundary coincidence mismatch, relative

  const Vec3& primal_pos(LatticePoint p) const {
    return primal.positions[static_cast<std::size_t>(ident.primal_id(p))];
  }
  const Vec3& dual_pos(LatticePoint p) const {
    return dual.positions[static_cast<std::size_t>(ident.dual_id(p))];
  }
};

/// Glues the two hemispheres along their common boundary (F35). Both halves
/// must share ShapeParams, s3 and g2_0 and carry opposite g1(0) signs;
/// throws std::invalid_argument on mismatched shapes and std::runtime_error
/// when the boundary coincidence exceeds `tol` (relative to sqrt(a-c)).
ClosedEllipsoidPair glue_closed(const SemiBinet& plus, const SemiBinet& minus,
                                double tol = 1e-7);

/// The circles stored on the pair (closed loops; the two extreme levels per
/// family degenerate to an umbilic vertex plus umbilic edge).
std::vector<DiscreteCircle> extract_discrete_circles(const ClosedEllipsoidPair& pair);

/// Convenience: build both hemispheres with natural initial data and glue.
ClosedEllipsoidPair build_closed_pair(const ShapeParams& p, double s3);

/// Plane of the quad face around a circle vertex (the face of the other
/// mesh centred at it). Returns false for umbilic vertices, which have no
/// spanning dual face.
bool polar_face_plane(const ClosedEllipsoidPair& pair, const CircleVertex& v, PlaneH* out);

// ---------------------------------------------------------------------------
// Discrete confocal coordinates in 3D (the bcc pair)
// ---------------------------------------------------------------------------

struct ConfocalSamplers {
  double a, b, c;
  std::array<SampledFunction, 3> f, g, h;

  /// Max residual of the six functional equations over the common domain.
  double equation_residual() const;
};

/// Trigonometric samplers in directions 1, 2 and hyperbolic samplers in
/// direction 3, with g's from their recurrences (natural initial values);
/// each direction sampled on [-bound, bound].
ConfocalSamplers standard_confocal_samplers(double a, double b, double c,
                                            std::array<double, 3> deltas,
                                            std::array<int, 3> bounds);

struct ConfocalLattice3D {
  double a, b, c;
  std::array<int, 3> bounds;
  std::map<LatticePoint3, Vec3> positions;  // all half-integer triples in the box
  double equation_residual = 0.0;

  const Vec3& r(LatticePoint3 p) const { return positions.at(p); }
  bool contains(LatticePoint3 p) const { return positions.count(p) != 0; }
};

/// Evaluates the product formula over the box; throws std::invalid_argument
/// when the samplers violate the functional equations beyond `tol`.
ConfocalLattice3D build_discrete_confocal_3d(const ConfocalSamplers& s,
                                             std::array<int, 3> bounds, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Shared geometry helpers
// ---------------------------------------------------------------------------

/// Newell plane of a polygon (robust for planar quads, deterministic).
PlaneH newell_plane(const std::vector<Vec3>& pts);

/// Best-fit plane through points: centroid + smallest covariance axis.
PlaneH fit_plane(const std::vector<Vec3>& pts);

}  // namespace binet
