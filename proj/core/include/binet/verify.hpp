#pragma once

#include <string>
#include <vector>

#include "binet/builder.hpp"

namespace binet {

struct CheckEntry {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string worst_element;  // description of the worst offender
  long long checked = 0;      // number of elements examined
  bool skipped = false;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckEntry> entries;
  bool overall_pass = true;

  void add(CheckEntry e);
  void add(std::vector<CheckEntry> es);
  /// Canonical report order: sorted by check name.
  void finalize();
};

inline constexpr double kDefaultTol = 1e-9;

// --- principal binet certificates ------------------------------------------

/// face_planarity + dual_orthogonality on the open half.
std::vector<CheckEntry> check_principal(const SemiBinet& sb, double tol = kDefaultTol);
/// Same on the glued pair; includes the boundary faces and glue edges.
std::vector<CheckEntry> check_principal(const ClosedEllipsoidPair& pair, double tol = kDefaultTol);

/// Vertex/plane polarity (per diagonal vertex pair) w.r.t. the underlying
/// quadric: residual of x x'/alpha + y y'/beta + z z'/gamma - 1.
CheckEntry check_polarity(const SemiBinet& sb, double tol = kDefaultTol);
CheckEntry check_polarity(const ClosedEllipsoidPair& pair, double tol = kDefaultTol);

// --- discrete circles --------------------------------------------------------

/// coplanarity, in-family parallelism, the discrete-circle relation, and the
/// match between circle planes and the classical cross-section planes.
std::vector<CheckEntry> check_circles(const ClosedEllipsoidPair& pair, double tol = kDefaultTol);
std::vector<CheckEntry> check_circles(const SemiBinet& sb,
                                      const std::vector<DiscreteCircle>& circles,
                                      double tol = kDefaultTol);

/// Tangent-cone apex per circle: concurrency of the face planes, apex =
/// pole of the circle plane, and collinearity with the opposite umbilic
/// vertices. Central circles have their apex at infinity; directions are
/// compared there.
CheckEntry check_cone_apex(const ClosedEllipsoidPair& pair, double tol = kDefaultTol);

/// Isometric deformation: circles matched by (family, level) across two
/// members must be congruent (distance multisets + rigid alignment).
CheckEntry check_congruence(const ClosedEllipsoidPair& a, const ClosedEllipsoidPair& b,
                            double tol = kDefaultTol);

// --- boundary / umbilics ----------------------------------------------------

CheckEntry check_boundary_and_signs(const GFunctions& g, const ShapeParams& p,
                                    double tol = kDefaultTol);

/// F37 analogue of the focal hyperbola at the umbilic/dual vertex pair, for
/// a family of pairs sampled over s3 (members with no unscaled confocal
/// counterpart, s3 >= s3_circ, are skipped).
CheckEntry check_focal_hyperbola(const std::vector<ClosedEllipsoidPair>& family,
                                 double tol = kDefaultTol);

/// chi = 2 on both meshes, closed and consistently oriented, 4 primal
/// valence-2 vertices, 8 dual valence-3 vertices, 4 umbilic glue edges, and
/// degenerate circle levels coinciding with the umbilic vertices/edges.
CheckEntry check_closed_topology(const ClosedEllipsoidPair& pair);

// --- 3D lattice ---------------------------------------------------------------

/// Each primal lattice edge orthogonal to its four dual edges.
CheckEntry check_bcc(const ConfocalLattice3D& lat, double tol = kDefaultTol);

// --- suites -------------------------------------------------------------------

/// The full per-instance suite on one glued pair.
VerificationReport verify_pair(const ClosedEllipsoidPair& pair, double tol = kDefaultTol);

}  // namespace binet
