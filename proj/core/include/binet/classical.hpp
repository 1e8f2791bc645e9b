#pragma once

#include <Eigen/Dense>
#include <array>

namespace binet {

using Vec3 = Eigen::Vector3d;

/// Diagonal quadric x^2/alpha + y^2/beta + z^2/gamma = 1.
struct QuadricForm {
  double alpha = 3.0, beta = 2.0, gamma = 1.0;

  bool generic() const { return alpha > beta && beta > gamma && gamma > 0; }
  /// Planar members of the extended deformation family (vanishing axis).
  bool degenerate(double tol = 1e-14) const {
    return !(alpha > tol && beta > tol && gamma > tol);
  }
  double evaluate(const Vec3& p) const {
    return p.x() * p.x() / alpha + p.y() * p.y() / beta + p.z() * p.z() / gamma;
  }
};

/// Plane normal . x = offset with |normal| = 1.
struct PlaneH {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;

  double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

PlaneH make_plane(const Vec3& direction, double rhs);  // normalizes; throws on zero direction

/// Confocal parameters -a < u1 < -b < u2 < -c < u3 plus octant signs.
struct ConfocalPoint {
  double u1, u2, u3;
  std::array<int, 3> signs{+1, +1, +1};
};

/// Explicit confocal coordinates: x^2 = (u1+a)(u2+a)(u3+a)/((a-b)(a-c)) and
/// cyclic. Boundary parameter values (planar quadrics) are admitted; strict
/// ordering violations throw std::invalid_argument.
Vec3 confocal_point(const ConfocalPoint& cp, double a, double b, double c);

/// The circular cross-section planes
/// sqrt(1/beta - 1/alpha) x +- sqrt(1/gamma - 1/beta) z = mu,
/// mu in [-sqrt((alpha-gamma)/beta), +sqrt((alpha-gamma)/beta)].
/// `sign` is +1 or -1; mu outside the closed range throws.
PlaneH circular_plane(const QuadricForm& q, int sign, double mu);

double circular_mu_max(const QuadricForm& q);

/// The four umbilic points (+-sqrt(alpha(alpha-beta)/(alpha-gamma)), 0,
/// +-sqrt(gamma(beta-gamma)/(alpha-gamma))), signs independent.
std::array<Vec3, 4> umbilic_points(const QuadricForm& q);

/// Curvature line parametrization of one half (hemisphere = +-1 picks the
/// sign of y) with circular diagonals s1 +- s2 = const. Domain
/// |s1| <= arcsin sqrt((alpha-beta)/(alpha-gamma)),
/// |s2| <= arccos sqrt((alpha-beta)/(alpha-gamma)); violations throw.
Vec3 diag_param(const QuadricForm& q, int hemisphere, double s1, double s2);

std::pair<double, double> diag_param_bounds(const QuadricForm& q);  // (s1_max, s2_max)

/// The deformation family member
/// (b-c)/(a-c) x^2/cos^2 s3 + y^2 + (a-b)/(a-c) z^2/sin^2 s3 = 1 at s3,
/// parametrized so that s1 +- s2 = const are congruent circles across s3.
Vec3 family_param(double a, double b, double c, int hemisphere, double s1, double s2, double s3);

/// Quadric of the family member at s3 (degenerate at s3 = 0, pi/2).
QuadricForm family_quadric(double a, double b, double c, double s3);

struct AffineCheck {
  bool ok;
  double residual;  // |alpha(beta-gamma) s1^2 + gamma(alpha-beta) s3^2 - beta(alpha-gamma)|, relative
};

/// Whether (x,y,z) -> (sigma1 x, y, sigma3 z) is isometric on the circular
/// cross sections of q.
AffineCheck affine_isometric_check(const QuadricForm& q, double sigma1, double sigma3,
                                   double tol = 1e-12);

/// Shape ratio (a-b)/(a-c) = cos^2(M2 pi / (2(M1+M2))) required for a
/// closed sampled web with 2*M1 and 2*M2 curvature lines.
double web_closing(int M1, int M2);

struct PoleResult {
  Vec3 point = Vec3::Zero();   // or unit direction when at_infinity
  bool at_infinity = false;
};

/// Pole of a plane w.r.t. the quadric: (alpha p, beta q, gamma r)/s for the
/// plane px+qy+rz = s. Planes through the centre have their pole at
/// infinity and are reported as a direction.
PoleResult pole(const PlaneH& plane, const QuadricForm& q);

/// Polar plane of a point (tangent plane for points on the quadric).
/// Throws for the centre.
PlaneH polar_plane(const Vec3& point, const QuadricForm& q);

}  // namespace binet
