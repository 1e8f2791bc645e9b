#include "binet/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace binet {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

PlaneH make_plane(const Vec3& direction, double rhs) {
  const double len = direction.norm();
  if (len == 0.0) throw std::invalid_argument("make_plane: zero normal");
  return PlaneH{direction / len, rhs / len};
}

Vec3 confocal_point(const ConfocalPoint& cp, double a, double b, double c) {
  if (!(a > b && b > c)) throw std::invalid_argument("confocal_point: need a > b > c");
  if (!(cp.u1 >= -a && cp.u1 <= -b && cp.u2 >= -b && cp.u2 <= -c && cp.u3 >= -c))
    throw std::invalid_argument("confocal_point: parameter ordering violated");
  const double x2 = (cp.u1 + a) * (cp.u2 + a) * (cp.u3 + a) / ((a - b) * (a - c));
  const double y2 = (cp.u1 + b) * (cp.u2 + b) * (cp.u3 + b) / ((b - a) * (b - c));
  const double z2 = (cp.u1 + c) * (cp.u2 + c) * (cp.u3 + c) / ((c - a) * (c - b));
  auto root = [](double v) { return std::sqrt(std::max(v, 0.0)); };
  return Vec3(cp.signs[0] * root(x2), cp.signs[1] * root(y2), cp.signs[2] * root(z2));
}

double circular_mu_max(const QuadricForm& q) {
  return std::sqrt((q.alpha - q.gamma) / q.beta);
}

PlaneH circular_plane(const QuadricForm& q, int sign, double mu) {
  if (!q.generic()) throw std::invalid_argument("circular_plane: quadric not generic");
  if (sign != 1 && sign != -1) throw std::invalid_argument("circular_plane: sign must be +-1");
  const double bound = circular_mu_max(q);
  if (!(mu >= -bound && mu <= bound))
    throw std::invalid_argument("circular_plane: mu outside the admissible range");
  const Vec3 dir(std::sqrt(1.0 / q.beta - 1.0 / q.alpha), 0.0,
                 sign * std::sqrt(1.0 / q.gamma - 1.0 / q.beta));
  return make_plane(dir, mu);
}

std::array<Vec3, 4> umbilic_points(const QuadricForm& q) {
  const double x = std::sqrt(q.alpha * (q.alpha - q.beta) / (q.alpha - q.gamma));
  const double z = std::sqrt(q.gamma * (q.beta - q.gamma) / (q.alpha - q.gamma));
  return {Vec3(x, 0, z), Vec3(x, 0, -z), Vec3(-x, 0, z), Vec3(-x, 0, -z)};
}

std::pair<double, double> diag_param_bounds(const QuadricForm& q) {
  const double r = std::sqrt((q.alpha - q.beta) / (q.alpha - q.gamma));
  return {std::asin(r), std::acos(r)};
}

Vec3 diag_param(const QuadricForm& q, int hemisphere, double s1, double s2) {
  if (hemisphere != 1 && hemisphere != -1)
    throw std::invalid_argument("diag_param: hemisphere must be +-1");
  const auto [s1max, s2max] = diag_param_bounds(q);
  const double slack = 1e-12;
  if (std::abs(s1) > s1max + slack || std::abs(s2) > s2max + slack)
    throw std::invalid_argument("diag_param: (s1, s2) outside the parameter rectangle");
  const double al = q.alpha, be = q.beta, ga = q.gamma;
  // f/h solutions sqrt(alpha-gamma) * sin/cos, and g1 g2 from the quadratic
  // relations; assembling y from g1*g2 keeps the point exactly on the quadric.
  const double g1sq = std::max(al - be - (al - ga) * std::sin(s1) * std::sin(s1), 0.0);
  const double g2sq = std::max((al - ga) * std::cos(s2) * std::cos(s2) - al + be, 0.0);
  const double x = std::sqrt(al * (al - ga) / (al - be)) * std::sin(s1) * std::cos(s2);
  const double y = hemisphere * std::sqrt(be / ((al - be) * (be - ga))) *
                   std::sqrt(g1sq) * std::sqrt(g2sq);
  const double z = std::sqrt(ga * (al - ga) / (be - ga)) * std::cos(s1) * std::sin(s2);
  return Vec3(x, y, z);
}

QuadricForm family_quadric(double a, double b, double c, double s3) {
  const double f3 = std::sqrt((a - c) / (b - c)) * std::cos(s3);
  const double h3 = std::sqrt((a - c) / (a - b)) * std::sin(s3);
  return QuadricForm{f3 * f3, 1.0, h3 * h3};
}

Vec3 family_param(double a, double b, double c, int hemisphere, double s1, double s2, double s3) {
  if (!(a > b && b > c && c > 0)) throw std::invalid_argument("family_param: need a > b > c > 0");
  if (hemisphere != 1 && hemisphere != -1)
    throw std::invalid_argument("family_param: hemisphere must be +-1");
  const double r = std::sqrt((a - b) / (a - c));
  const double s1max = std::asin(r), s2max = std::acos(r), slack = 1e-12;
  if (std::abs(s1) > s1max + slack || std::abs(s2) > s2max + slack)
    throw std::invalid_argument("family_param: (s1, s2) outside the parameter rectangle");
  const double g1sq = std::max(a - b - (a - c) * std::sin(s1) * std::sin(s1), 0.0);
  const double g2sq = std::max((a - c) * std::cos(s2) * std::cos(s2) - a + b, 0.0);
  const double norm = std::sqrt((a - b) * (b - c));
  return Vec3((a - c) * std::sin(s1) * std::cos(s2) * std::cos(s3) / norm,
              hemisphere * std::sqrt(g1sq) * std::sqrt(g2sq) / norm,
              (a - c) * std::cos(s1) * std::sin(s2) * std::sin(s3) / norm);
}

AffineCheck affine_isometric_check(const QuadricForm& q, double sigma1, double sigma3,
                                   double tol) {
  if (!(sigma1 > 0 && sigma3 > 0))
    throw std::invalid_argument("affine_isometric_check: sigma1, sigma3 must be positive");
  const double lhs = q.alpha * (q.beta - q.gamma) * sigma1 * sigma1 +
                     q.gamma * (q.alpha - q.beta) * sigma3 * sigma3;
  const double rhs = q.beta * (q.alpha - q.gamma);
  const double residual = std::abs(lhs - rhs) / std::abs(rhs);
  return AffineCheck{residual <= tol, residual};
}

double web_closing(int M1, int M2) {
  if (M1 < 1 || M2 < 1) throw std::invalid_argument("web_closing: M1, M2 must be positive");
  // half-angle form keeps the symmetric case M1 = M2 exactly at 1/2
  return 0.5 * (1.0 + std::cos(M2 * kPi / (M1 + M2)));
}

PoleResult pole(const PlaneH& plane, const QuadricForm& q) {
  const Vec3 scaled(q.alpha * plane.normal.x(), q.beta * plane.normal.y(),
                    q.gamma * plane.normal.z());
  if (std::abs(plane.offset) < 1e-13 * scaled.norm())
    return PoleResult{scaled.normalized(), true};
  return PoleResult{scaled / plane.offset, false};
}

PlaneH polar_plane(const Vec3& point, const QuadricForm& q) {
  const Vec3 dir(point.x() / q.alpha, point.y() / q.beta, point.z() / q.gamma);
  if (dir.norm() == 0.0) throw std::invalid_argument("polar_plane: centre has no polar plane");
  return make_plane(dir, 1.0);
}

}  // namespace binet
