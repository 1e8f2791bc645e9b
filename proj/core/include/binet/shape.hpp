#pragma once

#include <utility>
#include <vector>

#include "binet/half_index.hpp"

namespace binet {

/// Shape constants of a (family of) discrete ellipsoids.
///
/// Normalization: solve_boundary_shape fixes c = scale/2 and a = 3*scale/2,
/// so a - c = scale and a + c = 2*scale; b then follows from
/// b = (a+c)/2 - q*(a-c)/2. The lattice step is delta, the amplitude of the
/// trigonometric solutions is epsilon = 1/sqrt(cos(delta/2)).
struct ShapeParams {
  double a = 1.5, b = 1.0, c = 0.5;
  double delta = 0.0;
  double epsilon = 0.0;
  double q = 0.0;  // (a - 2b + c)/(a - c)
  int n1_max = 1, n2_max = 1;
};

/// Shape constants satisfying the closure conditions delta = pi/(2N1+2N2-1)
/// and q = cos((4N2-1)pi/(4N1+4N2-2)) / cos(pi/(4N1+4N2-2)).
ShapeParams solve_boundary_shape(int n1_max, int n2_max, double scale = 1.0);

/// Shape constants for an explicitly chosen quadric and step; the closure
/// conditions are generally violated (boundary checks then report it).
ShapeParams custom_shape(double a, double b, double c, double delta, int n1_max, int n2_max);

/// A scalar function sampled on a contiguous half-integer interval.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(HalfIndex lo, std::vector<double> values);

  HalfIndex lo() const { return lo_; }
  HalfIndex hi() const { return HalfIndex::from_twice(lo_.twice() + static_cast<int>(values_.size()) - 1); }
  bool contains(HalfIndex n) const;

  /// Value at n; throws std::out_of_range outside the domain.
  double operator()(HalfIndex n) const;

 private:
  HalfIndex lo_;
  std::vector<double> values_;
};

/// The discrete square f(n) * f(n + 1/2). Requires n and n+1/2 in domain.
double discrete_square(const SampledFunction& f, HalfIndex n);

/// Trigonometric solutions (F-type): f1 = eps*sqrt(a-c)*sin(delta n) and
/// h1 = eps*sqrt(a-c)*cos(delta n) on [-N1, N1]; f2 = cos-type and
/// h2 = sin-type on [-N2, N2]. They satisfy f^<2> + h^<2> = a - c exactly.
struct TrigSolutions {
  SampledFunction f1, h1, f2, h2;
};
TrigSolutions trig_solutions(const ShapeParams& p);

struct GFunctions {
  SampledFunction g1, g2;
  double boundary_residual = 0.0;  // max |g(+-N)| / sqrt(a-c)
  bool interior_sign_change = false;
};

/// Iterates g1(n+1/2) g1(n) = a-b - f1^<2>(n) and
/// g2(n+1/2) g2(n) = f2^<2>(n) - a+b outward from n = 0, so the boundary
/// zeros are reached last and never divided by. Throws std::domain_error on
/// division by a value below 1e-12*sqrt(a-c) strictly inside the domain.
GFunctions g_recurrence(const ShapeParams& p, double g1_0, double g2_0);

/// Natural initial values (F14): g1_0 = sqrt(a-b), g2_0 = sqrt(b-c); they
/// place the vertex r(0,0) at (0, +-1, 0).
std::pair<double, double> natural_g_init(const ShapeParams& p);

struct DeformationAxes {
  double f3_hat = 0.0, h3_hat = 0.0;
};

/// Scaled third-direction semi-axes f3_hat = sqrt((a-c)/(b-c)) cos s3,
/// h3_hat = sqrt((a-c)/(a-b)) sin s3; they satisfy
/// (b-c) f3_hat^2 + (a-b) h3_hat^2 = a-c.
DeformationAxes deformation_axes(const ShapeParams& p, double s3);

/// The parameter of the unit-sphere member: s3 = arctan sqrt((a-b)/(b-c)).
double sphere_parameter(const ShapeParams& p);

/// S_N(n) = cos((4n-1)pi/(4N-2)) / cos(pi/(4N-2)); strictly decreasing from
/// S_N(0) = 1 to S_N(N) = -1 with gaps below 4pi/(4N-2).
double shape_sequence_S(int N, int n);

/// The closure value q(N1, N2) = S_{N1+N2}(N2).
double closure_q(int n1_max, int n2_max);

/// Smallest-N search for (N1, N2) with |q(N1,N2) - q_target| < tol, using
/// the gap bound to size N. Throws std::invalid_argument for tol <= 0 or
/// q_target outside (-1, 1).
std::pair<int, int> approximate_q(double q_target, double tol);

}  // namespace binet
