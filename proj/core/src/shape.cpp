#include "binet/shape.hpp"

#include <cmath>
#include <stdexcept>

namespace binet {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void validate_abc(double a, double b, double c) {
  if (!(a > b && b > c && c > 0))
    throw std::invalid_argument("ShapeParams: need a > b > c > 0");
}
}  // namespace

ShapeParams solve_boundary_shape(int n1_max, int n2_max, double scale) {
  if (n1_max < 1 || n2_max < 1)
    throw std::invalid_argument("solve_boundary_shape: N1 and N2 must be positive");
  if (!(scale > 0)) throw std::invalid_argument("solve_boundary_shape: scale must be positive");
  ShapeParams p;
  p.n1_max = n1_max;
  p.n2_max = n2_max;
  p.delta = kPi / (2 * n1_max + 2 * n2_max - 1);
  p.epsilon = 1.0 / std::sqrt(std::cos(p.delta / 2));
  p.q = closure_q(n1_max, n2_max);
  p.a = 1.5 * scale;
  p.c = 0.5 * scale;
  p.b = 0.5 * (p.a + p.c) - 0.5 * p.q * (p.a - p.c);
  validate_abc(p.a, p.b, p.c);
  return p;
}

ShapeParams custom_shape(double a, double b, double c, double delta, int n1_max, int n2_max) {
  validate_abc(a, b, c);
  if (!(delta > 0 && delta < kPi))
    throw std::invalid_argument("custom_shape: delta must lie in (0, pi)");
  if (n1_max < 1 || n2_max < 1)
    throw std::invalid_argument("custom_shape: N1 and N2 must be positive");
  ShapeParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.delta = delta;
  p.epsilon = 1.0 / std::sqrt(std::cos(delta / 2));
  p.q = (a - 2 * b + c) / (a - c);
  p.n1_max = n1_max;
  p.n2_max = n2_max;
  return p;
}

SampledFunction::SampledFunction(HalfIndex lo, std::vector<double> values)
    : lo_(lo), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("SampledFunction: empty sample");
}

bool SampledFunction::contains(HalfIndex n) const {
  const int i = n.twice() - lo_.twice();
  return i >= 0 && i < static_cast<int>(values_.size());
}

double SampledFunction::operator()(HalfIndex n) const {
  if (!contains(n)) throw std::out_of_range("SampledFunction: index outside domain");
  return values_[static_cast<std::size_t>(n.twice() - lo_.twice())];
}

double discrete_square(const SampledFunction& f, HalfIndex n) { return f(n) * f(n.up()); }

namespace {

SampledFunction sample(int bound_twice, double amp, double delta, bool sine) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(2 * bound_twice + 1));
  for (int t = -bound_twice; t <= bound_twice; ++t) {
    const double arg = delta * 0.5 * t;
    vals.push_back(sine ? amp * std::sin(arg) : amp * std::cos(arg));
  }
  return SampledFunction(HalfIndex::from_twice(-bound_twice), std::move(vals));
}

}  // namespace

TrigSolutions trig_solutions(const ShapeParams& p) {
  const double amp = p.epsilon * std::sqrt(p.a - p.c);
  return TrigSolutions{sample(2 * p.n1_max, amp, p.delta, true),
                       sample(2 * p.n1_max, amp, p.delta, false),
                       sample(2 * p.n2_max, amp, p.delta, false),
                       sample(2 * p.n2_max, amp, p.delta, true)};
}

GFunctions g_recurrence(const ShapeParams& p, double g1_0, double g2_0) {
  if (g1_0 == 0.0 || g2_0 == 0.0)
    throw std::invalid_argument("g_recurrence: initial values must be nonzero");
  const TrigSolutions t = trig_solutions(p);
  const double eps_div = 1e-12 * std::sqrt(p.a - p.c);

  // g(n) g(n+1/2) = sign * (f^<2>(n) - (a-b)); outward from n = 0, so the
  // boundary zeros at +-N are assigned last and never divided by.
  auto iterate = [&](const SampledFunction& f, double g0, int bound_twice, double sign) {
    std::vector<double> g(static_cast<std::size_t>(2 * bound_twice + 1), 0.0);
    auto at = [&](int tw) -> double& { return g[static_cast<std::size_t>(tw + bound_twice)]; };
    auto numer = [&](int tw) {
      return sign * (discrete_square(f, HalfIndex::from_twice(tw)) - (p.a - p.b));
    };
    auto step_from = [&](int tw) {
      const double denom = at(tw);
      if (std::abs(denom) < eps_div)
        throw std::domain_error("g_recurrence: division below degeneracy threshold");
      return denom;
    };
    at(0) = g0;
    for (int tw = 0; tw < bound_twice; ++tw) at(tw + 1) = numer(tw) / step_from(tw);
    for (int tw = 0; tw > -bound_twice; --tw) at(tw - 1) = numer(tw - 1) / step_from(tw);
    return SampledFunction(HalfIndex::from_twice(-bound_twice), std::move(g));
  };

  GFunctions out{iterate(t.f1, g1_0, 2 * p.n1_max, -1.0),
                 iterate(t.f2, g2_0, 2 * p.n2_max, +1.0), 0.0, false};

  const double root = std::sqrt(p.a - p.c);
  const HalfIndex N1 = HalfIndex::of_int(p.n1_max), N2 = HalfIndex::of_int(p.n2_max);
  out.boundary_residual =
      std::max(std::max(std::abs(out.g1(N1)), std::abs(out.g1(-N1))),
               std::max(std::abs(out.g2(N2)), std::abs(out.g2(-N2)))) /
      root;
  auto sign_changes = [](const SampledFunction& g, int bound_twice) {
    for (int tw = -bound_twice + 2; tw <= bound_twice - 1; ++tw)
      if (g(HalfIndex::from_twice(tw - 1)) * g(HalfIndex::from_twice(tw)) < 0) return true;
    return false;
  };
  out.interior_sign_change =
      sign_changes(out.g1, 2 * p.n1_max) || sign_changes(out.g2, 2 * p.n2_max);
  return out;
}

std::pair<double, double> natural_g_init(const ShapeParams& p) {
  return {std::sqrt(p.a - p.b), std::sqrt(p.b - p.c)};
}

DeformationAxes deformation_axes(const ShapeParams& p, double s3) {
  if (!(s3 >= 0 && s3 < kPi))
    throw std::invalid_argument("deformation_axes: s3 must lie in [0, pi)");
  return DeformationAxes{std::sqrt((p.a - p.c) / (p.b - p.c)) * std::cos(s3),
                         std::sqrt((p.a - p.c) / (p.a - p.b)) * std::sin(s3)};
}

double sphere_parameter(const ShapeParams& p) {
  return std::atan(std::sqrt((p.a - p.b) / (p.b - p.c)));
}

double shape_sequence_S(int N, int n) {
  if (N < 2 || n < 0 || n > N) throw std::invalid_argument("shape_sequence_S: need N>=2, 0<=n<=N");
  const double th = kPi / (4 * N - 2);
  return std::cos((4 * n - 1) * th) / std::cos(th);
}

double closure_q(int n1_max, int n2_max) {
  return shape_sequence_S(n1_max + n2_max, n2_max);
}

std::pair<int, int> approximate_q(double q_target, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("approximate_q: tol must be positive");
  if (!(q_target > -1 && q_target < 1))
    throw std::invalid_argument("approximate_q: q_target must lie in (-1, 1)");
  // gap bound: consecutive S_N values differ by less than 4pi/(4N-2)
  int N = 2;
  while (4 * kPi / (4 * N - 2) >= tol && N < (1 << 24)) ++N;
  // S_N is strictly decreasing in n: binary search the bracketing step
  int lo = 0, hi = N;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (shape_sequence_S(N, mid) >= q_target)
      lo = mid;
    else
      hi = mid;
  }
  int best = -1;
  double best_err = 2.0;
  for (int n : {lo, hi}) {
    if (n < 1 || n > N - 1) continue;  // need N1 = N-n >= 1 and N2 = n >= 1
    const double err = std::abs(shape_sequence_S(N, n) - q_target);
    if (err < best_err) { best_err = err; best = n; }
  }
  if (best < 0) best = std::min(std::max(lo, 1), N - 1);
  return {N - best, best};
}

}  // namespace binet
