#include "oracle_formulas.hpp"

#include <cmath>
#include <vector>

namespace oracle {

namespace {
const long double kPi = 3.14159265358979323846264338327950288L;
}

double closure_delta(int N1, int N2) {
  return static_cast<double>(kPi / (2 * N1 + 2 * N2 - 1));
}

double closure_q(int N1, int N2) {
  const long double D = 4 * N1 + 4 * N2 - 2;
  return static_cast<double>(std::cos((4 * N2 - 1) * kPi / D) / std::cos(kPi / D));
}

std::map<std::pair<int, int>, Vertex> semi_ellipsoid_vertices(int N1, int N2, double scale,
                                                              double s3, int hemisphere) {
  const long double delta = kPi / (2 * N1 + 2 * N2 - 1);
  const long double D = 4 * N1 + 4 * N2 - 2;
  const long double q = std::cos((4 * N2 - 1) * kPi / D) / std::cos(kPi / D);
  const long double a = 1.5L * scale, c = 0.5L * scale;
  const long double b = 0.5L * (a + c) - 0.5L * q * (a - c);
  const long double amp = std::sqrt((a - c) / std::cos(delta / 2));

  auto f1 = [&](int t) { return amp * std::sin(delta * t / 2); };
  auto h1 = [&](int t) { return amp * std::cos(delta * t / 2); };
  auto f2 = [&](int t) { return amp * std::cos(delta * t / 2); };
  auto h2 = [&](int t) { return amp * std::sin(delta * t / 2); };

  // g recurrences, outward from 0 (index = doubled coordinate)
  std::vector<long double> g1(static_cast<std::size_t>(4 * N1 + 1), 0.0L);
  std::vector<long double> g2(static_cast<std::size_t>(4 * N2 + 1), 0.0L);
  auto a1 = [&](int t) -> long double& { return g1[static_cast<std::size_t>(t + 2 * N1)]; };
  auto a2 = [&](int t) -> long double& { return g2[static_cast<std::size_t>(t + 2 * N2)]; };
  a1(0) = hemisphere * std::sqrt(a - b);
  a2(0) = std::sqrt(b - c);
  for (int t = 0; t < 2 * N1; ++t) a1(t + 1) = (a - b - f1(t) * f1(t + 1)) / a1(t);
  for (int t = 0; t > -2 * N1; --t) a1(t - 1) = (a - b - f1(t - 1) * f1(t)) / a1(t);
  for (int t = 0; t < 2 * N2; ++t) a2(t + 1) = (f2(t) * f2(t + 1) - a + b) / a2(t);
  for (int t = 0; t > -2 * N2; --t) a2(t - 1) = (f2(t - 1) * f2(t) - a + b) / a2(t);

  const long double f3 = std::sqrt((a - c) / (b - c)) * std::cos(static_cast<long double>(s3));
  const long double h3 = std::sqrt((a - c) / (a - b)) * std::sin(static_cast<long double>(s3));
  const long double nx = std::sqrt((a - b) * (a - c));
  const long double ny = std::sqrt((a - b) * (b - c));
  const long double nz = std::sqrt((a - c) * (b - c));

  std::map<std::pair<int, int>, Vertex> out;
  for (int t1 = -2 * N1; t1 <= 2 * N1; ++t1)
    for (int t2 = -2 * N2; t2 <= 2 * N2; ++t2) {
      const bool even1 = ((t1 % 2) == 0), even2 = ((t2 % 2) == 0);
      if (even1 != even2) continue;
      if (!even1 && (std::abs(t1) > 2 * N1 - 1 || std::abs(t2) > 2 * N2 - 1)) continue;
      out[{t1, t2}] = Vertex{static_cast<double>(f1(t1) * f2(t2) * f3 / nx),
                             static_cast<double>(a1(t1) * a2(t2) / ny),
                             static_cast<double>(h1(t1) * h2(t2) * h3 / nz)};
    }
  return out;
}

}  // namespace oracle
