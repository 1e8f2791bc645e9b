#pragma once

#include <map>
#include <utility>

// Self-contained long-double evaluation of the explicit vertex formulas of
// one discrete semi-ellipsoid (trig samples, g recurrences, axis functions,
// product assembly). Deliberately independent of the library: used as the
// oracle that the construction code is checked against.
namespace oracle {

struct Vertex {
  double x, y, z;
};

// key: doubled lattice coordinates (2*n1, 2*n2); both even (primal) or both
// odd (dual)
std::map<std::pair<int, int>, Vertex> semi_ellipsoid_vertices(int N1, int N2, double scale,
                                                              double s3, int hemisphere);

double closure_q(int N1, int N2);
double closure_delta(int N1, int N2);

}  // namespace oracle
