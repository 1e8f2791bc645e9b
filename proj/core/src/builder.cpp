#include "binet/builder.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace binet {

namespace {

// shared vertex-map evaluator: r = (f1 f2 F3, g1 g2 G3, h1 h2 H3) with the
// confocal normalizing denominators
struct VertexMap {
  const TrigSolutions* trig;
  const GFunctions* g;
  double F3, G3, H3;
  double a, b, c;

  Vec3 operator()(LatticePoint p) const {
    const double nx = std::sqrt((a - b) * (a - c));
    const double ny = std::sqrt((a - b) * (b - c));
    const double nz = std::sqrt((a - c) * (b - c));
    return Vec3((*trig).f1(p.n1) * (*trig).f2(p.n2) * F3 / nx,
                (*g).g1(p.n1) * (*g).g2(p.n2) * G3 / ny,
                (*trig).h1(p.n1) * (*trig).h2(p.n2) * H3 / nz);
  }
};

SemiBinet assemble_semi(const ShapeParams& p, double s3, int hemisphere, double g1_0,
                        double g2_0, double F3, double G3, double H3,
                        const QuadricForm& quadric) {
  if (hemisphere != 1 && hemisphere != -1)
    throw std::invalid_argument("build_semi_ellipsoid: hemisphere must be +-1");
  SemiBinet sb;
  sb.shape = p;
  sb.s3 = s3;
  sb.hemisphere = hemisphere;
  sb.g1_0 = hemisphere * g1_0;
  sb.g2_0 = g2_0;
  sb.quadric = quadric;
  sb.g = g_recurrence(p, sb.g1_0, sb.g2_0);
  sb.primal_domain = make_domain(DomainKind::U, p.n1_max, p.n2_max);
  sb.dual_domain = make_domain(DomainKind::UStar, p.n1_max, p.n2_max);

  const TrigSolutions trig = trig_solutions(p);
  const VertexMap map{&trig, &sb.g, F3, G3, H3, p.a, p.b, p.c};
  for (const DomainSpec* d : {&sb.primal_domain, &sb.dual_domain})
    for (const LatticePoint& q : domain_vertices(*d)) {
      sb.points.push_back(q);
      sb.positions.emplace(q, map(q));
    }
  std::sort(sb.points.begin(), sb.points.end());
  return sb;
}

}  // namespace

SemiBinet build_semi_ellipsoid(const ShapeParams& p, double s3, int hemisphere, double g1_0,
                               double g2_0) {
  const DeformationAxes ax = deformation_axes(p, s3);
  const QuadricForm quadric{ax.f3_hat * ax.f3_hat, 1.0, ax.h3_hat * ax.h3_hat};
  return assemble_semi(p, s3, hemisphere, g1_0, g2_0, ax.f3_hat, 1.0, ax.h3_hat, quadric);
}

SemiBinet build_single_ellipsoid(double alpha, double beta, double gamma, double delta,
                                 int n1_max, int n2_max, double g1_0, double g2_0,
                                 int hemisphere) {
  const ShapeParams p = custom_shape(alpha, beta, gamma, delta, n1_max, n2_max);
  const QuadricForm quadric{alpha, beta, gamma};
  SemiBinet sb = assemble_semi(p, std::numeric_limits<double>::quiet_NaN(), hemisphere, g1_0,
                               g2_0, std::sqrt(alpha), std::sqrt(beta), std::sqrt(gamma),
                               quadric);
  return sb;
}

// ---------------------------------------------------------------------------
// Plane helpers
// ---------------------------------------------------------------------------

namespace {
Vec3 canonical_sign(const Vec3& n) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n[i]) > std::abs(n[k])) k = i;
  return (n[k] < 0) ? Vec3(-n) : n;
}
}  // namespace

PlaneH newell_plane(const std::vector<Vec3>& pts) {
  Vec3 cen = Vec3::Zero();
  for (const Vec3& p : pts) cen += p;
  cen /= static_cast<double>(pts.size());
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3 u = pts[i] - cen, v = pts[(i + 1) % pts.size()] - cen;
    n += u.cross(v);
  }
  if (n.norm() == 0.0) throw std::invalid_argument("newell_plane: degenerate polygon");
  n = canonical_sign(n.normalized());
  return PlaneH{n, n.dot(cen)};
}

PlaneH fit_plane(const std::vector<Vec3>& pts) {
  if (pts.size() < 3) throw std::invalid_argument("fit_plane: need at least 3 points");
  Vec3 cen = Vec3::Zero();
  for (const Vec3& p : pts) cen += p;
  cen /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Vec3& p : pts) {
    const Vec3 d = p - cen;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  Vec3 n = canonical_sign(es.eigenvectors().col(0));
  return PlaneH{n, n.dot(cen)};
}

namespace {

// deterministic in-plane frame: pivot off the smallest normal component
void plane_frame(const PlaneH& pl, Vec3* e1, Vec3* e2) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(pl.normal[i]) < std::abs(pl.normal[k])) k = i;
  Vec3 axis = Vec3::Zero();
  axis[k] = 1.0;
  *e1 = (axis - pl.normal.dot(axis) * pl.normal).normalized();
  *e2 = pl.normal.cross(*e1);
}

double polygon_diameter(const std::vector<Vec3>& pts) {
  double d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

// fits plane, centre and radius of one circle and fills the residuals
void circle_geometry(DiscreteCircle* c, const std::vector<Vec3>& pts,
                     const QuadricForm& quadric) {
  const double diam = polygon_diameter(pts);
  if (pts.size() < 3) {
    c->degenerate = true;
    if (!pts.empty()) {
      c->center = pts.front();
      c->plane = polar_plane(pts.front(), quadric);
      double worst = 0;
      for (const Vec3& p : pts) worst = std::max(worst, std::abs(c->plane.signed_distance(p)));
      c->plane_residual = (diam > 0) ? worst / diam : worst;
    }
    return;
  }
  c->plane = fit_plane(pts);
  double worst = 0;
  for (const Vec3& p : pts) worst = std::max(worst, std::abs(c->plane.signed_distance(p)));
  c->plane_residual = worst / diam;

  Vec3 e1, e2;
  plane_frame(c->plane, &e1, &e2);
  const Vec3 origin = c->plane.normal * c->plane.offset;
  std::vector<Eigen::Vector2d> xy;
  xy.reserve(pts.size());
  for (const Vec3& p : pts) xy.emplace_back(e1.dot(p - origin), e2.dot(p - origin));

  const std::size_t m = c->closed ? pts.size() : pts.size() - 1;
  if (m < 3) {  // open chain too short to determine (x0, y0, R)
    c->degenerate = true;
    Vec3 cen = Vec3::Zero();
    for (const Vec3& p : pts) cen += p;
    c->center = cen / static_cast<double>(pts.size());
    return;
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(m), 3);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& u = xy[i];
    const auto& v = xy[(i + 1) % pts.size()];
    A(static_cast<Eigen::Index>(i), 0) = -(u.x() + v.x());
    A(static_cast<Eigen::Index>(i), 1) = -(u.y() + v.y());
    A(static_cast<Eigen::Index>(i), 2) = 1.0;
    rhs(static_cast<Eigen::Index>(i)) = -(u.x() * v.x() + u.y() * v.y());
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
  const double r2 = sol[0] * sol[0] + sol[1] * sol[1] - sol[2];
  c->center = origin + sol[0] * e1 + sol[1] * e2;
  c->radius = std::sqrt(std::max(r2, 0.0));
  const double scale = std::max(std::abs(r2), 0.25 * diam * diam);
  c->relation_residual = (A * sol - rhs).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

// ---------------------------------------------------------------------------
// Circle extraction
// ---------------------------------------------------------------------------

std::vector<DiscreteCircle> extract_discrete_circles(const SemiBinet& sb) {
  const int N1 = sb.shape.n1_max, N2 = sb.shape.n2_max;
  std::vector<DiscreteCircle> out;
  for (int family : {+1, -1})
    for (int L = -(N1 + N2); L <= N1 + N2; ++L) {
      const auto chain =
          diagonal_level_chain(N1, N2, family, HalfIndex::from_twice(L));
      if (chain.empty()) continue;
      DiscreteCircle c;
      c.family = family;
      c.level = HalfIndex::from_twice(L);
      c.closed = false;
      std::vector<Vec3> pts;
      for (const LatticePoint& p : chain) {
        c.vertices.push_back(CircleVertex{p, p.on_dual(), -1});
        pts.push_back(sb.r(p));
      }
      if (pts.size() < 4) c.degenerate = true;
      circle_geometry(&c, pts, sb.quadric);
      out.push_back(std::move(c));
    }
  return out;
}

namespace {

std::vector<DiscreteCircle> closed_circles(const ClosedEllipsoidPair& pair) {
  const IdentificationMap& id = pair.ident;
  const int N1 = id.n1_max(), N2 = id.n2_max();
  std::vector<DiscreteCircle> out;
  for (int family : {+1, -1})
    for (int L = -(N1 + N2); L <= N1 + N2; ++L) {
      const auto cycle = diagonal_level_cycle(id, family, HalfIndex::from_twice(L));
      if (cycle.empty()) continue;
      DiscreteCircle c;
      c.family = family;
      c.level = HalfIndex::from_twice(L);
      c.closed = true;
      std::vector<Vec3> pts;
      for (const LatticePoint& p : cycle) {
        const bool dual = p.on_dual();
        const int vid = dual ? id.dual_id(p) : id.primal_id(p);
        c.vertices.push_back(CircleVertex{p, dual, vid});
        pts.push_back(dual ? pair.dual.positions[static_cast<std::size_t>(vid)]
                           : pair.primal.positions[static_cast<std::size_t>(vid)]);
      }
      if (cycle.size() == 1) {
        // umbilic level: the circle degenerates to a vertex plus the
        // matching umbilic glue edge
        c.degenerate = true;
        c.closed = false;
        const int T1 = 2 * N1, T2 = 2 * N2;
        const int row = (family * L > 0) ? T2 - 1 : -T2 + 1;
        // seam edge for the level at (N1, +-N2); outer edge at (-N1, +-N2)
        LatticePoint ea, eb;
        if (L > 0) {
          ea = make_point(T1 - 1, row);
          eb = make_point(T1 + 1, row);
        } else {
          ea = make_point(-T1 + 1, row);
          eb = make_point(3 * T1 - 1, row);
        }
        for (const LatticePoint& p : {ea, eb}) {
          const int vid = id.dual_id(p);
          c.vertices.push_back(CircleVertex{p, true, vid});
          pts.push_back(pair.dual.positions[static_cast<std::size_t>(vid)]);
        }
      }
      circle_geometry(&c, pts, pair.quadric);
      if (c.degenerate) {
        // attach the umbilic polar plane and report coplanarity against it
        const Vec3& uv = pts.front();
        c.plane = polar_plane(uv, pair.quadric);
        c.center = uv;
        c.radius = 0.0;
        double worst = 0;
        for (const Vec3& p : pts) worst = std::max(worst, std::abs(c.plane.signed_distance(p)));
        const double diam = polygon_diameter(pts);
        c.plane_residual = (diam > 0) ? worst / diam : worst;
      }
      out.push_back(std::move(c));
    }
  return out;
}

double mesh_signed_volume(const MeshBuffers& m) {
  double vol = 0;
  for (const auto& f : m.faces) {
    const Vec3& p0 = m.positions[static_cast<std::size_t>(f[0])];
    for (int i = 1; i < 3; ++i) {
      const Vec3& p1 = m.positions[static_cast<std::size_t>(f[i])];
      const Vec3& p2 = m.positions[static_cast<std::size_t>(f[i + 1])];
      vol += p0.dot(p1.cross(p2)) / 6.0;
    }
  }
  return vol;
}

void orient_outward(MeshBuffers* m) {
  if (mesh_signed_volume(*m) < 0)
    for (auto& f : m->faces) std::reverse(f.begin(), f.end());
}

}  // namespace

ClosedEllipsoidPair glue_closed(const SemiBinet& plus, const SemiBinet& minus, double tol) {
  const ShapeParams &p = plus.shape, &q = minus.shape;
  if (p.a != q.a || p.b != q.b || p.c != q.c || p.delta != q.delta || p.n1_max != q.n1_max ||
      p.n2_max != q.n2_max)
    throw std::invalid_argument("glue_closed: mismatched shapes");
  const bool same_s3 = (plus.s3 == minus.s3) || (std::isnan(plus.s3) && std::isnan(minus.s3));
  if (!same_s3) throw std::invalid_argument("glue_closed: mismatched s3");
  if (plus.g1_0 != -minus.g1_0 || plus.g2_0 != minus.g2_0)
    throw std::invalid_argument("glue_closed: halves need opposite g1(0) and equal g2(0)");

  ClosedEllipsoidPair pair{p, plus.s3, plus.quadric, IdentificationMap(p.n1_max, p.n2_max),
                           {},  {},      {},           {},
                           {},  0.0};
  const IdentificationMap& id = pair.ident;
  const int T1 = 2 * p.n1_max;

  auto eval = [&](LatticePoint v) -> Vec3 {
    const int t1 = v.n1.twice();
    if (t1 <= T1) return plus.r(v);
    return minus.r(make_point(2 * T1 - t1, v.n2.twice()));
  };

  // canonical positions; measure how far the identified copies disagree
  const double root = std::sqrt(p.a - p.c);
  double worst = 0;
  pair.primal.positions.reserve(id.primal_vertices().size());
  for (const LatticePoint& v : id.primal_vertices()) pair.primal.positions.push_back(eval(v));
  const int T2 = 2 * p.n2_max;
  for (int t1 = -T1; t1 <= 3 * T1; t1 += 2)
    for (int t2 = -T2; t2 <= T2; t2 += 2) {
      const LatticePoint raw = make_point(t1, t2);
      const Vec3 d =
          eval(raw) - pair.primal.positions[static_cast<std::size_t>(id.primal_id(raw))];
      worst = std::max(worst, d.norm() / root);
    }
  pair.seam_residual = worst;
  if (worst > tol)
    throw std::runtime_error("glue_closed: boundary mismatch above tolerance");

  pair.dual.positions.reserve(id.dual_vertices().size());
  for (const LatticePoint& v : id.dual_vertices()) pair.dual.positions.push_back(eval(v));

  pair.primal.faces = id.primal_faces();
  pair.dual.faces = id.dual_faces();
  pair.primal.edges = id.primal_edges();
  for (const DualEdgeRec& e : id.dual_edges()) pair.dual.edges.emplace_back(e.a, e.b);
  orient_outward(&pair.primal);
  orient_outward(&pair.dual);

  pair.umbilic_vertices = id.umbilic_vertex_ids();
  pair.umbilic_edges = id.umbilic_edge_ids();
  pair.circles = closed_circles(pair);
  return pair;
}

std::vector<DiscreteCircle> extract_discrete_circles(const ClosedEllipsoidPair& pair) {
  return pair.circles;
}

ClosedEllipsoidPair build_closed_pair(const ShapeParams& p, double s3) {
  const auto [g1_0, g2_0] = natural_g_init(p);
  const SemiBinet plus = build_semi_ellipsoid(p, s3, +1, g1_0, g2_0);
  const SemiBinet minus = build_semi_ellipsoid(p, s3, -1, g1_0, g2_0);
  return glue_closed(plus, minus);
}

bool polar_face_plane(const ClosedEllipsoidPair& pair, const CircleVertex& v, PlaneH* out) {
  const IdentificationMap& id = pair.ident;
  if (!v.dual) {
    const int face = id.dual_face_of_primal_vertex(v.id);
    if (face < 0) return false;  // umbilic vertex
    const auto& f = id.dual_faces()[static_cast<std::size_t>(face)];
    std::vector<Vec3> pts;
    for (int vid : f) pts.push_back(pair.dual.positions[static_cast<std::size_t>(vid)]);
    *out = newell_plane(pts);
    return true;
  }
  const int face = id.primal_face_of_dual_vertex(v.id);
  const auto& f = id.primal_faces()[static_cast<std::size_t>(face)];
  std::vector<Vec3> pts;
  for (int vid : f) pts.push_back(pair.primal.positions[static_cast<std::size_t>(vid)]);
  *out = newell_plane(pts);
  return true;
}

// ---------------------------------------------------------------------------
// Discrete confocal coordinates in 3D
// ---------------------------------------------------------------------------

double ConfocalSamplers::equation_residual() const {
  double worst = 0;
  auto upd = [&](double v) { worst = std::max(worst, std::abs(v)); };
  for (int i = 0; i < 3; ++i) {
    const SampledFunction &fi = f[static_cast<std::size_t>(i)],
                          &gi = g[static_cast<std::size_t>(i)],
                          &hi = h[static_cast<std::size_t>(i)];
    for (int tw = fi.lo().twice(); tw < fi.hi().twice(); ++tw) {
      const HalfIndex n = HalfIndex::from_twice(tw);
      const double f2 = discrete_square(fi, n), g2 = discrete_square(gi, n),
                   h2 = discrete_square(hi, n);
      const double sg = (i == 0) ? +1.0 : -1.0;          // f^<2> + g^<2> vs f^<2> - g^<2>
      const double sh = (i == 2) ? -1.0 : +1.0;          // f^<2> - h^<2> in direction 3
      upd((f2 + sg * g2 - (a - b)) / (a - c));
      upd((f2 + sh * h2 - (a - c)) / (a - c));
    }
  }
  return worst;
}

ConfocalSamplers standard_confocal_samplers(double a, double b, double c,
                                            std::array<double, 3> deltas,
                                            std::array<int, 3> bounds) {
  if (!(a > b && b > c && c > 0))
    throw std::invalid_argument("standard_confocal_samplers: need a > b > c > 0");
  for (int i = 0; i < 3; ++i)
    if (bounds[static_cast<std::size_t>(i)] < 1 || !(deltas[static_cast<std::size_t>(i)] > 0))
      throw std::invalid_argument("standard_confocal_samplers: bad bounds/deltas");

  auto trig_pair = [&](double delta, int bound, bool f_is_sine) {
    const double amp = std::sqrt((a - c) / std::cos(delta / 2));
    std::vector<double> fv, hv;
    for (int tw = -2 * bound; tw <= 2 * bound; ++tw) {
      const double arg = delta * 0.5 * tw;
      fv.push_back(f_is_sine ? amp * std::sin(arg) : amp * std::cos(arg));
      hv.push_back(f_is_sine ? amp * std::cos(arg) : amp * std::sin(arg));
    }
    return std::pair(SampledFunction(HalfIndex::from_twice(-2 * bound), std::move(fv)),
                     SampledFunction(HalfIndex::from_twice(-2 * bound), std::move(hv)));
  };
  auto hyper_pair = [&](double delta, int bound) {
    const double amp = std::sqrt((a - c) / std::cosh(delta / 2));
    std::vector<double> fv, hv;
    for (int tw = -2 * bound; tw <= 2 * bound; ++tw) {
      const double arg = delta * 0.5 * tw;
      fv.push_back(amp * std::cosh(arg));
      hv.push_back(amp * std::sinh(arg));
    }
    return std::pair(SampledFunction(HalfIndex::from_twice(-2 * bound), std::move(fv)),
                     SampledFunction(HalfIndex::from_twice(-2 * bound), std::move(hv)));
  };

  // g from its recurrence, outward from n = 0
  const double eps_div = 1e-12 * std::sqrt(a - c);
  auto g_from = [&](const SampledFunction& f, double g0, int bound, double sign) {
    std::vector<double> g(static_cast<std::size_t>(4 * bound + 1), 0.0);
    auto at = [&](int tw) -> double& { return g[static_cast<std::size_t>(tw + 2 * bound)]; };
    auto numer = [&](int tw) {
      return sign * (discrete_square(f, HalfIndex::from_twice(tw)) - (a - b));
    };
    auto denom = [&](int tw) {
      if (std::abs(at(tw)) < eps_div)
        throw std::domain_error("standard_confocal_samplers: g-recurrence degeneracy");
      return at(tw);
    };
    at(0) = g0;
    for (int tw = 0; tw < 2 * bound; ++tw) at(tw + 1) = numer(tw) / denom(tw);
    for (int tw = 0; tw > -2 * bound; --tw) at(tw - 1) = numer(tw - 1) / denom(tw);
    return SampledFunction(HalfIndex::from_twice(-2 * bound), std::move(g));
  };

  auto [f1, h1] = trig_pair(deltas[0], bounds[0], true);
  auto [f2, h2] = trig_pair(deltas[1], bounds[1], false);
  auto [f3, h3] = hyper_pair(deltas[2], bounds[2]);
  SampledFunction g1 = g_from(f1, std::sqrt(a - b), bounds[0], -1.0);
  SampledFunction g2 = g_from(f2, std::sqrt(b - c), bounds[1], +1.0);
  const double g3_0 = std::sqrt(discrete_square(f3, HalfIndex::of_int(0)) - (a - b));
  SampledFunction g3 = g_from(f3, g3_0, bounds[2], +1.0);
  return ConfocalSamplers{a, b, c, {f1, f2, f3}, {g1, g2, g3}, {h1, h2, h3}};
}

ConfocalLattice3D build_discrete_confocal_3d(const ConfocalSamplers& s,
                                             std::array<int, 3> bounds, double tol) {
  const double resid = s.equation_residual();
  if (resid > tol)
    throw std::invalid_argument("build_discrete_confocal_3d: samplers violate the functional equations");
  ConfocalLattice3D lat{s.a, s.b, s.c, bounds, {}, resid};
  const double nx = std::sqrt((s.a - s.b) * (s.a - s.c));
  const double ny = std::sqrt((s.a - s.b) * (s.b - s.c));
  const double nz = std::sqrt((s.a - s.c) * (s.b - s.c));
  for (int t1 = -2 * bounds[0]; t1 <= 2 * bounds[0]; ++t1)
    for (int t2 = -2 * bounds[1]; t2 <= 2 * bounds[1]; ++t2)
      for (int t3 = -2 * bounds[2]; t3 <= 2 * bounds[2]; ++t3) {
        const HalfIndex n1 = HalfIndex::from_twice(t1), n2 = HalfIndex::from_twice(t2),
                        n3 = HalfIndex::from_twice(t3);
        lat.positions.emplace(LatticePoint3{n1, n2, n3},
                              Vec3(s.f[0](n1) * s.f[1](n2) * s.f[2](n3) / nx,
                                   s.g[0](n1) * s.g[1](n2) * s.g[2](n3) / ny,
                                   s.h[0](n1) * s.h[1](n2) * s.h[2](n3) / nz));
      }
  return lat;
}

}  // namespace binet
