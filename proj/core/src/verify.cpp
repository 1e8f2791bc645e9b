#include "binet/verify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace binet {

namespace {

std::string describe(const LatticePoint& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

struct Worst {
  double value = 0.0;
  std::string element;
  long long checked = 0;

  void update(double v, const std::string& el) {
    ++checked;
    if (v > value) {
      value = v;
      element = el;
    }
  }
};

CheckEntry finish(std::string name, const Worst& w, double tol) {
  return CheckEntry{std::move(name), w.value, tol, w.value <= tol, w.element, w.checked,
                    false,           {}};
}

// distance of the remaining corner to the plane of the best-conditioned
// corner triple, over the face diameter
double quad_planarity_residual(const std::array<Vec3, 4>& q) {
  double diam = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) diam = std::max(diam, (q[i] - q[j]).norm());
  double best_area = -1.0;
  double residual = 0.0;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<Vec3, 3> tri;
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) tri[static_cast<std::size_t>(k++)] = q[static_cast<std::size_t>(i)];
    const Vec3 n = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
    const double area = n.norm();
    if (area > best_area) {
      best_area = area;
      residual = std::abs(n.normalized().dot(q[static_cast<std::size_t>(skip)] - tri[0]));
    }
  }
  return (diam > 0) ? residual / diam : 0.0;
}

double edge_cos(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
  const Vec3 u = a1 - a0, v = b1 - b0;
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0 || nv == 0) return 0.0;
  return std::abs(u.dot(v)) / (nu * nv);
}

std::vector<Vec3> circle_positions(const ClosedEllipsoidPair& pair, const DiscreteCircle& c) {
  std::vector<Vec3> pts;
  pts.reserve(c.vertices.size());
  for (const CircleVertex& v : c.vertices)
    pts.push_back(v.dual ? pair.dual.positions[static_cast<std::size_t>(v.id)]
                         : pair.primal.positions[static_cast<std::size_t>(v.id)]);
  return pts;
}

double diameter(const std::vector<Vec3>& pts) {
  double d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

// the cross-section plane normal of one family, valid on the whole extended
// deformation range (proportional to the classical one where that exists)
bool family_plane_normal(const ShapeParams& p, const QuadricForm& q, int family, Vec3* out) {
  if (q.degenerate()) return false;
  const Vec3 n(std::sqrt((p.a - p.b) / q.alpha), 0.0,
               family * std::sqrt((p.b - p.c) / q.gamma));
  *out = n.normalized();
  return true;
}

}  // namespace

void VerificationReport::add(CheckEntry e) { entries.push_back(std::move(e)); }
void VerificationReport::add(std::vector<CheckEntry> es) {
  for (auto& e : es) entries.push_back(std::move(e));
}
void VerificationReport::finalize() {
  std::sort(entries.begin(), entries.end(),
            [](const CheckEntry& x, const CheckEntry& y) { return x.name < y.name; });
  overall_pass = true;
  for (const CheckEntry& e : entries)
    if (!e.skipped && !e.pass) overall_pass = false;
}

// ---------------------------------------------------------------------------
// Principal binet certificates
// ---------------------------------------------------------------------------

std::vector<CheckEntry> check_principal(const SemiBinet& sb, double tol) {
  Worst planarity, orth;
  for (const LatticePoint& p : sb.points) {
    const int t1 = p.n1.twice(), t2 = p.n2.twice();
    const LatticePoint c1 = make_point(t1 - 1, t2 - 1), c2 = make_point(t1 + 1, t2 - 1),
                       c3 = make_point(t1 + 1, t2 + 1), c4 = make_point(t1 - 1, t2 + 1);
    if (sb.contains(c1) && sb.contains(c2) && sb.contains(c3) && sb.contains(c4))
      planarity.update(quad_planarity_residual({sb.r(c1), sb.r(c2), sb.r(c3), sb.r(c4)}),
                       describe(p));
    // edge ((n1,n2),(n1+1,n2)) against its crossing dual edge
    const LatticePoint r1 = make_point(t1 + 2, t2);
    const LatticePoint d0 = make_point(t1 + 1, t2 - 1), d1 = make_point(t1 + 1, t2 + 1);
    if (sb.contains(r1) && sb.contains(d0) && sb.contains(d1))
      orth.update(edge_cos(sb.r(p), sb.r(r1), sb.r(d0), sb.r(d1)), describe(p));
    const LatticePoint u1 = make_point(t1, t2 + 2);
    const LatticePoint e0 = make_point(t1 - 1, t2 + 1), e1 = make_point(t1 + 1, t2 + 1);
    if (sb.contains(u1) && sb.contains(e0) && sb.contains(e1))
      orth.update(edge_cos(sb.r(p), sb.r(u1), sb.r(e0), sb.r(e1)), describe(p));
  }
  return {finish("face_planarity", planarity, tol), finish("dual_orthogonality", orth, tol)};
}

std::vector<CheckEntry> check_principal(const ClosedEllipsoidPair& pair, double tol) {
  Worst planarity, orth;
  auto scan_faces = [&](const MeshBuffers& m, const char* tag) {
    for (std::size_t fi = 0; fi < m.faces.size(); ++fi) {
      const auto& f = m.faces[fi];
      planarity.update(
          quad_planarity_residual({m.positions[static_cast<std::size_t>(f[0])],
                                   m.positions[static_cast<std::size_t>(f[1])],
                                   m.positions[static_cast<std::size_t>(f[2])],
                                   m.positions[static_cast<std::size_t>(f[3])]}),
          std::string(tag) + " face " + std::to_string(fi));
    }
  };
  scan_faces(pair.primal, "primal");
  scan_faces(pair.dual, "dual");

  const IdentificationMap& id = pair.ident;
  const auto& dedges = id.dual_edges();
  const auto& cross = id.crossing_primal_edge();
  auto ppos = [&](int i) { return pair.primal.positions[static_cast<std::size_t>(i)]; };
  auto dpos = [&](int i) { return pair.dual.positions[static_cast<std::size_t>(i)]; };
  for (std::size_t i = 0; i < dedges.size(); ++i) {
    const auto [pa, pb] = id.primal_edges()[static_cast<std::size_t>(cross[i])];
    orth.update(edge_cos(dpos(dedges[i].a), dpos(dedges[i].b), ppos(pa), ppos(pb)),
                "dual edge " + std::to_string(i));
  }
  // the four umbilic edges cross both primal edges incident to their vertex
  for (int k = 0; k < 4; ++k) {
    const DualEdgeRec& e = dedges[static_cast<std::size_t>(pair.umbilic_edges[static_cast<std::size_t>(k)])];
    const int uv = pair.umbilic_vertices[static_cast<std::size_t>(k)];
    for (const auto& [pa, pb] : id.primal_edges())
      if (pa == uv || pb == uv)
        orth.update(edge_cos(dpos(e.a), dpos(e.b), ppos(pa), ppos(pb)),
                    "umbilic edge " + std::to_string(k));
  }
  return {finish("face_planarity", planarity, tol), finish("dual_orthogonality", orth, tol)};
}

namespace {
double polarity_residual(const Vec3& u, const Vec3& v, const QuadricForm& q) {
  return std::abs(u.x() * v.x() / q.alpha + u.y() * v.y() / q.beta + u.z() * v.z() / q.gamma -
                  1.0);
}
}  // namespace

CheckEntry check_polarity(const SemiBinet& sb, double tol) {
  Worst w;
  for (const LatticePoint& p : sb.points) {
    if (!p.on_primal()) continue;
    const int t1 = p.n1.twice(), t2 = p.n2.twice();
    for (int d1 : {-1, +1})
      for (int d2 : {-1, +1}) {
        const LatticePoint d = make_point(t1 + d1, t2 + d2);
        if (sb.contains(d))
          w.update(polarity_residual(sb.r(p), sb.r(d), sb.quadric), describe(p));
      }
  }
  return finish("polarity", w, tol);
}

CheckEntry check_polarity(const ClosedEllipsoidPair& pair, double tol) {
  Worst w;
  const IdentificationMap& id = pair.ident;
  for (std::size_t did = 0; did < id.dual_vertices().size(); ++did) {
    const auto& f = id.primal_faces()[static_cast<std::size_t>(
        id.primal_face_of_dual_vertex(static_cast<int>(did)))];
    const Vec3& dv = pair.dual.positions[did];
    for (int corner : f)
      w.update(polarity_residual(dv, pair.primal.positions[static_cast<std::size_t>(corner)],
                                 pair.quadric),
               "dual " + describe(id.dual_vertices()[did]));
  }
  return finish("polarity", w, tol);
}

// ---------------------------------------------------------------------------
// Circles
// ---------------------------------------------------------------------------

namespace {

std::vector<CheckEntry> circle_checks_impl(const std::vector<DiscreteCircle>& circles,
                                           const ShapeParams& shape, const QuadricForm& quadric,
                                           double tol) {
  Worst coplanar, parallel, relation, plane_match;
  Vec3 ref_normal[2];
  bool have_ref[2] = {false, false};
  int degenerate_skipped = 0;
  for (const DiscreteCircle& c : circles) {
    const std::string el = std::string("family ") + (c.family > 0 ? "+" : "-") + " level " +
                           std::to_string(c.level.twice()) + "/2";
    if (c.degenerate) {
      ++degenerate_skipped;
      continue;
    }
    coplanar.update(c.plane_residual, el);
    relation.update(c.relation_residual, el);
    const int fi = c.family > 0 ? 0 : 1;
    if (!have_ref[fi]) {
      ref_normal[fi] = c.plane.normal;
      have_ref[fi] = true;
    } else {
      parallel.update(1.0 - std::abs(ref_normal[fi].dot(c.plane.normal)), el);
    }
    Vec3 oracle;
    if (family_plane_normal(shape, quadric, c.family, &oracle))
      plane_match.update(1.0 - std::abs(oracle.dot(c.plane.normal)), el);
  }
  auto entries = std::vector<CheckEntry>{
      finish("circle_coplanarity", coplanar, tol), finish("circle_parallelism", parallel, tol),
      finish("circle_relation", relation, tol), finish("circle_plane_match", plane_match, tol)};
  if (degenerate_skipped > 0)
    for (auto& e : entries)
      e.note = std::to_string(degenerate_skipped) + " degenerate level(s) skipped";
  if (quadric.degenerate())
    for (auto& e : entries) {
      e.skipped = true;
      e.note = "degenerate family member";
    }
  return entries;
}

}  // namespace

std::vector<CheckEntry> check_circles(const ClosedEllipsoidPair& pair, double tol) {
  return circle_checks_impl(pair.circles, pair.shape, pair.quadric, tol);
}

std::vector<CheckEntry> check_circles(const SemiBinet& sb,
                                      const std::vector<DiscreteCircle>& circles, double tol) {
  return circle_checks_impl(circles, sb.shape, sb.quadric, tol);
}

// ---------------------------------------------------------------------------
// Cone apex
// ---------------------------------------------------------------------------

CheckEntry check_cone_apex(const ClosedEllipsoidPair& pair, double tol) {
  Worst w;
  int at_infinity = 0;
  for (const DiscreteCircle& c : pair.circles) {
    if (c.degenerate) continue;
    std::vector<PlaneH> planes;
    for (const CircleVertex& v : c.vertices) {
      PlaneH pl;
      if (polar_face_plane(pair, v, &pl)) planes.push_back(pl);
    }
    if (planes.size() < 3) continue;
    Eigen::MatrixXd A(static_cast<Eigen::Index>(planes.size()), 4);
    for (std::size_t i = 0; i < planes.size(); ++i) {
      A(static_cast<Eigen::Index>(i), 0) = planes[i].normal.x();
      A(static_cast<Eigen::Index>(i), 1) = planes[i].normal.y();
      A(static_cast<Eigen::Index>(i), 2) = planes[i].normal.z();
      A(static_cast<Eigen::Index>(i), 3) = -planes[i].offset;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const Eigen::Vector4d X = svd.matrixV().col(3);
    const Vec3 xyz(X[0], X[1], X[2]);
    const std::string el = std::string("family ") + (c.family > 0 ? "+" : "-") + " level " +
                           std::to_string(c.level.twice()) + "/2";
    const PoleResult circle_pole = pole(c.plane, pair.quadric);
    const int fam_idx = (c.family > 0) ? 0 : 1;
    // opposite umbilic vertices of this family
    const auto& uv = pair.umbilic_vertices;
    const Vec3 u0 = pair.primal.positions[static_cast<std::size_t>(uv[fam_idx == 0 ? 0 : 1])];
    const Vec3 u1 = pair.primal.positions[static_cast<std::size_t>(uv[fam_idx == 0 ? 3 : 2])];
    const Vec3 line_dir = (u1 - u0).normalized();

    if (std::abs(X[3]) < 1e-9 * xyz.norm()) {
      ++at_infinity;
      const Vec3 dir = xyz.normalized();
      // plane family parallel to a common direction; pole is at infinity too
      if (!circle_pole.at_infinity) {
        w.update(1.0, el + " (apex at infinity, pole finite)");
        continue;
      }
      w.update(1.0 - std::abs(dir.dot(circle_pole.point)), el + " (pole direction)");
      w.update(1.0 - std::abs(dir.dot(line_dir)), el + " (umbilic line direction)");
      continue;
    }
    const Vec3 apex = xyz / X[3];
    const double scale = (apex - c.center).norm() + diameter(circle_positions(pair, c));
    double concur = 0;
    for (const PlaneH& pl : planes)
      concur = std::max(concur, std::abs(pl.signed_distance(apex)));
    w.update(concur / scale, el + " (concurrency)");
    if (circle_pole.at_infinity) {
      w.update(1.0, el + " (apex finite, pole at infinity)");
    } else {
      w.update((apex - circle_pole.point).norm() / scale, el + " (apex vs pole)");
    }
    const Vec3 rel = apex - u0;
    const double line_dist = (rel - rel.dot(line_dir) * line_dir).norm();
    w.update(line_dist / scale, el + " (umbilic line)");
  }
  CheckEntry e = finish("cone_apex", w, tol);
  if (at_infinity > 0)
    e.note = std::to_string(at_infinity) + " central circle(s) with apex at infinity";
  return e;
}

// ---------------------------------------------------------------------------
// Congruence
// ---------------------------------------------------------------------------

CheckEntry check_congruence(const ClosedEllipsoidPair& a, const ClosedEllipsoidPair& b,
                            double tol) {
  Worst w;
  if (a.circles.size() != b.circles.size())
    return CheckEntry{"congruence", 1.0, tol, false, "circle count mismatch",
                      0,            false, {}};
  for (std::size_t ci = 0; ci < a.circles.size(); ++ci) {
    const DiscreteCircle &ca = a.circles[ci], &cb = b.circles[ci];
    const std::string el = std::string("family ") + (ca.family > 0 ? "+" : "-") + " level " +
                           std::to_string(ca.level.twice()) + "/2";
    if (ca.family != cb.family || !(ca.level == cb.level) ||
        ca.vertices.size() != cb.vertices.size()) {
      w.update(1.0, el + " (combinatorial mismatch)");
      continue;
    }
    if (ca.degenerate) continue;
    const auto pa = circle_positions(a, ca);
    const auto pb = circle_positions(b, cb);
    const std::size_t n = pa.size();
    const double diam = std::max(diameter(pa), diameter(pb));

    std::vector<double> da, db;
    for (std::size_t i = 0; i < n; ++i) {
      da.push_back((pa[(i + 1) % n] - pa[i]).norm());
      db.push_back((pb[(i + 1) % n] - pb[i]).norm());
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    for (std::size_t i = 0; i < n; ++i)
      w.update(std::abs(da[i] - db[i]) / diam, el + " (edge lengths)");

    // rigid alignment with the combinatorial correspondence
    Vec3 ca_mean = Vec3::Zero(), cb_mean = Vec3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      ca_mean += pa[i];
      cb_mean += pb[i];
    }
    ca_mean /= static_cast<double>(n);
    cb_mean /= static_cast<double>(n);
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < n; ++i) H += (pa[i] - ca_mean) * (pb[i] - cb_mean).transpose();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d R = svd.matrixV() * svd.matrixU().transpose();
    if (R.determinant() < 0) {
      Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
      flip(2, 2) = -1;
      R = svd.matrixV() * flip * svd.matrixU().transpose();
    }
    for (std::size_t i = 0; i < n; ++i)
      w.update((R * (pa[i] - ca_mean) - (pb[i] - cb_mean)).norm() / diam,
               el + " (rigid alignment)");
  }
  return finish("congruence", w, tol);
}

// ---------------------------------------------------------------------------
// Boundary, focal hyperbola, topology
// ---------------------------------------------------------------------------

CheckEntry check_boundary_and_signs(const GFunctions& g, const ShapeParams& p, double tol) {
  Worst w;
  w.update(g.boundary_residual, "boundary values g1(+-N1), g2(+-N2)");
  if (g.interior_sign_change) w.update(1.0, "interior sign change");
  (void)p;
  return finish("boundary_closure", w, tol);
}

CheckEntry check_focal_hyperbola(const std::vector<ClosedEllipsoidPair>& family, double tol) {
  Worst w;
  int skipped = 0;
  for (const ClosedEllipsoidPair& pair : family) {
    const ShapeParams& p = pair.shape;
    const int T1 = 2 * p.n1_max, T2 = 2 * p.n2_max;
    // scaling back to the unscaled confocal system: g3^2 = (a-c)/(Phi-Psi)
    const double phi = pair.quadric.alpha, psi = pair.quadric.gamma;
    if (phi - psi < 1e-9) {
      ++skipped;  // at/beyond the sphere member the unscaled family ends
      continue;
    }
    const double g3sq = (p.a - p.c) / (phi - psi);
    const Vec3 u = pair.primal_pos(make_point(T1, T2));
    const Vec3 v = pair.dual_pos(make_point(T1 - 1, T2 - 1));
    const double rel = g3sq * (u.x() * v.x() / (p.a - p.b) - u.z() * v.z() / (p.b - p.c));
    const std::string el = "s3 = " + std::to_string(pair.s3);
    w.update(std::abs(rel - 1.0), el);
    w.update(std::abs(g3sq * u.y() * v.y()) / (p.a - p.c), el + " (y product)");
  }
  CheckEntry e = finish("focal_hyperbola", w, tol);
  if (skipped > 0) e.note = std::to_string(skipped) + " member(s) beyond the sphere skipped";
  return e;
}

CheckEntry check_closed_topology(const ClosedEllipsoidPair& pair) {
  const SurfaceTopology tp = primal_topology(pair.ident);
  const SurfaceTopology td = dual_topology(pair.ident);
  int violations = 0;
  std::ostringstream why;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) {
      ++violations;
      why << what << "; ";
    }
  };
  expect(tp.euler == 2, "primal euler != 2");
  expect(td.euler == 2, "dual euler != 2");
  expect(tp.closed, "primal not closed");
  expect(td.closed, "dual not closed");
  expect(tp.consistently_oriented, "primal orientation");
  expect(td.consistently_oriented, "dual orientation");
  auto count_val = [](const SurfaceTopology& t, int v) {
    const auto it = t.valence_histogram.find(v);
    return it == t.valence_histogram.end() ? 0 : it->second;
  };
  expect(count_val(tp, 2) == 4, "primal valence-2 count != 4");
  expect(count_val(td, 3) == 8, "dual valence-3 count != 8");
  int umbilic_edges = 0;
  for (const DualEdgeRec& e : pair.ident.dual_edges())
    if (e.umbilic) ++umbilic_edges;
  expect(umbilic_edges == 4, "umbilic glue edge count != 4");
  // degenerate circles coincide with umbilic vertices + edges
  int degenerate = 0;
  for (const DiscreteCircle& c : pair.circles)
    if (c.degenerate) {
      ++degenerate;
      expect(!c.vertices.empty() && !c.vertices.front().dual &&
                 std::count(pair.umbilic_vertices.begin(), pair.umbilic_vertices.end(),
                            c.vertices.front().id) == 1,
             "degenerate circle not anchored at an umbilic vertex");
      expect(c.vertices.size() == 3, "degenerate circle missing its umbilic edge");
    }
  expect(degenerate == 4, "degenerate circle count != 4");

  CheckEntry e;
  e.name = "closed_topology";
  e.max_residual = violations;
  e.tolerance = 0;
  e.pass = violations == 0;
  e.worst_element = why.str();
  e.checked = 1;
  return e;
}

// ---------------------------------------------------------------------------
// bcc orthogonality
// ---------------------------------------------------------------------------

CheckEntry check_bcc(const ConfocalLattice3D& lat, double tol) {
  Worst w;
  auto at = [&](int t1, int t2, int t3) {
    return LatticePoint3{HalfIndex::from_twice(t1), HalfIndex::from_twice(t2),
                         HalfIndex::from_twice(t3)};
  };
  for (int t1 = -2 * lat.bounds[0]; t1 <= 2 * lat.bounds[0]; t1 += 2)
    for (int t2 = -2 * lat.bounds[1]; t2 <= 2 * lat.bounds[1]; t2 += 2)
      for (int t3 = -2 * lat.bounds[2]; t3 <= 2 * lat.bounds[2]; t3 += 2) {
        const int t[3] = {t1, t2, t3};
        for (int i = 0; i < 3; ++i) {
          int te[3] = {t1, t2, t3};
          te[i] += 2;
          if (!lat.contains(at(te[0], te[1], te[2]))) continue;
          const Vec3 E = lat.r(at(te[0], te[1], te[2])) - lat.r(at(t[0], t[1], t[2]));
          // the four dual edges around this edge, directions j != i
          const int j = (i + 1) % 3, k = (i + 2) % 3;
          for (int sj : {-1, +1})
            for (int sk : {-1, +1}) {
              int mid[3] = {t1, t2, t3};
              mid[i] += 1;
              mid[j] += sj;
              mid[k] += sk;
              for (int dir : {j, k}) {
                int q0[3] = {mid[0], mid[1], mid[2]};
                q0[dir] -= 2 * (dir == j ? sj : sk);
                const LatticePoint3 A = at(mid[0], mid[1], mid[2]);
                const LatticePoint3 B = at(q0[0], q0[1], q0[2]);
                if (!lat.contains(A) || !lat.contains(B)) continue;
                std::ostringstream el;
                el << "edge (" << t1 << "," << t2 << "," << t3 << ")+e" << i;
                w.update(edge_cos(Vec3::Zero(), E, lat.r(A), lat.r(B)), el.str());
              }
            }
        }
      }
  return finish("bcc_orthogonality", w, tol);
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

VerificationReport verify_pair(const ClosedEllipsoidPair& pair, double tol) {
  VerificationReport rep;
  rep.add(check_principal(pair, tol));
  rep.add(check_polarity(pair, tol));
  rep.add(check_circles(pair, tol));
  rep.add(check_cone_apex(pair, std::max(tol, 1e-8)));
  rep.add(check_closed_topology(pair));
  rep.finalize();
  return rep;
}

}  // namespace binet
