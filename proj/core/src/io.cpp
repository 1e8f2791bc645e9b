#include "binet/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace binet {

namespace {

std::string fp(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);  // binary: byte-identical reruns
  if (!os) throw std::runtime_error("cannot open for writing: " + p.string());
  return os;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.n1 < 1 || cfg.n2 < 1) throw std::invalid_argument("config: n1, n2 must be positive");
  if (!(cfg.scale > 0)) throw std::invalid_argument("config: scale must be positive");
  if (!(cfg.tol > 0)) throw std::invalid_argument("config: tol must be positive");
  for (double s3 : cfg.s3_list)
    if (!(s3 >= 0 && s3 < 3.141592653589793238462643383279502884))
      throw std::invalid_argument("config: s3 values must lie in [0, pi)");
  if (!cfg.natural_init && (cfg.g1_0 == 0.0 || cfg.g2_0 == 0.0))
    throw std::invalid_argument("config: custom g initial values must be nonzero");
  for (const std::string& f : cfg.formats)
    if (f != "obj" && f != "ply" && f != "json")
      throw std::invalid_argument("config: unknown format " + f);
}

std::vector<double> resolved_s3(const RunConfig& cfg) {
  if (!cfg.s3_list.empty()) return cfg.s3_list;
  const ShapeParams p = solve_boundary_shape(cfg.n1, cfg.n2, cfg.scale);
  return {sphere_parameter(p)};
}

RunConfig config_from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file: " + path);
  nlohmann::json j = nlohmann::json::parse(is);
  RunConfig cfg;
  for (const auto& [k, v] : j.items()) {
    if (k == "n1") cfg.n1 = v.get<int>();
    else if (k == "n2") cfg.n2 = v.get<int>();
    else if (k == "scale") cfg.scale = v.get<double>();
    else if (k == "s3") cfg.s3_list = v.get<std::vector<double>>();
    else if (k == "g_init") {
      if (v.is_string() && v.get<std::string>() == "natural") cfg.natural_init = true;
      else {
        cfg.natural_init = false;
        cfg.g1_0 = v.at("g1_0").get<double>();
        cfg.g2_0 = v.at("g2_0").get<double>();
      }
    } else if (k == "tol") cfg.tol = v.get<double>();
    else if (k == "out") cfg.output_dir = v.get<std::string>();
    else if (k == "formats") cfg.formats = v.get<std::vector<std::string>>();
    else throw std::invalid_argument("config: unknown key " + k);
  }
  validate(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

void write_obj_mesh(std::ostream& os, const MeshBuffers& mesh, const std::string& name) {
  os << "o " << name << "\n";
  for (const Vec3& p : mesh.positions)
    os << "v " << fp(p.x()) << ' ' << fp(p.y()) << ' ' << fp(p.z()) << "\n";
  for (const auto& f : mesh.faces)
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << "\n";
}

void write_ply_mesh(std::ostream& os, const MeshBuffers& mesh) {
  os << "ply\nformat ascii 1.0\n";
  os << "element vertex " << mesh.positions.size() << "\n";
  os << "property double x\nproperty double y\nproperty double z\n";
  os << "element face " << mesh.faces.size() << "\n";
  os << "property list uchar int vertex_indices\nend_header\n";
  for (const Vec3& p : mesh.positions)
    os << fp(p.x()) << ' ' << fp(p.y()) << ' ' << fp(p.z()) << "\n";
  for (const auto& f : mesh.faces)
    os << "4 " << f[0] << ' ' << f[1] << ' ' << f[2] << ' ' << f[3] << "\n";
}

void write_obj_circles(std::ostream& os, const ClosedEllipsoidPair& pair) {
  os << "o circles\n";
  int base = 1;
  std::ostringstream elements;
  for (const DiscreteCircle& c : pair.circles) {
    for (const CircleVertex& v : c.vertices) {
      const Vec3& p = v.dual ? pair.dual.positions[static_cast<std::size_t>(v.id)]
                             : pair.primal.positions[static_cast<std::size_t>(v.id)];
      os << "v " << fp(p.x()) << ' ' << fp(p.y()) << ' ' << fp(p.z()) << "\n";
    }
    const int n = static_cast<int>(c.vertices.size());
    if (c.degenerate) {
      // umbilic vertex as a point element, umbilic edge as a segment
      elements << "p " << base << "\n";
      if (n == 3) elements << "l " << base + 1 << ' ' << base + 2 << "\n";
    } else {
      elements << 'l';
      for (int i = 0; i < n; ++i) elements << ' ' << base + i;
      if (c.closed) elements << ' ' << base;
      elements << "\n";
    }
    base += n;
  }
  os << elements.str();
}

void write_metadata(std::ostream& os, const ClosedEllipsoidPair& pair, const RunConfig& cfg) {
  const ShapeParams& p = pair.shape;
  os << "{\n";
  os << "  \"n1\": " << p.n1_max << ",\n  \"n2\": " << p.n2_max << ",\n";
  os << "  \"scale\": " << fp(cfg.scale) << ",\n";
  os << "  \"s3\": " << fp(pair.s3) << ",\n";
  os << "  \"shape\": {\"a\": " << fp(p.a) << ", \"b\": " << fp(p.b) << ", \"c\": " << fp(p.c)
     << ", \"delta\": " << fp(p.delta) << ", \"epsilon\": " << fp(p.epsilon)
     << ", \"q\": " << fp(p.q) << "},\n";
  os << "  \"quadric\": {\"alpha\": " << fp(pair.quadric.alpha)
     << ", \"beta\": " << fp(pair.quadric.beta) << ", \"gamma\": " << fp(pair.quadric.gamma)
     << "},\n";
  os << "  \"seam_residual\": " << fp(pair.seam_residual) << ",\n";
  os << "  \"counts\": {\"primal_vertices\": " << pair.primal.positions.size()
     << ", \"primal_faces\": " << pair.primal.faces.size()
     << ", \"dual_vertices\": " << pair.dual.positions.size()
     << ", \"dual_faces\": " << pair.dual.faces.size()
     << ", \"circles\": " << pair.circles.size() << "}\n";
  os << "}\n";
}

std::string report_json(const std::vector<ReportSection>& sections, double tol) {
  bool overall = true;
  for (const ReportSection& s : sections)
    if (!s.report.overall_pass) overall = false;
  std::ostringstream os;
  os << "{\n  \"version\": 1,\n";
  os << "  \"overall_pass\": " << (overall ? "true" : "false") << ",\n";
  os << "  \"tolerance\": " << fp(tol) << ",\n";
  os << "  \"sections\": [";
  for (std::size_t si = 0; si < sections.size(); ++si) {
    const ReportSection& s = sections[si];
    os << (si ? ",\n" : "\n");
    os << "    {\n      \"instance\": \"" << json_escape(s.instance) << "\",\n";
    os << "      \"pass\": " << (s.report.overall_pass ? "true" : "false") << ",\n";
    os << "      \"entries\": [";
    for (std::size_t ei = 0; ei < s.report.entries.size(); ++ei) {
      const CheckEntry& e = s.report.entries[ei];
      os << (ei ? ",\n" : "\n");
      os << "        {\"name\": \"" << json_escape(e.name) << "\", \"max_residual\": "
         << fp(e.max_residual) << ", \"tolerance\": " << fp(e.tolerance)
         << ", \"pass\": " << (e.pass ? "true" : "false") << ", \"checked\": " << e.checked
         << ", \"skipped\": " << (e.skipped ? "true" : "false") << ", \"worst_element\": \""
         << json_escape(e.worst_element) << "\", \"note\": \"" << json_escape(e.note) << "\"}";
    }
    os << "\n      ]\n    }";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace {

ClosedEllipsoidPair build_member(const RunConfig& cfg, double s3) {
  const ShapeParams p = solve_boundary_shape(cfg.n1, cfg.n2, cfg.scale);
  double g1_0, g2_0;
  if (cfg.natural_init) {
    std::tie(g1_0, g2_0) = natural_g_init(p);
  } else {
    g1_0 = cfg.g1_0;
    g2_0 = cfg.g2_0;
  }
  const SemiBinet plus = build_semi_ellipsoid(p, s3, +1, g1_0, g2_0);
  const SemiBinet minus = build_semi_ellipsoid(p, s3, -1, g1_0, g2_0);
  return glue_closed(plus, minus);
}

std::string instance_name(const RunConfig& cfg, double s3) {
  std::ostringstream os;
  os << "n1=" << cfg.n1 << " n2=" << cfg.n2 << " s3=" << fp(s3);
  return os.str();
}

bool wants(const RunConfig& cfg, const char* fmt) {
  for (const std::string& f : cfg.formats)
    if (f == fmt) return true;
  return false;
}

}  // namespace

std::vector<std::string> cmd_generate(const RunConfig& cfg) {
  validate(cfg);
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  const std::vector<double> s3s = resolved_s3(cfg);
  std::vector<std::string> files;
  auto emit = [&](const std::filesystem::path& p, auto&& writer) {
    auto os = open_out(p);
    writer(os);
    files.push_back(p.string());
  };
  for (std::size_t i = 0; i < s3s.size(); ++i) {
    const ClosedEllipsoidPair pair = build_member(cfg, s3s[i]);
    const std::string stem = "ellipsoid_" + std::to_string(i);
    if (wants(cfg, "obj")) {
      emit(dir / (stem + "_primal.obj"),
           [&](std::ostream& os) { write_obj_mesh(os, pair.primal, stem + "_primal"); });
      emit(dir / (stem + "_dual.obj"),
           [&](std::ostream& os) { write_obj_mesh(os, pair.dual, stem + "_dual"); });
      emit(dir / (stem + "_circles.obj"),
           [&](std::ostream& os) { write_obj_circles(os, pair); });
    }
    if (wants(cfg, "ply")) {
      emit(dir / (stem + "_primal.ply"),
           [&](std::ostream& os) { write_ply_mesh(os, pair.primal); });
      emit(dir / (stem + "_dual.ply"),
           [&](std::ostream& os) { write_ply_mesh(os, pair.dual); });
    }
    if (wants(cfg, "json")) {
      emit(dir / (stem + "_meta.json"),
           [&](std::ostream& os) { write_metadata(os, pair, cfg); });
    }
  }
  return files;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  const std::vector<double> s3s = resolved_s3(cfg);
  std::vector<ReportSection> sections;
  std::vector<ClosedEllipsoidPair> family;
  const ShapeParams p = solve_boundary_shape(cfg.n1, cfg.n2, cfg.scale);

  for (double s3 : s3s) {
    const ClosedEllipsoidPair pair = build_member(cfg, s3);
    VerificationReport rep = verify_pair(pair, cfg.tol);
    const auto [g1_0, g2_0] = natural_g_init(p);
    const GFunctions g = g_recurrence(p, cfg.natural_init ? g1_0 : cfg.g1_0,
                                      cfg.natural_init ? g2_0 : cfg.g2_0);
    rep.add(check_boundary_and_signs(g, p, cfg.tol));
    rep.finalize();
    sections.push_back(ReportSection{instance_name(cfg, s3), std::move(rep)});
    family.push_back(pair);
  }

  {
    // family-level checks: focal hyperbola over the members, bcc lattice
    VerificationReport rep;
    rep.add(check_focal_hyperbola(family, cfg.tol));
    const auto samplers =
        standard_confocal_samplers(p.a, p.b, p.c, {0.45, 0.45, 0.45}, {2, 2, 2});
    rep.add(check_bcc(build_discrete_confocal_3d(samplers, {2, 2, 2}), cfg.tol));
    rep.finalize();
    sections.push_back(ReportSection{"family", std::move(rep)});
  }

  bool overall = true;
  for (const ReportSection& s : sections) {
    for (const CheckEntry& e : s.report.entries)
      log << (e.skipped ? "SKIP" : (e.pass ? "PASS" : "FAIL")) << ' ' << s.instance << " : "
          << e.name << " residual " << fp(e.max_residual) << " tol " << fp(e.tolerance)
          << "\n";
    if (!s.report.overall_pass) overall = false;
  }
  auto os = open_out(dir / "report.json");
  os << report_json(sections, cfg.tol);
  return overall ? 0 : 1;
}

int cmd_deform(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  const std::vector<double> s3s = resolved_s3(cfg);
  std::vector<ClosedEllipsoidPair> family;
  for (double s3 : s3s) family.push_back(build_member(cfg, s3));

  std::vector<ReportSection> sections;
  VerificationReport rep;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      CheckEntry e = check_congruence(family[i], family[j], cfg.tol);
      e.name = "congruence " + fp(s3s[i]) + " vs " + fp(s3s[j]);
      rep.add(std::move(e));
    }
  rep.finalize();
  const bool empty = rep.entries.empty();
  sections.push_back(ReportSection{"deformation family", std::move(rep)});
  for (const CheckEntry& e : sections.front().report.entries)
    log << (e.pass ? "PASS " : "FAIL ") << e.name << " residual " << fp(e.max_residual) << "\n";
  if (empty) log << "single member: nothing to compare\n";
  auto os = open_out(dir / "deform_report.json");
  os << report_json(sections, cfg.tol);
  return sections.front().report.overall_pass ? 0 : 1;
}

int cmd_web(int m1, int m2, const std::string& output_dir, std::ostream& log) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("web: M1, M2 must be positive");
  const std::filesystem::path dir(output_dir);
  std::filesystem::create_directories(dir);

  const double ratio = web_closing(m1, m2);  // (a-b)/(a-c)
  const double a = 1.5, c = 0.5, b = a - ratio * (a - c);
  const QuadricForm Q{a, b, c};
  const double s1max = std::asin(std::sqrt(ratio)), s2max = std::acos(std::sqrt(ratio));
  const double step = 2 * s1max / m1;  // equals 2*s2max/m2 by the closing condition

  auto point = [&](int hemi, double s1, double s2) { return diag_param(Q, hemi, s1, s2); };

  std::vector<Vec3> verts;
  std::ostringstream lines;
  auto polyline = [&](const std::vector<Vec3>& pts, bool closed) {
    const int base = static_cast<int>(verts.size()) + 1;
    verts.insert(verts.end(), pts.begin(), pts.end());
    lines << 'l';
    for (std::size_t i = 0; i < pts.size(); ++i) lines << ' ' << base + static_cast<int>(i);
    if (closed) lines << ' ' << base;
    lines << "\n";
  };

  // curvature lines on both hemispheres
  for (int hemi : {+1, -1}) {
    for (int i = 0; i <= m1; ++i) {
      const double s1 = -s1max + i * step;
      std::vector<Vec3> pts;
      for (int j = 0; j <= m2; ++j) pts.push_back(point(hemi, s1, -s2max + j * step));
      polyline(pts, false);
    }
    for (int j = 0; j <= m2; ++j) {
      const double s2 = -s2max + j * step;
      std::vector<Vec3> pts;
      for (int i = 0; i <= m1; ++i) pts.push_back(point(hemi, -s1max + i * step, s2));
      polyline(pts, false);
    }
  }

  // circular cross sections: diagonals s1 +- s2 = const, closed across the
  // two hemispheres
  std::ostringstream circles;
  std::vector<Vec3> cverts;
  auto circleline = [&](const std::vector<Vec3>& pts) {
    const int base = static_cast<int>(cverts.size()) + 1;
    cverts.insert(cverts.end(), pts.begin(), pts.end());
    circles << 'l';
    for (std::size_t i = 0; i < pts.size(); ++i) circles << ' ' << base + static_cast<int>(i);
    circles << ' ' << base << "\n";
  };
  double closure_worst = 0;
  for (int fam : {+1, -1}) {
    for (int k = 1; k < m1 + m2; ++k) {
      const double t = -s1max - s2max + k * step;  // s1 + fam*s2 = t
      std::vector<Vec3> plus, minus;
      for (int i = 0; i <= m1; ++i) {
        const double s1 = -s1max + i * step;
        const double s2 = fam * (t - s1);
        if (s2 < -s2max - 1e-12 || s2 > s2max + 1e-12) continue;
        plus.push_back(point(+1, s1, s2));
        minus.push_back(point(-1, s1, s2));
      }
      if (plus.size() < 2) continue;
      // walk the + half forward and the - half backward; the shared y = 0
      // boundary points appear once
      std::vector<Vec3> loop = plus;
      for (int k = static_cast<int>(minus.size()) - 2; k >= 1; --k)
        loop.push_back(minus[static_cast<std::size_t>(k)]);
      // closure quality: first/last of the two halves coincide at y = 0
      closure_worst = std::max(closure_worst, (plus.front() - minus.front()).norm());
      closure_worst = std::max(closure_worst, (plus.back() - minus.back()).norm());
      circleline(loop);
    }
  }

  {
    auto os = open_out(dir / "web_lines.obj");
    os << "o web_lines\n";
    for (const Vec3& p : verts)
      os << "v " << fp(p.x()) << ' ' << fp(p.y()) << ' ' << fp(p.z()) << "\n";
    os << lines.str();
  }
  {
    auto os = open_out(dir / "web_circles.obj");
    os << "o web_circles\n";
    for (const Vec3& p : cverts)
      os << "v " << fp(p.x()) << ' ' << fp(p.y()) << ' ' << fp(p.z()) << "\n";
    os << circles.str();
  }
  {
    auto os = open_out(dir / "web_meta.json");
    os << "{\n  \"m1\": " << m1 << ",\n  \"m2\": " << m2 << ",\n  \"ratio\": " << fp(ratio)
       << ",\n  \"q\": " << fp(2 * ratio - 1) << ",\n  \"shape\": {\"a\": " << fp(a)
       << ", \"b\": " << fp(b) << ", \"c\": " << fp(c) << "},\n  \"closure_residual\": "
       << fp(closure_worst) << "\n}\n";
  }
  log << "web closing ratio (a-b)/(a-c) = " << fp(ratio) << ", q = " << fp(2 * ratio - 1)
      << ", closure residual " << fp(closure_worst) << "\n";
  return 0;
}

}  // namespace binet
