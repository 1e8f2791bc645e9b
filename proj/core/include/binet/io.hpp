#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "binet/builder.hpp"
#include "binet/verify.hpp"

namespace binet {

/// Configuration of the generate/verify/deform commands.
struct RunConfig {
  int n1 = 2, n2 = 1;
  double scale = 1.0;
  std::vector<double> s3_list;  // defaults to the unit-sphere member when empty
  bool natural_init = true;
  double g1_0 = 0.0, g2_0 = 0.0;  // used when !natural_init
  double tol = kDefaultTol;
  std::string output_dir = ".";
  std::vector<std::string> formats = {"obj", "json"};  // subset of obj, ply, json
};

/// Reads a JSON config file; unknown keys are rejected. Throws on parse or
/// validation errors.
RunConfig config_from_json_file(const std::string& path);

/// Resolved s3 samples (config list, or the unit-sphere member).
std::vector<double> resolved_s3(const RunConfig& cfg);

void validate(const RunConfig& cfg);  // throws std::invalid_argument

// --- writers (deterministic: fixed order, 17 significant digits) -----------

void write_obj_mesh(std::ostream& os, const MeshBuffers& mesh, const std::string& name);
void write_ply_mesh(std::ostream& os, const MeshBuffers& mesh);
void write_obj_circles(std::ostream& os, const ClosedEllipsoidPair& pair);
void write_metadata(std::ostream& os, const ClosedEllipsoidPair& pair, const RunConfig& cfg);

/// One report section per built instance.
struct ReportSection {
  std::string instance;
  VerificationReport report;
};

std::string report_json(const std::vector<ReportSection>& sections, double tol);

// --- commands ---------------------------------------------------------------

/// Builds every configured s3 member and writes meshes, circles and
/// metadata into output_dir. Returns the list of files written.
std::vector<std::string> cmd_generate(const RunConfig& cfg);

/// Runs the full verification suite; writes report.json into output_dir and
/// one line per check to `log`. Returns 0 iff every check passed.
int cmd_verify(const RunConfig& cfg, std::ostream& log);

/// Pairwise congruence of the deformation family over the configured s3
/// list; writes deform_report.json. Returns 0 iff all pairs are congruent.
int cmd_deform(const RunConfig& cfg, std::ostream& log);

/// Emits a closed sampled web (curvature lines + circular cross sections)
/// on the classical ellipsoid whose shape satisfies the web closing
/// condition for (M1, M2). Returns 0 on success.
int cmd_web(int m1, int m2, const std::string& output_dir, std::ostream& log);

}  // namespace binet
