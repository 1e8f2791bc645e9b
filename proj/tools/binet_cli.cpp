// Command line front end: generate / verify / deform / web.
//
// Exit codes: 0 success (all checks passed), 1 at least one geometric check
// failed, 2 usage or configuration error.

#include <CLI11.hpp>
#include <iostream>

#include "binet/io.hpp"

namespace {

struct CommonOpts {
  binet::RunConfig cfg;
  std::string config_path;
  std::string g_init = "natural";
  CLI::Option *o_n1 = nullptr, *o_n2 = nullptr, *o_scale = nullptr, *o_s3 = nullptr,
              *o_tol = nullptr, *o_out = nullptr, *o_format = nullptr, *o_g1 = nullptr,
              *o_g2 = nullptr, *o_ginit = nullptr;
};

void register_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--config", o->config_path, "JSON config file (flags override it)");
  o->o_n1 = cmd->add_option("--n1", o->cfg.n1, "lattice size N1");
  o->o_n2 = cmd->add_option("--n2", o->cfg.n2, "lattice size N2");
  o->o_scale = cmd->add_option("--scale", o->cfg.scale, "sets a - c");
  o->o_s3 = cmd->add_option("--s3", o->cfg.s3_list,
                            "deformation parameter(s) in [0, pi); default: the sphere member");
  o->o_tol = cmd->add_option("--tol", o->cfg.tol, "verification tolerance");
  o->o_out = cmd->add_option("--out", o->cfg.output_dir, "output directory");
  o->o_format = cmd->add_option("--format", o->cfg.formats, "output formats: obj ply json");
  o->o_ginit = cmd->add_option("--g-init", o->g_init, "natural | custom");
  o->o_g1 = cmd->add_option("--g1-0", o->cfg.g1_0, "custom g1(0)");
  o->o_g2 = cmd->add_option("--g2-0", o->cfg.g2_0, "custom g2(0)");
}

binet::RunConfig resolve(const CommonOpts& o) {
  binet::RunConfig cfg;
  if (!o.config_path.empty()) cfg = binet::config_from_json_file(o.config_path);
  if (o.o_n1->count()) cfg.n1 = o.cfg.n1;
  if (o.o_n2->count()) cfg.n2 = o.cfg.n2;
  if (o.o_scale->count()) cfg.scale = o.cfg.scale;
  if (o.o_s3->count()) cfg.s3_list = o.cfg.s3_list;
  if (o.o_tol->count()) cfg.tol = o.cfg.tol;
  if (o.o_out->count()) cfg.output_dir = o.cfg.output_dir;
  if (o.o_format->count()) cfg.formats = o.cfg.formats;
  if (o.o_ginit->count()) cfg.natural_init = (o.g_init == "natural");
  if (o.o_g1->count() || o.o_g2->count()) {
    cfg.natural_init = false;
    cfg.g1_0 = o.cfg.g1_0;
    cfg.g2_0 = o.cfg.g2_0;
  }
  binet::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete ellipsoids as principal binets: construction and verification"};
  app.require_subcommand(1);

  CommonOpts gen_o, ver_o, def_o;
  CLI::App* gen = app.add_subcommand("generate", "build meshes, circles and metadata");
  register_common(gen, &gen_o);
  CLI::App* ver = app.add_subcommand("verify", "run the invariant suite, write report.json");
  register_common(ver, &ver_o);
  CLI::App* def = app.add_subcommand("deform", "congruence of circles across the s3 family");
  register_common(def, &def_o);

  CLI::App* web = app.add_subcommand("web", "closed sampled web on a classical ellipsoid");
  int m1 = 2, m2 = 2;
  std::string web_out = ".";
  web->add_option("--m1", m1, "curvature line count 2*M1")->required();
  web->add_option("--m2", m2, "curvature line count 2*M2")->required();
  web->add_option("--out", web_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      const auto files = binet::cmd_generate(resolve(gen_o));
      for (const std::string& f : files) std::cout << f << "\n";
      return 0;
    }
    if (ver->parsed()) return binet::cmd_verify(resolve(ver_o), std::cout);
    if (def->parsed()) return binet::cmd_deform(resolve(def_o), std::cout);
    if (web->parsed()) return binet::cmd_web(m1, m2, web_out, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
