// estc: batch front end for electromagnetic space-time crystal runs.
// Verbs: validate, scan, minimize, observe, fieldmap.
// Exit codes: 0 ok, 2 config error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "estc/pipeline.hpp"
#include "estc/run_config.hpp"
#include "estc/text_io.hpp"
#include "estc/validate.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string precision;
  int radius = 0;
  int threads = 0;
};

estc::RunConfig resolve_config(const CommonOpts& c) {
  estc::RunConfig rc =
      c.config_path.empty() ? estc::parse_run_config("{}") : estc::load_run_config(c.config_path);
  if (!c.out_dir.empty()) rc.out_dir = c.out_dir;
  if (!c.precision.empty()) {
    if (c.precision != "standard" && c.precision != "extended")
      throw estc::config_error("--precision: expected standard or extended");
    rc.precision = c.precision;
  }
  if (c.radius > 0) rc.radius = c.radius;
  if (c.threads > 0) rc.threads = c.threads;
  std::filesystem::create_directories(rc.out_dir);
  return rc;
}

std::ofstream open_out(const estc::RunConfig& rc, const std::string& name) {
  std::string path = rc.out_dir + "/" + name;
  std::ofstream os(path);
  if (!os) throw estc::config_error("cannot open output file '" + path + "'");
  std::cout << "writing " << path << "\n";
  return os;
}

template <class R>
std::array<R, 3> q_of(const estc::RunConfig& rc) {
  return {estc::real_traits<R>::from_double(rc.q[0]), estc::real_traits<R>::from_double(rc.q[1]),
          estc::real_traits<R>::from_double(rc.q[2])};
}

int cmd_validate(const CommonOpts& copt) {
  estc::RunConfig rc = resolve_config(copt);
  auto checks = estc::validate_report(rc.crystal, rc.q);
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%-55s %s  max dev %.3e (tol %.3e)%s%s\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.deviation, c.tolerance, c.detail.empty() ? "" : "  ",
                c.detail.c_str());
    if (!c.pass) ++failed;
  }
  std::printf("%d/%zu checks passed\n", int(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 3;
}

template <class R>
int scan_impl(const estc::RunConfig& rc) {
  auto pts = estc::scan<R>(rc.crystal, q_of<R>(rc), estc::parse_xi<R>(rc.xi_min),
                           estc::parse_xi<R>(rc.xi_max), rc.steps, rc.radius, rc.flags,
                           rc.threads);
  auto os = open_out(rc, "scan.csv");
  estc::write_scan_csv(os, estc::config_echo(rc), pts);
  return 0;
}

template <class R>
std::vector<estc::LineResult<R>> run_lines(const estc::RunConfig& rc) {
  estc::FindLinesOptions<R> opt;
  opt.steps = rc.steps;
  opt.xi_tol = estc::parse_xi<R>(rc.xi_tol);
  opt.fine = rc.fine;
  opt.threads = rc.threads;
  return estc::find_lines<R>(rc.crystal, q_of<R>(rc), estc::parse_xi<R>(rc.xi_min),
                             estc::parse_xi<R>(rc.xi_max), rc.radius, rc.flags, opt);
}

template <class R>
int minimize_impl(const estc::RunConfig& rc) {
  auto lines = run_lines<R>(rc);
  auto os = open_out(rc, "summary.txt");
  estc::write_summary(os, estc::config_echo(rc), lines);
  if (!rc.dump_family.empty()) {
    for (const auto& lr : lines) {
      std::string name = rc.dump_family;
      if (lines.size() > 1) name += "." + lr.line.label;
      std::ofstream fs(rc.out_dir + "/" + name);
      if (!fs) throw estc::config_error("cannot open dump file '" + name + "'");
      estc::Region region = estc::build_region(rc.radius);
      R q4 = estc::q40(q_of<R>(rc)) + lr.line.xi0;
      auto sys = estc::assemble(region, rc.crystal, q_of<R>(rc), q4, rc.flags);
      auto fam = estc::solve_family(sys);
      estc::write_family_dump(fs, estc::config_echo(rc), region, fam.s, fam.ue, fam.ud);
    }
  }
  return 0;
}

template <class R>
int observe_impl(const estc::RunConfig& rc) {
  auto lines = run_lines<R>(rc);
  auto os = open_out(rc, "observe.txt");
  estc::write_summary(os, estc::config_echo(rc), lines);
  return 0;
}

template <class R>
int fieldmap_impl(const estc::RunConfig& rc) {
  auto lines = run_lines<R>(rc);
  estc::FieldMapSpec spec;
  spec.axis1 = rc.map_axes[0] - 1;
  spec.axis2 = rc.map_axes[1] - 1;
  spec.offsets = rc.map_offsets;
  spec.lo1 = rc.map_lo[0];
  spec.hi1 = rc.map_hi[0];
  spec.lo2 = rc.map_lo[1];
  spec.hi2 = rc.map_hi[1];
  spec.n1 = rc.map_grid[0];
  spec.n2 = rc.map_grid[1];
  estc::Mat4<double> op = estc::named_operator(rc.map_operator);
  for (const auto& lr : lines) {
    std::vector<estc::Mat4<double>> s;
    for (const auto& m : lr.s_map) s.push_back(estc::demote(m));
    estc::Vec4<double> c0;
    for (int i = 0; i < 4; ++i)
      c0[i] = {estc::real_traits<R>::to_double(lr.c0[i].re),
               estc::real_traits<R>::to_double(lr.c0[i].im)};
    estc::Region region = estc::build_region(rc.radius);
    double q4 = estc::real_traits<R>::to_double(estc::q40(q_of<R>(rc)) + lr.line.xi0);
    auto fm = estc::field_map(region, s, c0, rc.q, q4, rc.crystal.omega, op, rc.map_operator, spec);
    std::string name =
        lines.size() > 1 ? "fieldmap_" + lr.line.label + ".csv" : std::string("fieldmap.csv");
    auto os = open_out(rc, name);
    estc::write_fieldmap_csv(os, estc::config_echo(rc), fm);
  }
  return 0;
}

template <int (*F_std)(const estc::RunConfig&), int (*F_ext)(const estc::RunConfig&)>
int dispatch(const CommonOpts& copt) {
  estc::RunConfig rc = resolve_config(copt);
  return rc.precision == "extended" ? F_ext(rc) : F_std(rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"estc: Dirac partial solutions in electromagnetic space-time crystals"};
  app.require_subcommand(1);

  CommonOpts copt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", copt.config_path, "JSON run configuration");
    sub->add_option("--out", copt.out_dir, "output directory");
    sub->add_option("--precision", copt.precision, "standard | extended");
    sub->add_option("--radius", copt.radius, "region radius d");
    sub->add_option("--threads", copt.threads, "scan worker threads");
  };

  auto* v = app.add_subcommand("validate", "run analytic and conformance suites");
  auto* sc = app.add_subcommand("scan", "scan the spectral curves over xi");
  auto* mn = app.add_subcommand("minimize", "locate spectral-line minima");
  auto* ob = app.add_subcommand("observe", "observable means at located minima");
  auto* fm = app.add_subcommand("fieldmap", "space-time maps of Hermitian forms");
  for (auto* s : {v, sc, mn, ob, fm}) add_common(s);

  CLI11_PARSE(app, argc, argv);

  try {
    if (v->parsed()) return cmd_validate(copt);
    if (sc->parsed()) return dispatch<scan_impl<double>, scan_impl<estc::ddouble>>(copt);
    if (mn->parsed()) return dispatch<minimize_impl<double>, minimize_impl<estc::ddouble>>(copt);
    if (ob->parsed()) return dispatch<observe_impl<double>, observe_impl<estc::ddouble>>(copt);
    if (fm->parsed()) return dispatch<fieldmap_impl<double>, fieldmap_impl<estc::ddouble>>(copt);
  } catch (const estc::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
