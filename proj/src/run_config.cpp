#include "estc/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace estc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw config_error(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown field");
}

double num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string num_or_string(const json& j, const std::string& path) {
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      (void)dd_from_string(s);
    } catch (const std::exception&) {
      fail(path, "not a numeric string: '" + s + "'");
    }
    return s;
  }
  fail(path, "expected a number or numeric string");
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config: top level must be an object");
  check_keys(j, "config",
             {"crystal", "omega", "q", "radius", "precision", "flags", "threads", "scan",
              "minimize", "fieldmap", "dump_family", "out_dir"});

  RunConfig rc;
  double omega = 0.1;
  if (j.contains("omega")) {
    omega = num(j["omega"], "omega");
    if (!(omega > 0)) fail("omega", "must be > 0");
  }

  if (j.contains("crystal")) {
    const json& c = j["crystal"];
    if (!c.is_object()) fail("crystal", "expected an object");
    check_keys(c, "crystal", {"preset", "A_m", "amplitudes"});
    if (c.contains("amplitudes")) {
      rc.preset = "custom";
      const json& a = c["amplitudes"];
      if (!a.is_array() || a.size() != 6) fail("crystal.amplitudes", "expected 6 wave vectors");
      for (int w = 0; w < 6; ++w) {
        const json& row = a[w];
        std::string p = "crystal.amplitudes[" + std::to_string(w) + "]";
        if (!row.is_array() || row.size() != 3) fail(p, "expected 3 components");
        for (int k = 0; k < 3; ++k) {
          const json& e = row[k];
          std::string pk = p + "[" + std::to_string(k) + "]";
          if (!e.is_array() || e.size() != 2) fail(pk, "expected [re, im]");
          rc.crystal.amplitude[w][k] = {num(e[0], pk + "[0]"), num(e[1], pk + "[1]")};
        }
      }
    } else {
      if (c.contains("preset")) {
        rc.preset = c["preset"].is_string() ? c["preset"].get<std::string>() : "";
        if (rc.preset != "estc1" && rc.preset != "estc2" && rc.preset != "zero")
          fail("crystal.preset", "expected estc1, estc2 or zero");
      }
      if (c.contains("A_m")) {
        rc.a_m = num(c["A_m"], "crystal.A_m");
        if (rc.a_m < 0) fail("crystal.A_m", "must be >= 0");
      }
    }
  }
  if (rc.preset == "estc1") rc.crystal = estc1(rc.a_m, omega);
  else if (rc.preset == "estc2") rc.crystal = estc2(rc.a_m, omega);
  else if (rc.preset == "zero") rc.crystal = zero_crystal(omega);
  else rc.crystal.omega = omega;

  if (j.contains("q")) {
    const json& q = j["q"];
    if (!q.is_array() || q.size() != 3) fail("q", "expected 3 components");
    for (int k = 0; k < 3; ++k) rc.q[k] = num(q[k], "q[" + std::to_string(k) + "]");
  }
  if (j.contains("radius")) {
    if (!j["radius"].is_number_integer()) fail("radius", "expected an integer");
    rc.radius = j["radius"].get<int>();
    if (rc.radius < 1) fail("radius", "must be >= 1");
  }
  if (j.contains("precision")) {
    rc.precision = j["precision"].is_string() ? j["precision"].get<std::string>() : "";
    if (rc.precision != "standard" && rc.precision != "extended")
      fail("precision", "expected standard or extended");
  }
  if (j.contains("flags")) {
    const json& f = j["flags"];
    if (!f.is_object()) fail("flags", "expected an object");
    check_keys(f, "flags", {"a2_diagonal", "coupling_sign"});
    if (f.contains("a2_diagonal")) {
      if (!f["a2_diagonal"].is_boolean()) fail("flags.a2_diagonal", "expected a boolean");
      rc.flags.a2_diagonal = f["a2_diagonal"].get<bool>();
    }
    if (f.contains("coupling_sign")) {
      int cs = f["coupling_sign"].is_number_integer() ? f["coupling_sign"].get<int>() : 0;
      if (cs != 1 && cs != -1) fail("flags.coupling_sign", "expected +1 or -1");
      rc.flags.coupling_sign = cs;
    }
  }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer()) fail("threads", "expected an integer");
    rc.threads = j["threads"].get<int>();
    if (rc.threads < 1 || rc.threads > 256) fail("threads", "must be in [1, 256]");
  }
  if (j.contains("scan")) {
    const json& s = j["scan"];
    if (!s.is_object()) fail("scan", "expected an object");
    check_keys(s, "scan", {"xi_min", "xi_max", "steps"});
    if (s.contains("xi_min")) rc.xi_min = num_or_string(s["xi_min"], "scan.xi_min");
    if (s.contains("xi_max")) rc.xi_max = num_or_string(s["xi_max"], "scan.xi_max");
    if (s.contains("steps")) {
      if (!s["steps"].is_number_integer()) fail("scan.steps", "expected an integer");
      rc.steps = s["steps"].get<int>();
      if (rc.steps < 2) fail("scan.steps", "must be >= 2");
    }
    if (dd_from_string(rc.xi_max) <= dd_from_string(rc.xi_min))
      fail("scan.xi_max", "must be greater than scan.xi_min");
  }
  if (j.contains("minimize")) {
    const json& m = j["minimize"];
    if (!m.is_object()) fail("minimize", "expected an object");
    check_keys(m, "minimize", {"xi_tol", "fine"});
    if (m.contains("xi_tol")) rc.xi_tol = num_or_string(m["xi_tol"], "minimize.xi_tol");
    if (m.contains("fine")) {
      if (!m["fine"].is_boolean()) fail("minimize.fine", "expected a boolean");
      rc.fine = m["fine"].get<bool>();
    }
  }
  if (j.contains("fieldmap")) {
    const json& f = j["fieldmap"];
    if (!f.is_object()) fail("fieldmap", "expected an object");
    check_keys(f, "fieldmap", {"operator", "axes", "offsets", "lo", "hi", "grid"});
    if (f.contains("operator")) {
      rc.map_operator = f["operator"].is_string() ? f["operator"].get<std::string>() : "";
      try {
        (void)named_operator(rc.map_operator);
      } catch (const config_error& e) {
        fail("fieldmap.operator", e.what());
      }
    }
    if (f.contains("axes")) {
      const json& a = f["axes"];
      if (!a.is_array() || a.size() != 2) fail("fieldmap.axes", "expected two axis indices");
      for (int k = 0; k < 2; ++k) {
        if (!a[k].is_number_integer()) fail("fieldmap.axes", "expected integers 1..4");
        rc.map_axes[k] = a[k].get<int>();
        if (rc.map_axes[k] < 1 || rc.map_axes[k] > 4) fail("fieldmap.axes", "axis must be 1..4");
      }
      if (rc.map_axes[0] == rc.map_axes[1]) fail("fieldmap.axes", "axes must differ");
    }
    if (f.contains("offsets")) {
      const json& o = f["offsets"];
      if (!o.is_array() || o.size() != 4) fail("fieldmap.offsets", "expected 4 values");
      for (int k = 0; k < 4; ++k) rc.map_offsets[k] = num(o[k], "fieldmap.offsets");
    }
    if (f.contains("lo")) {
      const json& o = f["lo"];
      if (!o.is_array() || o.size() != 2) fail("fieldmap.lo", "expected 2 values");
      for (int k = 0; k < 2; ++k) rc.map_lo[k] = num(o[k], "fieldmap.lo");
    }
    if (f.contains("hi")) {
      const json& o = f["hi"];
      if (!o.is_array() || o.size() != 2) fail("fieldmap.hi", "expected 2 values");
      for (int k = 0; k < 2; ++k) rc.map_hi[k] = num(o[k], "fieldmap.hi");
    }
    if (f.contains("grid")) {
      const json& o = f["grid"];
      if (!o.is_array() || o.size() != 2) fail("fieldmap.grid", "expected 2 sizes");
      for (int k = 0; k < 2; ++k) {
        if (!o[k].is_number_integer()) fail("fieldmap.grid", "expected integers");
        rc.map_grid[k] = o[k].get<int>();
        if (rc.map_grid[k] < 2 || rc.map_grid[k] > 4096) fail("fieldmap.grid", "size must be 2..4096");
      }
    }
  }
  if (j.contains("dump_family")) {
    if (!j["dump_family"].is_string()) fail("dump_family", "expected a path string");
    rc.dump_family = j["dump_family"].get<std::string>();
  }
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) fail("out_dir", "expected a path string");
    rc.out_dir = j["out_dir"].get<std::string>();
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string config_echo(const RunConfig& rc) {
  json j;
  j["crystal"]["preset"] = rc.preset;
  if (rc.preset != "custom") j["crystal"]["A_m"] = rc.a_m;
  json amps = json::array();
  for (const auto& w : rc.crystal.amplitude) {
    json row = json::array();
    for (const auto& e : w) row.push_back({e.re, e.im});
    amps.push_back(row);
  }
  j["crystal"]["amplitudes"] = amps;
  j["omega"] = rc.crystal.omega;
  j["q"] = rc.q;
  j["radius"] = rc.radius;
  j["precision"] = rc.precision;
  j["flags"]["a2_diagonal"] = rc.flags.a2_diagonal;
  j["flags"]["coupling_sign"] = rc.flags.coupling_sign;
  j["threads"] = rc.threads;
  j["scan"] = {{"xi_min", rc.xi_min}, {"xi_max", rc.xi_max}, {"steps", rc.steps}};
  j["minimize"] = {{"xi_tol", rc.xi_tol}, {"fine", rc.fine}};
  j["fieldmap"] = {{"operator", rc.map_operator}, {"axes", rc.map_axes},
                   {"offsets", rc.map_offsets},  {"lo", rc.map_lo},
                   {"hi", rc.map_hi},            {"grid", rc.map_grid}};
  if (!rc.dump_family.empty()) j["dump_family"] = rc.dump_family;
  return j.dump();
}

Mat4<double> named_operator(const std::string& name) {
  const auto& d = dirac_matrices();
  if (name == "U") return d.U;
  if (name == "alpha1") return d.alpha1;
  if (name == "alpha2") return d.alpha2;
  if (name == "alpha3") return d.alpha3;
  if (name == "alpha4") return d.alpha4;
  if (name == "Sigma1") return d.Sigma1;
  if (name == "Sigma2") return d.Sigma2;
  if (name == "Sigma3") return d.Sigma3;
  throw config_error("unknown operator '" + name +
                     "' (use U, alpha1..alpha4, Sigma1..Sigma3)");
}

}  // namespace estc
