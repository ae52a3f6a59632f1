#pragma once

// Batch run configuration: JSON schema with defaults at the reference
// operating point (Omega = 0.1, q = (0,0,0.02)).  Validation errors
// carry the offending field path.

#include <array>
#include <stdexcept>
#include <string>

#include "estc/crystal.hpp"
#include "estc/lattice.hpp"

namespace estc {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string preset = "estc1";  // estc1 | estc2 | zero | custom
  double a_m = 5e-4;
  CrystalConfig crystal;  // resolved amplitudes + omega
  std::array<double, 3> q = {0.0, 0.0, 0.02};
  int radius = 1;
  std::string precision = "standard";  // standard | extended
  LatticeFlags flags{};                // a2_diagonal off, coupling_sign +1
  int threads = 1;

  // scan / minimize window (strings so the extended mode keeps full precision)
  std::string xi_min = "0";
  std::string xi_max = "4e-6";
  int steps = 241;
  std::string xi_tol = "0";
  bool fine = false;

  // fieldmap
  std::string map_operator = "alpha3";
  std::array<int, 2> map_axes = {3, 4};  // 1-based X indices
  std::array<double, 4> map_offsets = {0, 0, 0, 0};
  std::array<double, 2> map_lo = {0, 0};
  std::array<double, 2> map_hi = {1, 1};
  std::array<int, 2> map_grid = {64, 64};

  std::string dump_family;  // optional output path
  std::string out_dir = ".";
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// resolved one-line JSON echo embedded in every output file
std::string config_echo(const RunConfig& rc);

template <class R>
R parse_xi(const std::string& s);
template <> inline double parse_xi<double>(const std::string& s) { return std::stod(s); }
template <> inline ddouble parse_xi<ddouble>(const std::string& s) { return dd_from_string(s); }

// operator table for field maps: U, alpha1..alpha4, Sigma1..Sigma3
Mat4<double> named_operator(const std::string& name);

}  // namespace estc
