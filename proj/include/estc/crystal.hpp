#pragma once

// Crystal definitions: the six complex wave amplitudes, the linear (estc1)
// and circular (estc2) presets, the field intensity I_A, and the table
// mapping the 12 unit lattice shifts to wave amplitudes.

#include <array>
#include <complex>

#include "estc/spinor.hpp"

namespace estc {

using CVec3 = std::array<cxd, 3>;

struct CrystalConfig {
  std::array<CVec3, 6> amplitude{};  // A_1..A_6, dimensionless
  double omega = 0.1;                // dimensionless field frequency
};

CrystalConfig estc1(double a_m, double omega = 0.1);
CrystalConfig estc2(double a_m, double omega = 0.1);
CrystalConfig zero_crystal(double omega = 0.1);

// I_A = 2 sum_j A_j . A_j*  (equals 12 A_m^2 for both presets)
double intensity(const CrystalConfig& cfg);

struct ShiftEntry {
  std::array<int, 4> s;      // lattice shift, g4d = 1
  std::array<int, 3> unit;   // spatial unit vector of s
  int wave;                  // 1..6
  bool conjugate;            // amplitude is conj(A_wave)
};

// The 12 entries: s(j) for waves j=1..6 with s4 = -1, then their negations
// carrying conjugated amplitudes.
const std::array<ShiftEntry, 12>& shift_table();

// amplitude a(s) for one of the 12 unit shifts
CVec3 shift_amplitude(const CrystalConfig& cfg, const ShiftEntry& e);

template <class R>
std::array<Cx<R>, 3> shift_amplitude_r(const CrystalConfig& cfg, const ShiftEntry& e) {
  CVec3 a = shift_amplitude(cfg, e);
  std::array<Cx<R>, 3> out;
  for (int k = 0; k < 3; ++k)
    out[k] = Cx<R>(real_traits<R>::from_double(a[k].re), real_traits<R>::from_double(a[k].im));
  return out;
}

}  // namespace estc
