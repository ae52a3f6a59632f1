#include "estc/crystal.hpp"

#include <cmath>

namespace estc {

namespace {
const cxd O{0, 0};
}

CrystalConfig estc1(double a_m, double omega) {
  CrystalConfig c;
  c.omega = omega;
  c.amplitude[0] = {O, cxd{a_m, 0}, O};   // A1 = Am e2
  c.amplitude[1] = {O, O, cxd{a_m, 0}};   // A2 = Am e3
  c.amplitude[2] = {cxd{a_m, 0}, O, O};   // A3 = Am e1
  c.amplitude[3] = {O, cxd{-a_m, 0}, O};  // A4 = -A1
  c.amplitude[4] = {O, O, cxd{-a_m, 0}};  // A5 = -A2
  c.amplitude[5] = {cxd{-a_m, 0}, O, O};  // A6 = -A3
  return c;
}

CrystalConfig estc2(double a_m, double omega) {
  CrystalConfig c;
  c.omega = omega;
  const double r = a_m / std::sqrt(2.0);
  CVec3 a1 = {O, cxd{r, 0}, cxd{0, r}};  // Am (e2 + i e3)/sqrt2
  CVec3 a2 = {cxd{0, r}, O, cxd{r, 0}};  // Am (e3 + i e1)/sqrt2
  CVec3 a3 = {cxd{r, 0}, cxd{0, r}, O};  // Am (e1 + i e2)/sqrt2
  c.amplitude = {a1, a2, a3, a1, a2, a3};
  return c;
}

CrystalConfig zero_crystal(double omega) {
  CrystalConfig c;
  c.omega = omega;
  return c;
}

double intensity(const CrystalConfig& cfg) {
  double s = 0;
  for (const auto& a : cfg.amplitude)
    for (const auto& e : a) s += e.re * e.re + e.im * e.im;
  return 2.0 * s;
}

const std::array<ShiftEntry, 12>& shift_table() {
  static const std::array<ShiftEntry, 12> t = [] {
    std::array<ShiftEntry, 12> tab{};
    const std::array<std::array<int, 4>, 6> base = {{{-1, 0, 0, -1},
                                                     {0, -1, 0, -1},
                                                     {0, 0, -1, -1},
                                                     {1, 0, 0, -1},
                                                     {0, 1, 0, -1},
                                                     {0, 0, 1, -1}}};
    for (int j = 0; j < 6; ++j) {
      tab[j].s = base[j];
      tab[j].unit = {base[j][0], base[j][1], base[j][2]};
      tab[j].wave = j + 1;
      tab[j].conjugate = false;
      tab[j + 6].s = {-base[j][0], -base[j][1], -base[j][2], -base[j][3]};
      tab[j + 6].unit = {-base[j][0], -base[j][1], -base[j][2]};
      tab[j + 6].wave = j + 1;
      tab[j + 6].conjugate = true;
    }
    return tab;
  }();
  return t;
}

CVec3 shift_amplitude(const CrystalConfig& cfg, const ShiftEntry& e) {
  CVec3 a = cfg.amplitude[e.wave - 1];
  if (e.conjugate)
    for (auto& x : a) x = conj(x);
  return a;
}

}  // namespace estc
