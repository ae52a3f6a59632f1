#include "estc/free_space.hpp"

namespace estc {

PhysicalScale physical_scale(double lambda0_m) {
  // CODATA 2018: hbar, me, c
  const double hbar = 1.054571817e-34;
  const double me = 9.1093837015e-31;
  const double c = 2.99792458e8;
  PhysicalScale p;
  p.lambda0 = lambda0_m;
  p.k0 = 2.0 * 3.14159265358979323846 / lambda0_m;
  p.omega0 = p.k0 * c;
  p.Omega = hbar * p.omega0 / (me * c * c);
  return p;
}

}  // namespace estc
