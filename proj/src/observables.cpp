#include "estc/observables.hpp"

#include <cmath>

namespace estc {

FieldMap field_map(const Region& region, const std::vector<Mat4<double>>& s, const Vec4<double>& c0,
                   const std::array<double, 3>& q, double q4, double omega,
                   const Mat4<double>& op, const std::string& op_name, const FieldMapSpec& spec) {
  if (spec.axis1 == spec.axis2 || spec.axis1 < 0 || spec.axis1 > 3 || spec.axis2 < 0 ||
      spec.axis2 > 3)
    throw numeric_error("field_map: invalid axes");
  const double two_pi = 2.0 * 3.14159265358979323846;
  std::vector<Vec4<double>> c(region.size());
  for (int i = 0; i < region.size(); ++i) c[i] = s[i] * c0;

  FieldMap fm;
  fm.spec = spec;
  fm.op_name = op_name;
  fm.x1.resize(spec.n1);
  fm.x2.resize(spec.n2);
  for (int i = 0; i < spec.n1; ++i)
    fm.x1[i] = spec.lo1 + (spec.hi1 - spec.lo1) * (spec.n1 > 1 ? double(i) / (spec.n1 - 1) : 0.0);
  for (int i = 0; i < spec.n2; ++i)
    fm.x2[i] = spec.lo2 + (spec.hi2 - spec.lo2) * (spec.n2 > 1 ? double(i) / (spec.n2 - 1) : 0.0);

  // phase frequencies per lattice point: phi_n = 2 pi (f . X) with
  // f_k = n_k + q_k/Omega (k=1..3) and f_4 = -(n_4 + q4/Omega)
  std::vector<std::array<double, 4>> freq(region.size());
  for (int i = 0; i < region.size(); ++i) {
    const auto& n = region.pts[i];
    freq[i] = {n[0] + q[0] / omega, n[1] + q[1] / omega, n[2] + q[2] / omega,
               -(n[3] + q4 / omega)};
  }

  fm.values.assign(spec.n2, std::vector<double>(spec.n1, 0.0));
  std::array<double, 4> x = spec.offsets;
  for (int i2 = 0; i2 < spec.n2; ++i2) {
    x[spec.axis2] = fm.x2[i2];
    for (int i1 = 0; i1 < spec.n1; ++i1) {
      x[spec.axis1] = fm.x1[i1];
      Vec4<double> psi;
      for (int i = 0; i < region.size(); ++i) {
        double ph = two_pi * (freq[i][0] * x[0] + freq[i][1] * x[1] + freq[i][2] * x[2] +
                              freq[i][3] * x[3]);
        cxd e{std::cos(ph), std::sin(ph)};
        for (int r = 0; r < 4; ++r) psi[r] += e * c[i][r];
      }
      cxd v = quad_form(op, psi);
      fm.values[i2][i1] = v.re;
      fm.max_imag = std::max(fm.max_imag, std::fabs(v.im));
    }
  }
  return fm;
}

}  // namespace estc
