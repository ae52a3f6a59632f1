#pragma once

// Unit-cell mean values of H, kinetic momentum, probability current and
// spin for a solution family, evaluated in Fourier space (Parseval), plus
// space-time maps of Hermitian forms Psi^d O Psi on 2D sections.

#include <string>
#include <vector>

#include "estc/lattice.hpp"

namespace estc {

template <class R>
struct ObservableSet {
  R h{};                      // <H>/me c^2
  std::array<R, 3> p{};       // <p_k>/me c
  std::array<R, 3> alpha{};   // <j_k>/c
  std::array<R, 3> sigma{};   // <Sigma_k>
  R max_imag{};               // largest imaginary part seen in any mean
};

template <class R>
ObservableSet<R> mean_values(const BlockSystem<R>& sys, const SolutionFamily<R>& fam,
                             const Vec4<R>& c0) {
  const Region& region = sys.region;
  const R omega = real_traits<R>::from_double(sys.cfg.omega);
  const DiracMatrices& dm = dirac_matrices();
  const Mat4<R> alpha_m[3] = {promote<R>(dm.alpha1), promote<R>(dm.alpha2), promote<R>(dm.alpha3)};
  const Mat4<R> alpha4 = promote<R>(dm.alpha4);
  const Mat4<R> sigma_m[3] = {promote<R>(dm.Sigma1), promote<R>(dm.Sigma2), promote<R>(dm.Sigma3)};

  std::vector<Vec4<R>> c(region.size());
  R nsum(0);
  for (int i = 0; i < region.size(); ++i) {
    c[i] = fam.s[i] * c0;
    nsum += norm2(c[i]);
  }
  if (!(nsum > R(0))) throw numeric_error("mean_values: zero norm amplitude");

  Cx<R> h, p[3], al[3], sg[3];
  for (int i = 0; i < region.size(); ++i) {
    const auto& n = region.pts[i];
    R nn = norm2(c[i]);
    std::array<R, 3> w = {sys.q[0] + R(n[0]) * omega, sys.q[1] + R(n[1]) * omega,
                          sys.q[2] + R(n[2]) * omega};
    for (int k = 0; k < 3; ++k) {
      Cx<R> ak = quad_form(alpha_m[k], c[i]);
      al[k] += ak;
      sg[k] += quad_form(sigma_m[k], c[i]);
      p[k] += Cx<R>(w[k] * nn);
      h += Cx<R>(w[k]) * ak;
    }
    h += quad_form(alpha4, c[i]);
  }
  // gauge terms: the 12-shift convolution with a(s)
  for (int i = 0; i < region.size(); ++i) {
    for (const auto& e : shift_table()) {
      int j = region.index_of(region.pts[i] + e.s);
      if (j < 0) continue;
      auto a = shift_amplitude_r<R>(sys.cfg, e);
      Cx<R> ov = dot(c[i], c[j]);  // c(n)^d c(n+s)
      for (int k = 0; k < 3; ++k) p[k] -= ov * a[k];
      Vec4<R> t;  // (alpha.a) c(n+s)
      for (int k = 0; k < 3; ++k) {
        Vec4<R> mk = alpha_m[k] * c[j];
        for (int r2 = 0; r2 < 4; ++r2) t[r2] += a[k] * mk[r2];
      }
      h -= dot(c[i], t);
    }
  }
  ObservableSet<R> o;
  R mi(0);
  auto take = [&](const Cx<R>& v) {
    mi = max(mi, fabs(v.im));
    return v.re;
  };
  o.h = take(h) / nsum;
  for (int k = 0; k < 3; ++k) {
    o.p[k] = take(p[k]) / nsum;
    o.alpha[k] = take(al[k]) / nsum;
    o.sigma[k] = take(sg[k]) / nsum;
  }
  o.max_imag = mi / nsum;
  return o;
}

template <class R>
struct DressedAmplitudes {
  std::array<Vec4<R>, 4> c;
  std::array<bool, 4> annihilated{};
};

// c_j^(1) = rho1 c_j over a supplied basis; near-null results are flagged
template <class R>
DressedAmplitudes<R> dressed_amplitudes(const Mat4<R>& rho1, const std::array<Vec4<R>, 4>& basis) {
  DressedAmplitudes<R> out;
  for (int j = 0; j < 4; ++j) {
    out.c[j] = rho1 * basis[j];
    out.annihilated[j] = !(sqrt(norm2(out.c[j])) > R(1e-8));
  }
  return out;
}

struct FieldMapSpec {
  int axis1 = 2;  // X3
  int axis2 = 3;  // X4
  std::array<double, 4> offsets{};  // fixed coordinates for the other axes
  double lo1 = 0.0, hi1 = 1.0;
  double lo2 = 0.0, hi2 = 1.0;
  int n1 = 64, n2 = 64;
};

struct FieldMap {
  FieldMapSpec spec;
  std::string op_name;
  std::vector<double> x1, x2;
  std::vector<std::vector<double>> values;  // values[i2][i1]
  double max_imag = 0.0;
};

// Psi(x) = sum_n c(n) exp(i phi_n), phi_n = 2 pi [(n + q/Omega).r' - (n4 + q4/Omega) X4];
// map entries are Re(Psi^d O Psi), with the imaginary part tracked as a check.
FieldMap field_map(const Region& region, const std::vector<Mat4<double>>& s, const Vec4<double>& c0,
                   const std::array<double, 3>& q, double q4, double omega,
                   const Mat4<double>& op, const std::string& op_name, const FieldMapSpec& spec);

}  // namespace estc
