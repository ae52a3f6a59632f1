#pragma once

// Exact free-electron Dirac solutions: dispersion q4_0 = sqrt(1+q^2),
// the projectors P+/P-, the orthonormal amplitude basis c1..c4, and the
// closed-form zero-model residual curves used for calibration.

#include <array>

#include "estc/spinor.hpp"

namespace estc {

template <class R>
struct WaveFourVector {
  std::array<R, 3> q{};
  R q4{};
};

// Physical scale bookkeeping: a field wavelength fixes omega0, k0 and the
// dimensionless frequency Omega = hbar*omega0/(me*c^2).
struct PhysicalScale {
  double lambda0;  // m
  double omega0;   // rad/s
  double k0;       // rad/m
  double Omega;    // dimensionless
};

PhysicalScale physical_scale(double lambda0_m);

template <class R>
R q40(const std::array<R, 3>& q) {
  return sqrt(R(1) + q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
}

// alpha4 + sum_k q_k alpha_k
template <class R>
Mat4<R> mass_momentum_matrix(const std::array<R, 3>& q) {
  const DiracMatrices& d = dirac_matrices();
  Mat4<R> m = promote<R>(d.alpha4);
  m += Cx<R>(q[0]) * promote<R>(d.alpha1);
  m += Cx<R>(q[1]) * promote<R>(d.alpha2);
  m += Cx<R>(q[2]) * promote<R>(d.alpha3);
  return m;
}

// P0 = U/2 - (alpha4 + q.alpha)/(2 q4); singular exactly on shell
template <class R>
Mat4<R> free_operator(const std::array<R, 3>& q, const R& q4) {
  Mat4<R> m = mass_momentum_matrix(q);
  Mat4<R> p = Mat4<R>::identity();
  Cx<R> f = Cx<R>(R(1) / (R(2) * q4));
  p = Cx<R>(R(0.5)) * p - f * m;
  return p;
}

template <class R>
struct FreeProjectors {
  Mat4<R> plus, minus;
};

template <class R>
FreeProjectors<R> free_projectors(const std::array<R, 3>& q) {
  R q40v = q40(q);
  Mat4<R> m = mass_momentum_matrix(q);
  Cx<R> f = Cx<R>(R(1) / (R(2) * q40v));
  Mat4<R> half = Cx<R>(R(0.5)) * Mat4<R>::identity();
  return {half + f * m, half - f * m};
}

// Orthonormal bispinor basis; delta = sqrt(2 q40 (1 + q40)).
// P+ = c1 c1^d + c2 c2^d, P- = c3 c3^d + c4 c4^d.
template <class R>
std::array<Vec4<R>, 4> free_basis(const std::array<R, 3>& q) {
  R q40v = q40(q);
  R delta = sqrt(R(2) * q40v * (R(1) + q40v));
  Cx<R> opq(R(1) + q40v);
  Cx<R> q3(q[2]);
  Cx<R> qp(q[0], q[1]);   // q1 + i q2
  Cx<R> qm(q[0], -q[1]);  // q1 - i q2
  std::array<Vec4<R>, 4> c;
  c[0].v = {opq, Cx<R>(), q3, qp};
  c[1].v = {Cx<R>(), opq, qm, -q3};
  c[2].v = {q3, qp, -opq, Cx<R>()};
  c[3].v = {qm, -q3, Cx<R>(), -opq};
  for (auto& ci : c)
    for (auto& e : ci.v) e = e / delta;
  return c;
}

// Closed-form single-mode model: S+- eigenvalues of the central family matrix and
// the residual curves R+-(q4) = sqrt(I_A + (q4 -+ q40)^2).
template <class R>
struct ZeroModel {
  R s_plus, s_minus, r_plus, r_minus;
};

template <class R>
ZeroModel<R> zero_model(const std::array<R, 3>& q, const R& q4, const R& intensity) {
  R q40v = q40(q);
  R dp = q4 - q40v;
  R dm = q4 + q40v;
  ZeroModel<R> z;
  R denp = intensity + dp * dp;
  R denm = intensity + dm * dm;
  // I_A -> 0 on shell: the exact solution limit S+ = 1 (S- = 1 on the negative shell)
  z.s_plus = (denp == R(0)) ? R(1) : intensity / denp;
  z.s_minus = (denm == R(0)) ? R(1) : intensity / denm;
  z.r_plus = sqrt(denp);
  z.r_minus = sqrt(denm);
  return z;
}

}  // namespace estc
