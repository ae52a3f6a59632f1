#pragma once

// Lattice geometry (g4d norm, shift enumeration) and the coupling
// constants: the 12 first-order matrices N1(m,s) and the 56 second-order
// scalars N2(s), built from closed-form constructive formulas.

#include <array>
#include <stdexcept>
#include <vector>

#include "estc/crystal.hpp"
#include "estc/free_space.hpp"
#include "estc/spinor.hpp"

namespace estc {

using LatticeIndex = std::array<int, 4>;

inline int g4d(const LatticeIndex& s) {
  int sp = std::abs(s[0]) + std::abs(s[1]) + std::abs(s[2]);
  int t = std::abs(s[3]);
  return sp > t ? sp : t;
}

inline bool even_sum(const LatticeIndex& s) {
  return ((s[0] + s[1] + s[2] + s[3]) % 2) == 0;
}

inline LatticeIndex operator+(const LatticeIndex& a, const LatticeIndex& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline LatticeIndex operator-(const LatticeIndex& a) { return {-a[0], -a[1], -a[2], -a[3]}; }

// all even-sum shifts with g4d <= g_max, lexicographically ordered
std::vector<LatticeIndex> enumerate_shifts(int g_max);

// the 12 unit shifts (g4d = 1), in shift_table order
const std::vector<LatticeIndex>& unit_shifts();

// the 56 second-order shifts (g4d = 2), lexicographic
const std::vector<LatticeIndex>& g2_shifts();

struct stencil_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// N1(m,s) = -2 (a(s).w) U + i Omega Sigma.(s_hat x a(s)) - (s4 Omega + 2 w4)(alpha.a(s)),
// with w_k = q_k + m_k Omega and w4 = q4 + m4 Omega taken at the row index m.
template <class R>
Mat4<R> n1_matrix(const CrystalConfig& cfg, const LatticeIndex& m, const LatticeIndex& s,
                  const std::array<R, 3>& q, const R& q4) {
  const ShiftEntry* entry = nullptr;
  for (const auto& e : shift_table())
    if (e.s == s) { entry = &e; break; }
  if (!entry) throw stencil_error("n1_matrix: shift is not one of the 12 unit shifts");

  const R omega = real_traits<R>::from_double(cfg.omega);
  std::array<Cx<R>, 3> a = shift_amplitude_r<R>(cfg, *entry);
  std::array<R, 3> w = {q[0] + R(m[0]) * omega, q[1] + R(m[1]) * omega, q[2] + R(m[2]) * omega};
  R w4 = q4 + R(m[3]) * omega;

  const DiracMatrices& dm = dirac_matrices();
  const Mat4<R> alpha[3] = {promote<R>(dm.alpha1), promote<R>(dm.alpha2), promote<R>(dm.alpha3)};
  const Mat4<R> sigma[3] = {promote<R>(dm.Sigma1), promote<R>(dm.Sigma2), promote<R>(dm.Sigma3)};

  Cx<R> aw = a[0] * Cx<R>(w[0]) + a[1] * Cx<R>(w[1]) + a[2] * Cx<R>(w[2]);
  // s_hat x a
  std::array<Cx<R>, 3> cr;
  const auto& u = entry->unit;
  cr[0] = Cx<R>(R(u[1])) * a[2] - Cx<R>(R(u[2])) * a[1];
  cr[1] = Cx<R>(R(u[2])) * a[0] - Cx<R>(R(u[0])) * a[2];
  cr[2] = Cx<R>(R(u[0])) * a[1] - Cx<R>(R(u[1])) * a[0];

  Cx<R> iom(R(0), omega);
  Cx<R> ompm(R(s[3]) * omega + R(2) * w4);

  Mat4<R> out = (Cx<R>(R(-2)) * aw) * Mat4<R>::identity();
  for (int k = 0; k < 3; ++k) {
    out += (iom * cr[k]) * sigma[k];
    out -= (ompm * a[k]) * alpha[k];
  }
  return out;
}

// N2(s) = sum over unordered unit-shift pairs (u,v), u+v = s, of
// mu a(u).a(v) with mu = 2 for u != v and 1 for u = v.  N2(0) = I_A.
template <class R>
Cx<R> n2_scalar(const CrystalConfig& cfg, const LatticeIndex& s) {
  int g = g4d(s);
  if (g != 0 && g != 2) throw stencil_error("n2_scalar: shift must have g4d 0 or 2");
  const auto& tab = shift_table();
  Cx<R> total;
  bool found = false;
  for (int i = 0; i < 12; ++i)
    for (int j = i; j < 12; ++j) {
      if (tab[i].s + tab[j].s != s) continue;
      found = true;
      auto a = shift_amplitude_r<R>(cfg, tab[i]);
      auto b = shift_amplitude_r<R>(cfg, tab[j]);
      Cx<R> d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      total += (i == j) ? d : Cx<R>(R(2)) * d;
    }
  if (!found) throw stencil_error("n2_scalar: shift is not a sum of two unit shifts");
  return total;
}

}  // namespace estc
