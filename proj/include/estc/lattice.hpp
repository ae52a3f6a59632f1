#pragma once

// Truncated block system around n_o = 0: assembly of the working rows,
// exact elimination of all non-central bispinors, and the residual forms
// U_E, U_D of the compact-support family c(n) = S(n) c0.
//
// Working row at lattice point n (sign = coupling-sign flag, default +1):
//   [alpha4 + alpha.w(n) - w4(n) U] c(n)
//     + sign/2 [ a2diag*N2(0) c(n) + sum_{g=1} N1(n,s) c(n+s)
//                + sum_{g=2} N2(s) c(n+s) ] = 0
// with w(n) = q + (n1,n2,n3) Omega, w4(n) = q4 + n4 Omega and Dirichlet
// truncation (amplitudes outside the region vanish).  U_D accounts for the
// full-lattice defect: the central row plus every halo row within stencil
// reach of the region.

#include <optional>
#include <set>
#include <vector>

#include "estc/crystal.hpp"
#include "estc/stencil.hpp"

namespace estc {

struct Region {
  int d = 0;
  std::vector<LatticeIndex> pts;  // lexicographic from build_region; any order allowed
  int center = -1;

  int index_of(const LatticeIndex& n) const {
    auto it = std::lower_bound(lookup.begin(), lookup.end(), n,
                               [](const auto& p, const LatticeIndex& key) { return p.first < key; });
    if (it == lookup.end() || it->first != n) return -1;
    return it->second;
  }
  int size() const { return static_cast<int>(pts.size()); }

  // call after filling pts
  void finalize() {
    lookup.clear();
    lookup.reserve(pts.size());
    for (int i = 0; i < (int)pts.size(); ++i) lookup.emplace_back(pts[i], i);
    std::sort(lookup.begin(), lookup.end());
    center = index_of({0, 0, 0, 0});
  }

 private:
  std::vector<std::pair<LatticeIndex, int>> lookup;
};

// all even-sum n with g4d(n) <= d
Region build_region(int d);

struct LatticeFlags {
  bool a2_diagonal = false;  // include sign/2 * N2(0) on the diagonal
  int coupling_sign = +1;    // +1 or -1, multiplies the 1/2 coupling factor
};

template <class R>
struct BlockRow {
  Mat4<R> diag;
  struct MatCoupling {
    int col;
    Mat4<R> m;
  };
  struct ScalCoupling {
    int col;
    Cx<R> v;
  };
  std::vector<MatCoupling> mats;
  std::vector<ScalCoupling> scals;
};

template <class R>
struct HaloRow {
  LatticeIndex m;
  std::vector<typename BlockRow<R>::MatCoupling> mats;
  std::vector<typename BlockRow<R>::ScalCoupling> scals;
};

template <class R>
struct BlockSystem {
  Region region;
  std::array<R, 3> q{};
  R q4{};
  CrystalConfig cfg;
  LatticeFlags flags;
  std::vector<BlockRow<R>> rows;        // one per region point, region order
  std::vector<HaloRow<R>> halo;         // rows outside the region within reach
  std::vector<LatticeIndex> singular_rows;  // w4(n) = 0 warnings (rows kept)
};

template <class R>
BlockSystem<R> assemble(const Region& region, const CrystalConfig& cfg,
                        const std::array<R, 3>& q, const R& q4,
                        const LatticeFlags& flags = {}) {
  BlockSystem<R> sys;
  sys.region = region;
  sys.q = q;
  sys.q4 = q4;
  sys.cfg = cfg;
  sys.flags = flags;
  const R omega = real_traits<R>::from_double(cfg.omega);
  const DiracMatrices& dm = dirac_matrices();
  const Mat4<R> alpha[3] = {promote<R>(dm.alpha1), promote<R>(dm.alpha2), promote<R>(dm.alpha3)};
  const Mat4<R> alpha4 = promote<R>(dm.alpha4);

  const Cx<R> half(R(flags.coupling_sign) * R(0.5));
  const Cx<R> n2zero = flags.a2_diagonal ? half * n2_scalar<R>(cfg, {0, 0, 0, 0}) : Cx<R>();

  // cache the 56 g=2 scalars (independent of the row index)
  const auto& g2 = g2_shifts();
  std::vector<Cx<R>> n2val(g2.size());
  for (size_t k = 0; k < g2.size(); ++k) n2val[k] = half * n2_scalar<R>(cfg, g2[k]);

  sys.rows.reserve(region.pts.size());
  for (const auto& n : region.pts) {
    BlockRow<R> row;
    std::array<R, 3> w = {q[0] + R(n[0]) * omega, q[1] + R(n[1]) * omega,
                          q[2] + R(n[2]) * omega};
    R w4 = q4 + R(n[3]) * omega;
    if (fabs(w4) <= real_traits<R>::from_double(1e-12)) sys.singular_rows.push_back(n);
    row.diag = alpha4;
    for (int k = 0; k < 3; ++k) row.diag += Cx<R>(w[k]) * alpha[k];
    for (int i = 0; i < 4; ++i) row.diag(i, i) -= Cx<R>(w4);
    for (int i = 0; i < 4; ++i) row.diag(i, i) += n2zero;
    for (const auto& s : unit_shifts()) {
      int j = region.index_of(n + s);
      if (j < 0) continue;
      row.mats.push_back({j, half * n1_matrix<R>(cfg, n, s, q, q4)});
    }
    for (size_t k = 0; k < g2.size(); ++k) {
      int j = region.index_of(n + g2[k]);
      if (j < 0) continue;
      row.scals.push_back({j, n2val[k]});
    }
    sys.rows.push_back(std::move(row));
  }

  // halo rows: every m outside the region coupled to it by some stencil shift
  std::set<LatticeIndex> halo_pts;
  for (const auto& n : region.pts) {
    for (const auto& s : unit_shifts()) {
      LatticeIndex m = n + (-s);
      if (region.index_of(m) < 0) halo_pts.insert(m);
    }
    for (const auto& s : g2) {
      LatticeIndex m = n + (-s);
      if (region.index_of(m) < 0) halo_pts.insert(m);
    }
  }
  for (const auto& m : halo_pts) {
    HaloRow<R> hr;
    hr.m = m;
    for (const auto& s : unit_shifts()) {
      int j = region.index_of(m + s);
      if (j < 0) continue;
      hr.mats.push_back({j, half * n1_matrix<R>(cfg, m, s, q, q4)});
    }
    for (size_t k = 0; k < g2.size(); ++k) {
      int j = region.index_of(m + g2[k]);
      if (j < 0) continue;
      hr.scals.push_back({j, n2val[k]});
    }
    sys.halo.push_back(std::move(hr));
  }
  return sys;
}

template <class R>
struct SolutionFamily {
  Region region;
  std::vector<Mat4<R>> s;  // S(n) per region point, S(center) = U
  Mat4<R> ue, ud;
  Mat4<R> central_defect;     // W = central row applied to the family
  R max_interior_defect{};    // diagnostic: largest eliminated-row residual
  int refine_iterations = 0;  // extended mode only
};

// Exact elimination of all non-central amplitudes.  double: sparse LU;
// ddouble: f64 factorization + double-double iterative refinement.
SolutionFamily<double> eliminate(const BlockSystem<double>& sys);
SolutionFamily<ddouble> eliminate(const BlockSystem<ddouble>& sys);

// apply row r of the in-region system to the family
template <class R>
Mat4<R> apply_row(const BlockSystem<R>& sys, int r, const std::vector<Mat4<R>>& s) {
  Mat4<R> acc = sys.rows[r].diag * s[r];
  for (const auto& mc : sys.rows[r].mats) acc += mc.m * s[mc.col];
  for (const auto& sc : sys.rows[r].scals) acc += sc.v * s[sc.col];
  return acc;
}

template <class R>
void residual_forms(const BlockSystem<R>& sys, SolutionFamily<R>& fam) {
  const int center = sys.region.center;
  Mat4<R> ue;
  for (const auto& sn : fam.s) ue += dagger(sn) * sn;
  fam.ue = Cx<R>(R(0.5)) * (ue + dagger(ue));

  fam.central_defect = apply_row(sys, center, fam.s);
  Mat4<R> ud = dagger(fam.central_defect) * fam.central_defect;

  R maxdef(0);
  for (int r = 0; r < sys.region.size(); ++r) {
    if (r == center) continue;
    maxdef = max(maxdef, max_abs(apply_row(sys, r, fam.s)));
  }
  fam.max_interior_defect = maxdef;

  for (const auto& hr : sys.halo) {
    Mat4<R> l;
    for (const auto& mc : hr.mats) l += mc.m * fam.s[mc.col];
    for (const auto& sc : hr.scals) l += sc.v * fam.s[sc.col];
    ud += dagger(l) * l;
  }
  fam.ud = Cx<R>(R(0.5)) * (ud + dagger(ud));
}

template <class R>
SolutionFamily<R> solve_family(const BlockSystem<R>& sys) {
  SolutionFamily<R> fam = eliminate(sys);
  residual_forms(sys, fam);
  return fam;
}

// sqrt(c0^d U_D c0 / c0^d U_E c0)
template <class R>
R relative_residual(const Mat4<R>& ud, const Mat4<R>& ue, const Vec4<R>& c0) {
  R den = quad_form(ue, c0).re;
  if (!(den > R(0))) throw numeric_error("relative_residual: zero amplitude c0");
  R num = quad_form(ud, c0).re;
  if (num < R(0)) num = R(0);
  return sqrt(num / den);
}

}  // namespace estc
