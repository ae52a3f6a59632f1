#pragma once

// End-to-end line pipeline: grid scan, minimum location on the right
// eigenvalue branches (including the circular-crystal doublet), dressed
// amplitudes, observables, and classification.

#include "estc/free_space.hpp"
#include "estc/observables.hpp"
#include "estc/spectral.hpp"

namespace estc {

template <class R>
struct LineResult {
  SpectralLine<R> line;
  ObservableSet<R> obs;                 // means for the representative amplitude
  Vec4<R> c0;                           // representative dressed amplitude
  DressedAmplitudes<R> dressed;         // rho1 applied to the free basis
  std::array<bool, 4> have_obs{};       // per dressed amplitude
  std::array<ObservableSet<R>, 4> obs_j{};
  std::vector<Mat4<R>> s_map;           // family at the line minimum
  std::array<R, 4> lambda{};            // all four eigenvalues at the minimum
};

template <class R>
struct FindLinesOptions {
  int steps = 241;
  R xi_tol = R(0);
  bool fine = false;        // refine the window around the coarse minimum
  double fine_halfwidth = 5e-7;
  double fine_step = 1e-9;
  int threads = 1;
};

template <class R>
LineResult<R> line_at(const CrystalConfig& cfg, const std::array<R, 3>& q,
                      const SpectralLine<R>& ln, int d, const LatticeFlags& flags) {
  LineResult<R> out;
  out.line = ln;
  Region region = build_region(d);
  R q4 = q40(q) + ln.xi0;
  auto sys = assemble(region, cfg, q, q4, flags);
  auto fam = solve_family(sys);
  auto ge = generalized_eigen(fam.ud, fam.ue);
  out.lambda = ge.lambda;
  out.s_map = fam.s;
  out.dressed = dressed_amplitudes(ln.rho1, free_basis(q));
  bool found = false;
  for (int j = 0; j < 4; ++j) {
    if (out.dressed.annihilated[j]) continue;
    Vec4<R> cj = out.dressed.c[j];
    R n = sqrt(norm2(cj));
    for (int i = 0; i < 4; ++i) cj[i] = cj[i] / n;
    out.obs_j[j] = mean_values(sys, fam, cj);
    out.have_obs[j] = true;
    if (!found) {
      out.c0 = cj;
      out.obs = out.obs_j[j];
      found = true;
    }
  }
  if (!found) throw numeric_error("line_at: projector annihilated the whole free basis");
  return out;
}

template <class R>
std::vector<LineResult<R>> find_lines(const CrystalConfig& cfg, const std::array<R, 3>& q,
                                      R xi_lo, R xi_hi, int d, const LatticeFlags& flags = {},
                                      const FindLinesOptions<R>& opt = {}) {
  auto pts = scan(cfg, q, xi_lo, xi_hi, opt.steps, d, flags, opt.threads);
  // global valid minimum of the first branch
  int k0 = -1;
  for (int i = 0; i < (int)pts.size(); ++i) {
    if (!pts[i].error.empty()) continue;
    if (k0 < 0 || pts[i].lambda[0] < pts[k0].lambda[0]) k0 = i;
  }
  if (k0 < 0) throw numeric_error("find_lines: every scan point failed");
  if (k0 == 0 || k0 + 1 == (int)pts.size())
    throw numeric_error("find_lines: branch-1 minimum sits at the scan boundary; widen the window");

  R lo = pts[k0 - 1].xi, hi = pts[k0 + 1].xi;
  if (opt.fine) {
    R hw = real_traits<R>::from_double(opt.fine_halfwidth);
    int fsteps = (int)(2.0 * opt.fine_halfwidth / opt.fine_step) + 1;
    auto fine_pts = scan(cfg, q, pts[k0].xi - hw, pts[k0].xi + hw, fsteps, d, flags, opt.threads);
    int kf = -1;
    for (int i = 0; i < (int)fine_pts.size(); ++i) {
      if (!fine_pts[i].error.empty()) continue;
      if (kf < 0 || fine_pts[i].lambda[0] < fine_pts[kf].lambda[0]) kf = i;
    }
    if (kf > 0 && kf + 1 < (int)fine_pts.size()) {
      lo = fine_pts[kf - 1].xi;
      hi = fine_pts[kf + 1].xi;
    }
  }
  SpectralLine<R> first = locate_minimum(cfg, q, lo, hi, d, flags, 0, opt.xi_tol);
  std::vector<SpectralLine<R>> lines = {first};

  if (first.multiplicity == 1) {
    // doublet candidate.  Either branch 1 carries two local minima (narrow
    // crossing lines) or the second line is the bottom of branch 2.
    int k2 = -1;
    for (int i = 1; i + 1 < (int)pts.size(); ++i) {
      if (!pts[i].error.empty()) continue;
      if (std::abs(i - k0) <= 3) continue;
      if (pts[i].lambda[0] < pts[i - 1].lambda[0] && pts[i].lambda[0] < pts[i + 1].lambda[0]) {
        if (k2 < 0 || pts[i].lambda[0] < pts[k2].lambda[0]) k2 = i;
      }
    }
    bool second_found = false;
    if (k2 > 0 && pts[k2].lambda[0] < R(100) * pts[k0].lambda[0]) {
      try {
        SpectralLine<R> second =
            locate_minimum(cfg, q, pts[k2 - 1].xi, pts[k2 + 1].xi, d, flags, 0, opt.xi_tol);
        R sep = fabs(second.xi0 - first.xi0);
        R step = (xi_hi - xi_lo) / R(opt.steps - 1);
        if (sep > step) {
          lines.push_back(second);
          second_found = true;
        }
      } catch (const numeric_error&) {
      }
    }
    if (!second_found) {
      int kb = -1;
      for (int i = 0; i < (int)pts.size(); ++i) {
        if (!pts[i].error.empty()) continue;
        if (kb < 0 || pts[i].lambda[1] < pts[kb].lambda[1]) kb = i;
      }
      if (kb > 0 && kb + 1 < (int)pts.size() &&
          pts[kb].lambda[1] < R(100) * pts[k0].lambda[0]) {
        try {
          SpectralLine<R> second =
              locate_minimum(cfg, q, pts[kb - 1].xi, pts[kb + 1].xi, d, flags, 1, opt.xi_tol);
          R sep = fabs(second.xi0 - first.xi0);
          R step = (xi_hi - xi_lo) / R(opt.steps - 1);
          if (sep > step && second.multiplicity == 1) lines.push_back(second);
        } catch (const numeric_error&) {
        }
      }
    }
  }

  std::vector<LineResult<R>> out;
  for (const auto& ln : lines) out.push_back(line_at(cfg, q, ln, d, flags));
  std::sort(out.begin(), out.end(),
            [](const LineResult<R>& a, const LineResult<R>& b) { return a.line.xi0 < b.line.xi0; });

  if (out.size() == 2) {
    std::vector<double> s3 = {real_traits<R>::to_double(out[0].obs.sigma[2]),
                              real_traits<R>::to_double(out[1].obs.sigma[2])};
    auto cls = classify_doublet(s3);
    if (cls.ok) {
      out[0].line.label = cls.labels[0];
      out[1].line.label = cls.labels[1];
    } else {
      out[0].line.label = "1";
      out[1].line.label = "2";
    }
  } else if (out.size() == 1) {
    out[0].line.label = "single";
  }
  return out;
}

}  // namespace estc
