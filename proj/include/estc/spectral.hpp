#pragma once

// xi-scans of the generalized eigenvalues, spectral-line location by
// golden-section refinement on a chosen eigenvalue branch, parabolic
// bottom fits, half-widths, and doublet classification.

#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "estc/lattice.hpp"

namespace estc {

template <class R>
struct SpectralPoint {
  R xi{};
  std::array<R, 4> lambda{};
  std::array<R, 4> r{};  // sqrt(lambda)
  std::array<int, 4> multiplicity{};
  Mat4<R> rho1;
  std::string error;  // nonempty if this point failed
};

template <class R>
struct SpectralLine {
  R xi0{};
  R r0{};
  R beta0{};
  R delta_xi{};  // half-width at r_av = sqrt(I_A)
  R r_av{};
  Mat4<R> rho1;
  R trace_rho1{};
  int multiplicity = 0;
  int branch = 0;  // eigenvalue branch the line lives on (0-based)
  std::string label = "single";
  R fit_max_rel_dev{};  // parabola fit quality on the fitted window
};

template <class R>
SpectralPoint<R> spectral_point(const CrystalConfig& cfg, const std::array<R, 3>& q, const R& xi,
                                const Region& region, const LatticeFlags& flags) {
  SpectralPoint<R> pt;
  pt.xi = xi;
  try {
    R q4 = q40(q) + xi;
    auto sys = assemble(region, cfg, q, q4, flags);
    auto fam = solve_family(sys);
    auto ge = generalized_eigen(fam.ud, fam.ue);
    for (int j = 0; j < 4; ++j) {
      R l = max(ge.lambda[j], R(0));
      pt.lambda[j] = l;
      pt.r[j] = sqrt(l);
    }
    pt.multiplicity = ge.multiplicity;
    try {
      pt.rho1 = projector_from_root(fam.ud, fam.ue, ge.lambda[0], ge.multiplicity[0]);
    } catch (const numeric_error&) {
      // leave zero; the point itself is still valid
    }
  } catch (const numeric_error& e) {
    pt.error = e.what();
    for (int j = 0; j < 4; ++j) {
      pt.lambda[j] = real_traits<R>::from_double(std::nan(""));
      pt.r[j] = pt.lambda[j];
    }
  }
  return pt;
}

template <class R>
std::vector<SpectralPoint<R>> scan(const CrystalConfig& cfg, const std::array<R, 3>& q,
                                   const R& xi_lo, const R& xi_hi, int steps, int d,
                                   const LatticeFlags& flags = {}, int threads = 1) {
  if (steps < 2) throw stencil_error("scan: need at least 2 steps");
  Region region = build_region(d);
  std::vector<SpectralPoint<R>> out(steps);
  R span = xi_hi - xi_lo;
  R denom = R(steps - 1);
  auto work = [&](int t, int nt) {
    for (int i = t; i < steps; i += nt) {
      R xi = xi_lo + span * (R(i) / denom);
      out[i] = spectral_point(cfg, q, xi, region, flags);
    }
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

// lambda_branch(xi) evaluator used by the minimizer
template <class R>
class BranchEvaluator {
 public:
  BranchEvaluator(const CrystalConfig& cfg, const std::array<R, 3>& q, int d,
                  const LatticeFlags& flags, int branch)
      : cfg_(cfg), q_(q), region_(build_region(d)), flags_(flags), branch_(branch) {}

  R operator()(const R& xi) const {
    R q4 = q40(q_) + xi;
    auto sys = assemble(region_, cfg_, q_, q4, flags_);
    auto fam = solve_family(sys);
    auto ge = generalized_eigen(fam.ud, fam.ue);
    return max(ge.lambda[branch_], R(0));
  }

  SpectralPoint<R> point(const R& xi) const { return spectral_point(cfg_, q_, xi, region_, flags_); }
  const Region& region() const { return region_; }
  int branch() const { return branch_; }

 private:
  CrystalConfig cfg_;
  std::array<R, 3> q_;
  Region region_;
  LatticeFlags flags_;
  int branch_;
};

// golden-section minimum of f on [lo,hi]; throws if no interior minimum
template <class R>
R golden_minimize(const std::function<R(const R&)>& f, R lo, R hi, const R& tol,
                  int max_iter = 200) {
  const R inv_phi = (sqrt(R(5)) - R(1)) / R(2);
  R a = lo, b = hi;
  R c = b - inv_phi * (b - a);
  R d = a + inv_phi * (b - a);
  R fc = f(c), fd = f(d);
  R fa = f(a), fb = f(b);
  if (min(fc, fd) > min(fa, fb))
    throw numeric_error("golden_minimize: no interior minimum in bracket; endpoint values " +
                        real_traits<R>::to_string(fa) + ", " + real_traits<R>::to_string(fb));
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / R(2);
}

template <class R>
struct ParabolaFit {
  R beta0{};
  R max_rel_dev{};
  int points_used = 0;
};

// least squares for R1^2 = R0^2 + beta0^2 (xi-xi0)^2 over points with
// R1 <= window_factor * R0 (all points when R0 = 0)
template <class R>
ParabolaFit<R> fit_parabola(const std::vector<std::pair<R, R>>& pts, const R& xi0, const R& r0,
                            double window_factor = 3.0) {
  R sxx(0), sxy(0);
  int used = 0;
  const R wf = real_traits<R>::from_double(window_factor);
  for (const auto& [xi, r1] : pts) {
    if (r0 > R(0) && r1 > wf * r0) continue;
    R x = (xi - xi0) * (xi - xi0);
    R y = r1 * r1 - r0 * r0;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 5) throw numeric_error("fit_parabola: fewer than 5 points in the fit window");
  if (!(sxx > R(0))) throw numeric_error("fit_parabola: degenerate abscissas");
  R slope = sxy / sxx;
  if (slope < R(0)) slope = R(0);
  ParabolaFit<R> fit;
  fit.beta0 = sqrt(slope);
  fit.points_used = used;
  R dev(0);
  for (const auto& [xi, r1] : pts) {
    if (r0 > R(0) && r1 > wf * r0) continue;
    if (!(r1 > R(0))) continue;
    R rap = sqrt(r0 * r0 + slope * (xi - xi0) * (xi - xi0));
    dev = max(dev, fabs(rap / r1 - R(1)));
  }
  fit.max_rel_dev = dev;
  return fit;
}

// delta_xi(R_av) = sqrt(R_av^2 - R0^2)/beta0
template <class R>
R half_width(const R& r_av, const R& r0, const R& beta0) {
  if (r_av < r0) throw numeric_error("half_width: R_av below the line minimum R0");
  if (!(beta0 > R(0))) throw numeric_error("half_width: beta0 must be positive");
  return sqrt(r_av * r_av - r0 * r0) / beta0;
}

template <class R>
SpectralLine<R> locate_minimum(const CrystalConfig& cfg, const std::array<R, 3>& q, R lo, R hi,
                               int d, const LatticeFlags& flags = {}, int branch = 0,
                               R tol = R(0)) {
  BranchEvaluator<R> ev(cfg, q, d, flags, branch);
  if (!(tol > R(0))) {
    tol = real_traits<R>::epsilon() * max(max(fabs(lo), fabs(hi)), R(1e-12)) * R(8);
  }
  std::function<R(const R&)> f = [&](const R& xi) { return ev(xi); };
  R xi0 = golden_minimize(f, lo, hi, tol);

  SpectralLine<R> line;
  line.branch = branch;
  line.xi0 = xi0;
  auto pt0 = ev.point(xi0);
  if (!pt0.error.empty()) throw numeric_error("locate_minimum: " + pt0.error);
  R lam0 = pt0.lambda[branch];
  line.r0 = sqrt(lam0);

  // parabola window: probe for the step h where lambda is roughly 4..9x the
  // minimum; a floor-level minimum gets a fixed macroscopic window instead
  R h = (hi - lo) / R(16);
  const R lam_floor = R(64) * real_traits<R>::epsilon() * max(R(1), pt0.lambda[3]);
  if (lam0 > lam_floor) {
    for (int it = 0; it < 60; ++it) {
      R lp = ev(xi0 + h);
      if (lp > R(9) * lam0) {
        h = h * R(0.5);
      } else if (lp < R(4) * lam0) {
        h = h * R(2);
        if (h > (hi - lo)) { h = hi - lo; break; }
      } else {
        break;
      }
    }
  } else {
    h = (hi - lo) / R(8);
  }
  std::vector<std::pair<R, R>> pts;
  const int nfit = 15;
  for (int i = 0; i < nfit; ++i) {
    R xi = xi0 - h + (R(2) * h) * (R(i) / R(nfit - 1));
    pts.emplace_back(xi, sqrt(ev(xi)));
  }
  auto fit = fit_parabola(pts, xi0, line.r0, 1e300);  // window already sized
  line.beta0 = fit.beta0;
  line.fit_max_rel_dev = fit.max_rel_dev;

  line.r_av = sqrt(real_traits<R>::from_double(intensity(cfg)));
  line.delta_xi = (line.r_av >= line.r0 && line.beta0 > R(0))
                      ? half_width(line.r_av, line.r0, line.beta0)
                      : R(0);

  line.multiplicity = pt0.multiplicity[branch];
  {
    R q4 = q40(q) + xi0;
    auto sys = assemble(ev.region(), cfg, q, q4, flags);
    auto fam = solve_family(sys);
    auto ge = generalized_eigen(fam.ud, fam.ue);
    line.rho1 = projector_from_root(fam.ud, fam.ue, ge.lambda[branch], ge.multiplicity[branch]);
    line.trace_rho1 = trace(line.rho1).re;
  }
  return line;
}

struct DoubletClassification {
  std::vector<std::string> labels;
  bool ok = true;
  std::string diagnostic;
};

// Labels by sign of <Sigma3>: positive -> "a" (sign opposition asserted).
DoubletClassification classify_doublet(const std::vector<double>& sigma3_means);

}  // namespace estc
