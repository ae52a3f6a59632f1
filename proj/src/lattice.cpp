#include "estc/lattice.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <complex>
#include <string>

namespace estc {

Region build_region(int d) {
  if (d < 1) throw stencil_error("build_region: radius must be >= 1");
  Region r;
  r.d = d;
  for (int n1 = -d; n1 <= d; ++n1)
    for (int n2 = -d; n2 <= d; ++n2)
      for (int n3 = -d; n3 <= d; ++n3) {
        if (std::abs(n1) + std::abs(n2) + std::abs(n3) > d) continue;
        for (int n4 = -d; n4 <= d; ++n4) {
          LatticeIndex n{n1, n2, n3, n4};
          if (even_sum(n)) r.pts.push_back(n);
        }
      }
  std::sort(r.pts.begin(), r.pts.end());
  r.finalize();
  return r;
}

namespace {

using SpMat = Eigen::SparseMatrix<std::complex<double>>;
using Triplet = Eigen::Triplet<std::complex<double>>;

template <class R>
std::string most_resonant_point(const BlockSystem<R>& sys) {
  double best = 1e300;
  LatticeIndex arg{};
  const double omega = sys.cfg.omega;
  for (const auto& n : sys.region.pts) {
    if (n == LatticeIndex{0, 0, 0, 0}) continue;
    double w1 = real_traits<R>::to_double(sys.q[0]) + n[0] * omega;
    double w2 = real_traits<R>::to_double(sys.q[1]) + n[1] * omega;
    double w3 = real_traits<R>::to_double(sys.q[2]) + n[2] * omega;
    double w4 = real_traits<R>::to_double(sys.q4) + n[3] * omega;
    double w40 = std::sqrt(1.0 + w1 * w1 + w2 * w2 + w3 * w3);
    double res = std::min(std::fabs(w4 - w40), std::fabs(w4 + w40));
    if (res < best) {
      best = res;
      arg = n;
    }
  }
  return "(" + std::to_string(arg[0]) + "," + std::to_string(arg[1]) + "," +
         std::to_string(arg[2]) + "," + std::to_string(arg[3]) + ")";
}

// Collect the interior (non-central) sparse matrix and the 4 right-hand-side
// columns -M_B0 in f64; works from either scalar type.
template <class R>
void build_sparse(const BlockSystem<R>& sys, SpMat& a, Eigen::MatrixXcd& rhs) {
  const int center = sys.region.center;
  const int n = sys.region.size();
  const int ni = n - 1;
  auto intmap = [center](int i) { return i < center ? i : i - 1; };
  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(ni) * 440);
  rhs = Eigen::MatrixXcd::Zero(4 * ni, 4);
  auto cx = [](const Cx<R>& v) {
    return std::complex<double>(real_traits<R>::to_double(v.re), real_traits<R>::to_double(v.im));
  };
  for (int i = 0; i < n; ++i) {
    if (i == center) continue;
    const int r = intmap(i);
    const auto& row = sys.rows[i];
    for (int a1 = 0; a1 < 4; ++a1)
      for (int b = 0; b < 4; ++b) {
        std::complex<double> v = cx(row.diag(a1, b));
        if (v != 0.0) trip.emplace_back(4 * r + a1, 4 * r + b, v);
      }
    for (const auto& mc : row.mats) {
      if (mc.col == center) {
        for (int a1 = 0; a1 < 4; ++a1)
          for (int b = 0; b < 4; ++b) rhs(4 * r + a1, b) -= cx(mc.m(a1, b));
      } else {
        const int c = intmap(mc.col);
        for (int a1 = 0; a1 < 4; ++a1)
          for (int b = 0; b < 4; ++b) {
            std::complex<double> v = cx(mc.m(a1, b));
            if (v != 0.0) trip.emplace_back(4 * r + a1, 4 * c + b, v);
          }
      }
    }
    for (const auto& sc : row.scals) {
      std::complex<double> v = cx(sc.v);
      if (sc.col == center) {
        for (int a1 = 0; a1 < 4; ++a1) rhs(4 * r + a1, a1) -= v;
      } else {
        const int c = intmap(sc.col);
        for (int a1 = 0; a1 < 4; ++a1) trip.emplace_back(4 * r + a1, 4 * c + a1, v);
      }
    }
  }
  a.resize(4 * ni, 4 * ni);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
}

}  // namespace

SolutionFamily<double> eliminate(const BlockSystem<double>& sys) {
  const int n = sys.region.size();
  const int center = sys.region.center;
  SolutionFamily<double> fam;
  fam.region = sys.region;
  fam.s.assign(n, Mat4<double>::zero());
  fam.s[center] = Mat4<double>::identity();
  if (n == 1) return fam;

  SpMat a;
  Eigen::MatrixXcd rhs;
  build_sparse(sys, a, rhs);
  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success)
    throw numeric_error("eliminate: singular interior system; most resonant lattice point " +
                        most_resonant_point(sys));
  Eigen::MatrixXcd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw numeric_error("eliminate: sparse solve failed near lattice point " +
                        most_resonant_point(sys));
  auto intmap = [center](int i) { return i < center ? i : i - 1; };
  for (int i = 0; i < n; ++i) {
    if (i == center) continue;
    const int r = intmap(i);
    for (int a1 = 0; a1 < 4; ++a1)
      for (int b = 0; b < 4; ++b) {
        std::complex<double> v = x(4 * r + a1, b);
        fam.s[i](a1, b) = {v.real(), v.imag()};
      }
  }
  return fam;
}

SolutionFamily<ddouble> eliminate(const BlockSystem<ddouble>& sys) {
  const int n = sys.region.size();
  const int center = sys.region.center;
  SolutionFamily<ddouble> fam;
  fam.region = sys.region;
  fam.s.assign(n, Mat4<ddouble>::zero());
  fam.s[center] = Mat4<ddouble>::identity();
  if (n == 1) return fam;

  SpMat a;
  Eigen::MatrixXcd rhs;
  build_sparse(sys, a, rhs);
  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success)
    throw numeric_error("eliminate: singular interior system; most resonant lattice point " +
                        most_resonant_point(sys));
  Eigen::MatrixXcd x0 = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw numeric_error("eliminate: sparse solve failed near lattice point " +
                        most_resonant_point(sys));

  auto intmap = [center](int i) { return i < center ? i : i - 1; };
  const int ni = n - 1;
  // X blocks per interior point, all 4 columns at once
  std::vector<Mat4<ddouble>> xb(ni);
  for (int i = 0; i < n; ++i) {
    if (i == center) continue;
    const int r = intmap(i);
    for (int a1 = 0; a1 < 4; ++a1)
      for (int b = 0; b < 4; ++b) {
        std::complex<double> v = x0(4 * r + a1, b);
        xb[r](a1, b) = {ddouble(v.real()), ddouble(v.imag())};
      }
  }

  // B blocks: minus the couplings to the center column, in full precision
  std::vector<Mat4<ddouble>> bb(ni);
  for (int i = 0; i < n; ++i) {
    if (i == center) continue;
    const int r = intmap(i);
    for (const auto& mc : sys.rows[i].mats)
      if (mc.col == center) bb[r] -= mc.m;
    for (const auto& sc : sys.rows[i].scals)
      if (sc.col == center)
        for (int a1 = 0; a1 < 4; ++a1) bb[r](a1, a1) -= sc.v;
  }

  auto residual = [&](const std::vector<Mat4<ddouble>>& xcur, std::vector<Mat4<ddouble>>& res) {
    ddouble rmax(0.0);
    for (int i = 0; i < n; ++i) {
      if (i == center) continue;
      const int r = intmap(i);
      Mat4<ddouble> acc = bb[r] - sys.rows[i].diag * xcur[r];
      for (const auto& mc : sys.rows[i].mats)
        if (mc.col != center) acc -= mc.m * xcur[intmap(mc.col)];
      for (const auto& sc : sys.rows[i].scals)
        if (sc.col != center) acc -= sc.v * xcur[intmap(sc.col)];
      res[r] = acc;
      rmax = max(rmax, max_abs(acc));
    }
    return rmax;
  };

  std::vector<Mat4<ddouble>> res(ni);
  ddouble prev = residual(xb, res);
  Eigen::MatrixXcd rd(4 * ni, 4);
  int iters = 0;
  for (int it = 0; it < 12; ++it) {
    for (int r = 0; r < ni; ++r)
      for (int a1 = 0; a1 < 4; ++a1)
        for (int b = 0; b < 4; ++b)
          rd(4 * r + a1, b) = std::complex<double>(res[r](a1, b).re.hi, res[r](a1, b).im.hi);
    Eigen::MatrixXcd dx = lu.solve(rd);
    for (int r = 0; r < ni; ++r)
      for (int a1 = 0; a1 < 4; ++a1)
        for (int b = 0; b < 4; ++b) {
          std::complex<double> v = dx(4 * r + a1, b);
          xb[r](a1, b) += Cx<ddouble>(ddouble(v.real()), ddouble(v.imag()));
        }
    ++iters;
    ddouble cur = residual(xb, res);
    if (!(cur < prev * ddouble(0.25)) || cur == ddouble(0.0)) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  fam.refine_iterations = iters;
  for (int i = 0; i < n; ++i) {
    if (i == center) continue;
    fam.s[i] = xb[intmap(i)];
  }
  return fam;
}

}  // namespace estc
