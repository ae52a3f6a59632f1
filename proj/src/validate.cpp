#include "estc/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "estc/free_space.hpp"
#include "estc/lattice.hpp"

namespace estc {

namespace {

CheckResult mk(const std::string& name, double dev, double tol, const std::string& detail = "") {
  return {name, dev <= tol, dev, tol, detail};
}

double mat_dev(const Mat4<double>& a, const Mat4<double>& b) { return max_abs(a - b); }

// A_{jk} with j in 1..6, k in 1..3
cxd amp(const CrystalConfig& c, int j, int k) { return c.amplitude[j - 1][k - 1]; }
cxd ampc(const CrystalConfig& c, int j, int k) { return conj(c.amplitude[j - 1][k - 1]); }

}  // namespace

CrystalConfig random_transverse_crystal(uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CrystalConfig cfg;
  cfg.omega = 0.05 + 0.2 * std::abs(u(rng));
  // wave j propagates along axis ((j-1) mod 3); that component stays zero
  for (int j = 0; j < 6; ++j) {
    int axis = j % 3;
    for (int k = 0; k < 3; ++k) {
      if (k == axis) continue;
      cfg.amplitude[j][k] = {scale * u(rng), scale * u(rng)};
    }
  }
  return cfg;
}

std::vector<CheckResult> validate_spinor_checks(uint64_t seed) {
  std::vector<CheckResult> out;
  const auto& dm = dirac_matrices();
  const Mat4<double> alpha[4] = {dm.alpha1, dm.alpha2, dm.alpha3, dm.alpha4};

  double dev = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Mat4<double> anti = alpha[i] * alpha[j] + alpha[j] * alpha[i];
      Mat4<double> expect = (i == j) ? (cxd{2, 0} * Mat4<double>::identity()) : Mat4<double>::zero();
      dev = std::max(dev, mat_dev(anti, expect));
    }
  out.push_back(mk("clifford anticommutation", dev, 1e-15));

  const auto& b = dirac_basis();
  dev = 0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      cxd t = trace(b[i] * b[j]);
      double expect = (i == j) ? 4.0 : 0.0;
      dev = std::max(dev, std::max(std::fabs(t.re - expect), std::fabs(t.im)));
    }
  out.push_back(mk("dirac basis orthonormality tr(BiBj)/4 = dij", dev / 4.0, 1e-14));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rand_mat = [&] {
    Mat4<double> m;
    for (auto& e : m.a) e = {u(rng), u(rng)};
    return m;
  };
  dev = 0;
  double devround = 0;
  for (int t = 0; t < 8; ++t) {
    Mat4<double> m = rand_mat();
    Mat4<double> adj = adjugate(m);
    cxd det = det4(m);
    dev = std::max(dev, mat_dev(m * adj, det * Mat4<double>::identity()));
    devround = std::max(devround, mat_dev(dirac_set_compose(dirac_set_decompose(m)), m));
  }
  out.push_back(mk("adjugate identity M adj(M) = det(M) U", dev, 1e-12));
  out.push_back(mk("dirac set round trip", devround, 1e-13));

  // generalized eigenproblem residuals on random Hermitian definite pencils
  dev = 0;
  for (int t = 0; t < 8; ++t) {
    Mat4<double> x = rand_mat();
    Mat4<double> ud = x * dagger(x);
    Mat4<double> y = rand_mat();
    Mat4<double> ue = y * dagger(y) + Mat4<double>::identity();
    auto ge = generalized_eigen(ud, ue);
    for (int j = 0; j < 4; ++j) {
      Vec4<double> lhs = ud * ge.vectors[j];
      Vec4<double> rhs = cxd{ge.lambda[j], 0} * (ue * ge.vectors[j]);
      dev = std::max(dev, std::sqrt(norm2(lhs - rhs)) / std::max(1.0, max_abs(ud)));
    }
  }
  out.push_back(mk("generalized eigen residual", dev, 1e-12));
  return out;
}

std::vector<CheckResult> validate_free_checks(const std::array<double, 3>& q) {
  std::vector<CheckResult> out;
  auto pr = free_projectors(q);
  const auto U = Mat4<double>::identity();
  double dev = mat_dev(pr.plus + pr.minus, U);
  dev = std::max(dev, mat_dev(pr.plus * pr.minus, Mat4<double>::zero()));
  dev = std::max(dev, mat_dev(pr.plus * pr.plus, pr.plus));
  dev = std::max(dev, mat_dev(pr.minus * pr.minus, pr.minus));
  dev = std::max(dev, mat_dev(dagger(pr.plus), pr.plus));
  dev = std::max(dev, std::fabs(trace(pr.plus).re - 2.0));
  dev = std::max(dev, std::fabs(trace(pr.minus).re - 2.0));
  out.push_back(mk("free projector identities", dev, 1e-14));

  auto c = free_basis(q);
  dev = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cxd g = dot(c[i], c[j]);
      double expect = (i == j) ? 1.0 : 0.0;
      dev = std::max(dev, std::max(std::fabs(g.re - expect), std::fabs(g.im)));
    }
  out.push_back(mk("free basis orthonormality", dev, 1e-14));

  dev = mat_dev(outer(c[0], c[0]) + outer(c[1], c[1]), pr.plus);
  dev = std::max(dev, mat_dev(outer(c[2], c[2]) + outer(c[3], c[3]), pr.minus));
  out.push_back(mk("projector reconstruction from basis", dev, 1e-14));

  double q40v = q40(q);
  double ondev = std::max(std::sqrt(norm2(det4(free_operator(q, q40v)))),
                          std::sqrt(norm2(det4(free_operator(q, -q40v)))));
  double offmin = 1e300;
  for (double f : {0.5, 0.9, 1.1, 1.5, -0.5, -1.2})
    offmin = std::min(offmin, std::sqrt(norm2(det4(free_operator(q, f * q40v)))));
  out.push_back(mk("det P0 = 0 exactly on shell", ondev, 1e-14,
                   "off-shell minimum |det| = " + std::to_string(offmin)));
  out.push_back(mk("det P0 != 0 off shell", offmin > 1e-6 ? 0.0 : 1.0, 0.5));

  // closed-form zero-model against frozen operating-point values
  std::array<double, 3> qp = {0.0, 0.0, 0.02};
  auto z_on = zero_model(qp, q40(qp), 3e-6);
  auto z_neg = zero_model(qp, -q40(qp), 3e-6);
  double d1 = std::fabs(z_on.r_plus / 0.00173205 - 1.0);
  double d2 = std::fabs(z_neg.r_plus / 2.00040 - 1.0);
  out.push_back(mk("zero-model R+(q40) = sqrt(I_A) = 0.00173205", d1, 1e-5));
  out.push_back(mk("zero-model R+(-q40) = 2.00040", d2, 1e-5));
  auto z0 = zero_model(qp, q40(qp), 0.0);
  out.push_back(mk("zero-model I_A -> 0 limit S+ = 1, R+ = 0",
                   std::max(std::fabs(z0.s_plus - 1.0), z0.r_plus), 1e-14));
  // symmetry R-+(q4) = R+-(-q4)
  double symdev = 0;
  for (double xi : {-0.3, -0.01, 0.02, 0.4}) {
    auto za = zero_model(qp, q40(qp) + xi, 3e-6);
    auto zb = zero_model(qp, -(q40(qp) + xi), 3e-6);
    symdev = std::max(symdev, std::fabs(za.r_plus - zb.r_minus));
    symdev = std::max(symdev, std::fabs(za.r_minus - zb.r_plus));
  }
  out.push_back(mk("dispersion symmetry R-+(q4) = R+-(-q4)", symdev, 1e-15));
  return out;
}

std::vector<CheckResult> validate_crystal_checks(const CrystalConfig& cfg) {
  std::vector<CheckResult> out;
  const auto& tab = shift_table();
  double dev = 0;
  for (int i = 0; i < 12; ++i) {
    // pairing: amplitude of -s is the conjugate
    for (int j = 0; j < 12; ++j) {
      if (tab[j].s != -tab[i].s) continue;
      auto a = shift_amplitude(cfg, tab[i]);
      auto b = shift_amplitude(cfg, tab[j]);
      for (int k = 0; k < 3; ++k) {
        cxd d = a[k] - conj(b[k]);
        dev = std::max(dev, std::max(std::fabs(d.re), std::fabs(d.im)));
      }
    }
  }
  out.push_back(mk("conjugation pairing a(-s) = conj(a(s))", dev, 1e-15));

  dev = 0;
  for (const auto& e : tab) {
    auto a = shift_amplitude(cfg, e);
    cxd d = double(e.unit[0]) * a[0] + double(e.unit[1]) * a[1] + double(e.unit[2]) * a[2];
    dev = std::max(dev, std::sqrt(norm2(d)));
  }
  out.push_back(mk("transversality a(s).s_hat = 0", dev, 1e-15));

  double ia = intensity(cfg);
  double sum2 = 0;
  for (const auto& a : cfg.amplitude)
    for (const auto& x : a) sum2 += norm2(x);
  out.push_back(mk("intensity I_A = 2 sum |A_jk|^2", std::fabs(ia - 2.0 * sum2), 1e-15));
  return out;
}

DiracSet appendix_n1_dirac_set(const LatticeIndex& s, const CrystalConfig& cfg,
                               const std::array<double, 3>& w, double w4, double omega) {
  DiracSet d{};
  const cxd i{0, 1};
  const double om = omega;
  const cxd omm{-om + 2 * w4, 0};  // Omega_-
  const cxd omp{om + 2 * w4, 0};   // Omega_+
  auto A = [&](int j, int k) { return amp(cfg, j, k); };
  auto Ac = [&](int j, int k) { return ampc(cfg, j, k); };
  const double w1 = w[0], w2 = w[1], w3 = w[2];
  // positions (1-based in comments) -> indices: 1->0, 2..4 -> 1..3, 10..12 -> 9..11
  if (s == LatticeIndex{0, 0, -1, -1}) {
    d[0] = cxd{-2, 0} * (A(3, 1) * w1 + A(3, 2) * w2);
    d[2] = i * A(3, 2) * om;
    d[3] = -(i * A(3, 1) * om);
    d[10] = -(A(3, 1) * omm);
    d[11] = -(A(3, 2) * omm);
  } else if (s == LatticeIndex{0, -1, 0, -1}) {
    d[0] = cxd{-2, 0} * (A(2, 1) * w1 + A(2, 3) * w3);
    d[1] = i * A(2, 1) * om;
    d[2] = -(i * A(2, 3) * om);
    d[9] = -(A(2, 3) * omm);
    d[10] = -(A(2, 1) * omm);
  } else if (s == LatticeIndex{-1, 0, 0, -1}) {
    d[0] = cxd{-2, 0} * (A(1, 2) * w2 + A(1, 3) * w3);
    d[1] = -(i * A(1, 2) * om);
    d[3] = i * A(1, 3) * om;
    d[9] = -(A(1, 3) * omm);
    d[11] = -(A(1, 2) * omm);
  } else if (s == LatticeIndex{1, 0, 0, -1}) {
    d[0] = cxd{-2, 0} * (A(4, 2) * w2 + A(4, 3) * w3);
    d[1] = i * A(4, 2) * om;
    d[3] = -(i * A(4, 3) * om);
    d[9] = -(A(4, 3) * omm);
    d[11] = -(A(4, 2) * omm);
  } else if (s == LatticeIndex{0, 1, 0, -1}) {
    d[0] = cxd{-2, 0} * (A(5, 1) * w1 + A(5, 3) * w3);
    d[1] = -(i * A(5, 1) * om);
    d[2] = i * A(5, 3) * om;
    d[9] = -(A(5, 3) * omm);
    d[10] = -(A(5, 1) * omm);
  } else if (s == LatticeIndex{0, 0, 1, -1}) {
    d[0] = cxd{-2, 0} * (A(6, 1) * w1 + A(6, 2) * w2);
    d[2] = -(i * A(6, 2) * om);
    d[3] = i * A(6, 1) * om;
    d[10] = -(A(6, 1) * omm);
    d[11] = -(A(6, 2) * omm);
  } else if (s == LatticeIndex{0, 0, -1, 1}) {
    d[0] = cxd{-2, 0} * (Ac(6, 1) * w1 + Ac(6, 2) * w2);
    d[2] = i * Ac(6, 2) * om;
    d[3] = -(i * Ac(6, 1) * om);
    d[10] = -(Ac(6, 1) * omp);
    d[11] = -(Ac(6, 2) * omp);
  } else if (s == LatticeIndex{0, -1, 0, 1}) {
    d[0] = cxd{-2, 0} * (Ac(5, 1) * w1 + Ac(5, 3) * w3);
    d[1] = i * Ac(5, 1) * om;
    d[2] = -(i * Ac(5, 3) * om);
    d[9] = -(Ac(5, 3) * omp);
    d[10] = -(Ac(5, 1) * omp);
  } else if (s == LatticeIndex{-1, 0, 0, 1}) {
    d[0] = cxd{-2, 0} * (Ac(4, 2) * w2 + Ac(4, 3) * w3);
    d[1] = -(i * Ac(4, 2) * om);
    d[3] = i * Ac(4, 3) * om;
    d[9] = -(Ac(4, 3) * omp);
    d[11] = -(Ac(4, 2) * omp);
  } else if (s == LatticeIndex{1, 0, 0, 1}) {
    d[0] = cxd{-2, 0} * (Ac(1, 2) * w2 + Ac(1, 3) * w3);
    d[1] = i * Ac(1, 2) * om;
    d[3] = -(i * Ac(1, 3) * om);
    d[9] = -(Ac(1, 3) * omp);
    d[11] = -(Ac(1, 2) * omp);
  } else if (s == LatticeIndex{0, 1, 0, 1}) {
    d[0] = cxd{-2, 0} * (Ac(2, 1) * w1 + Ac(2, 3) * w3);
    d[1] = -(i * Ac(2, 1) * om);
    d[2] = i * Ac(2, 3) * om;
    d[9] = -(Ac(2, 3) * omp);
    d[10] = -(Ac(2, 1) * omp);
  } else if (s == LatticeIndex{0, 0, 1, 1}) {
    d[0] = cxd{-2, 0} * (Ac(3, 1) * w1 + Ac(3, 2) * w2);
    d[2] = -(i * Ac(3, 2) * om);
    d[3] = i * Ac(3, 1) * om;
    d[10] = -(Ac(3, 1) * omp);
    d[11] = -(Ac(3, 2) * omp);
  } else {
    throw stencil_error("appendix_n1_dirac_set: not a unit shift");
  }
  return d;
}

std::vector<cxd> appendix_n2_list(const CrystalConfig& cfg) {
  auto A = [&](int j, int k) { return amp(cfg, j, k); };
  auto Ac = [&](int j, int k) { return ampc(cfg, j, k); };
  const cxd i{0, 1};
  const cxd two{2, 0};
  auto pairprod = [&](cxd x, cxd y) { return (x + i * y) * (x - i * y); };
  std::vector<cxd> v;
  v.reserve(56);
  v.push_back(two * (A(1, 2) * A(4, 2) + A(1, 3) * A(4, 3) + A(2, 1) * A(5, 1) +
                     A(2, 3) * A(5, 3) + A(3, 1) * A(6, 1) + A(3, 2) * A(6, 2)));
  v.push_back(two * (Ac(1, 2) * Ac(4, 2) + Ac(1, 3) * Ac(4, 3) + Ac(2, 1) * Ac(5, 1) +
                     Ac(2, 3) * Ac(5, 3) + Ac(3, 1) * Ac(6, 1) + Ac(3, 2) * Ac(6, 2)));
  v.push_back(two * (A(3, 1) * Ac(6, 1) + A(3, 2) * Ac(6, 2)));
  v.push_back(two * (A(3, 1) * Ac(5, 1) + A(2, 1) * Ac(6, 1)));
  v.push_back(two * (A(3, 2) * Ac(4, 2) + A(1, 2) * Ac(6, 2)));
  v.push_back(two * (Ac(1, 2) * A(3, 2) + A(4, 2) * Ac(6, 2)));
  v.push_back(two * (Ac(2, 1) * A(3, 1) + A(5, 1) * Ac(6, 1)));
  v.push_back(two * (A(2, 1) * Ac(5, 1) + A(2, 3) * Ac(5, 3)));
  v.push_back(two * (A(2, 3) * Ac(4, 3) + A(1, 3) * Ac(5, 3)));
  v.push_back(two * (Ac(1, 3) * A(2, 3) + A(4, 3) * Ac(5, 3)));
  v.push_back(two * (A(1, 2) * Ac(4, 2) + A(1, 3) * Ac(4, 3)));
  v.push_back(two * (Ac(1, 2) * A(4, 2) + Ac(1, 3) * A(4, 3)));
  v.push_back(two * (A(1, 3) * Ac(2, 3) + Ac(4, 3) * A(5, 3)));
  v.push_back(two * (Ac(2, 3) * A(4, 3) + Ac(1, 3) * A(5, 3)));
  v.push_back(two * (Ac(2, 1) * A(5, 1) + Ac(2, 3) * A(5, 3)));
  v.push_back(two * (A(2, 1) * Ac(3, 1) + Ac(5, 1) * A(6, 1)));
  v.push_back(two * (A(1, 2) * Ac(3, 2) + Ac(4, 2) * A(6, 2)));
  v.push_back(two * (Ac(3, 2) * A(4, 2) + Ac(1, 2) * A(6, 2)));
  v.push_back(two * (Ac(3, 1) * A(5, 1) + Ac(2, 1) * A(6, 1)));
  v.push_back(two * (Ac(3, 1) * A(6, 1) + Ac(3, 2) * A(6, 2)));
  v.push_back(pairprod(A(3, 1), A(3, 2)));
  v.push_back(two * A(2, 1) * A(3, 1));
  v.push_back(two * A(1, 2) * A(3, 2));
  v.push_back(two * A(3, 2) * A(4, 2));
  v.push_back(two * A(3, 1) * A(5, 1));
  v.push_back(pairprod(A(2, 1), A(2, 3)));
  v.push_back(two * A(1, 3) * A(2, 3));
  v.push_back(two * A(2, 3) * A(4, 3));
  v.push_back(pairprod(A(1, 2), A(1, 3)));
  v.push_back(pairprod(A(4, 2), A(4, 3)));
  v.push_back(two * A(1, 3) * A(5, 3));
  v.push_back(two * A(4, 3) * A(5, 3));
  v.push_back(pairprod(A(5, 1), A(5, 3)));
  v.push_back(two * A(2, 1) * A(6, 1));
  v.push_back(two * A(1, 2) * A(6, 2));
  v.push_back(two * A(4, 2) * A(6, 2));
  v.push_back(two * A(5, 1) * A(6, 1));
  v.push_back(pairprod(A(6, 1), A(6, 2)));
  v.push_back(pairprod(Ac(6, 1), Ac(6, 2)));
  v.push_back(two * Ac(5, 1) * Ac(6, 1));
  v.push_back(two * Ac(4, 2) * Ac(6, 2));
  v.push_back(two * Ac(1, 2) * Ac(6, 2));
  v.push_back(two * Ac(2, 1) * Ac(6, 1));
  v.push_back(pairprod(Ac(5, 1), Ac(5, 3)));
  v.push_back(two * Ac(4, 3) * Ac(5, 3));
  v.push_back(two * Ac(1, 3) * Ac(5, 3));
  v.push_back(pairprod(Ac(4, 2), Ac(4, 3)));
  v.push_back(pairprod(Ac(1, 2), Ac(1, 3)));
  v.push_back(two * Ac(2, 3) * Ac(4, 3));
  v.push_back(two * Ac(1, 3) * Ac(2, 3));
  v.push_back(pairprod(Ac(2, 1), Ac(2, 3)));
  v.push_back(two * Ac(3, 1) * Ac(5, 1));
  v.push_back(two * Ac(3, 2) * Ac(4, 2));
  v.push_back(two * Ac(1, 2) * Ac(3, 2));
  v.push_back(two * Ac(2, 1) * Ac(3, 1));
  v.push_back(pairprod(Ac(3, 1), Ac(3, 2)));
  return v;
}

double n2_multiset_deviation(std::vector<cxd> ours, std::vector<cxd> oracle) {
  if (ours.size() != oracle.size()) return 1e300;
  auto lt = [](const cxd& a, const cxd& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  };
  std::sort(ours.begin(), ours.end(), lt);
  std::sort(oracle.begin(), oracle.end(), lt);
  double dev = 0;
  for (size_t k = 0; k < ours.size(); ++k) {
    cxd d = ours[k] - oracle[k];
    dev = std::max(dev, std::max(std::fabs(d.re), std::fabs(d.im)));
  }
  return dev;
}

std::vector<CheckResult> validate_appendix_checks(uint64_t seed) {
  std::vector<CheckResult> out;

  out.push_back(mk("S13 count = 13", std::fabs(double(enumerate_shifts(1).size()) - 13.0), 0.0));
  out.push_back(mk("S69 count = 69", std::fabs(double(enumerate_shifts(2).size()) - 69.0), 0.0));
  out.push_back(mk("N2 shift count = 56", std::fabs(double(g2_shifts().size()) - 56.0), 0.0));

  double structdev = 0;
  for (const auto& s : unit_shifts()) {
    int nsp = (s[0] != 0) + (s[1] != 0) + (s[2] != 0);
    if (std::abs(s[3]) != 1 || nsp != 1) structdev = 1;
  }
  out.push_back(mk("unit shifts: |s4| = 1, one spatial entry", structdev, 0.0));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double n1dev = 0, n2dev = 0, pairdev = 0, hermdev = 0;
  for (int trial = 0; trial < 4; ++trial) {
    CrystalConfig cfg = random_transverse_crystal(rng());
    LatticeIndex m = {int(rng() % 5) - 2, int(rng() % 5) - 2, int(rng() % 5) - 2,
                      int(rng() % 5) - 2};
    if (!even_sum(m)) m[3] += 1;
    std::array<double, 3> q = {u(rng), u(rng), u(rng)};
    double q4 = 1.0 + 0.5 * u(rng);
    std::array<double, 3> w = {q[0] + m[0] * cfg.omega, q[1] + m[1] * cfg.omega,
                               q[2] + m[2] * cfg.omega};
    double w4 = q4 + m[3] * cfg.omega;
    for (const auto& s : unit_shifts()) {
      DiracSet ours = dirac_set_decompose(n1_matrix<double>(cfg, m, s, q, q4));
      DiracSet oracle = appendix_n1_dirac_set(s, cfg, w, w4, cfg.omega);
      for (int k = 0; k < 16; ++k) {
        cxd d = ours[k] - oracle[k];
        n1dev = std::max(n1dev, std::max(std::fabs(d.re), std::fabs(d.im)));
      }
    }
    std::vector<cxd> ours;
    for (const auto& s : g2_shifts()) ours.push_back(n2_scalar<double>(cfg, s));
    n2dev = std::max(n2dev, n2_multiset_deviation(ours, appendix_n2_list(cfg)));
    for (const auto& s : g2_shifts()) {
      cxd d = n2_scalar<double>(cfg, -s) - conj(n2_scalar<double>(cfg, s));
      pairdev = std::max(pairdev, std::max(std::fabs(d.re), std::fabs(d.im)));
    }
    cxd ia = n2_scalar<double>(cfg, {0, 0, 0, 0});
    cxd d0 = ia - cxd{intensity(cfg), 0};
    hermdev = std::max(hermdev, std::max(std::fabs(d0.re), std::fabs(d0.im)));
  }
  out.push_back(mk("N1 matches the 12 reference Dirac-set templates", n1dev, 1e-13));
  out.push_back(mk("N2 multiset matches the 56 reference coefficients", n2dev, 1e-13));
  out.push_back(mk("N2(-s) = conj(N2(s))", pairdev, 1e-13));
  out.push_back(mk("N2(0) = I_A", hermdev, 1e-13));
  return out;
}

std::vector<CheckResult> validate_zero_field_checks(const std::array<double, 3>& q) {
  std::vector<CheckResult> out;
  CrystalConfig cfg = zero_crystal(0.1);
  Region region = build_region(1);
  double q40v = q40(q);
  auto sys = assemble<double>(region, cfg, q, q40v, {});
  auto fam = solve_family(sys);
  auto c = free_basis(q);
  double r_plus = relative_residual(fam.ud, fam.ue, c[0]);
  out.push_back(mk("zero field: R(c+, q40) = 0", r_plus, 1e-12));
  double dev_ue = mat_dev(fam.ue, Mat4<double>::identity());
  out.push_back(mk("zero field: U_E = U", dev_ue, 1e-14));
  double xi = 0.37;
  auto sys2 = assemble<double>(region, cfg, q, q40v + xi, {});
  auto fam2 = solve_family(sys2);
  double dev_r = std::fabs(relative_residual(fam2.ud, fam2.ue, c[0]) - xi);
  out.push_back(mk("zero field: R(c+, q40+xi) = |xi|", dev_r, 1e-12));
  return out;
}

std::vector<CheckResult> validate_report(const CrystalConfig& cfg, const std::array<double, 3>& q,
                                         uint64_t seed) {
  std::vector<CheckResult> all;
  auto app = [&](std::vector<CheckResult> v) {
    for (auto& c : v) all.push_back(std::move(c));
  };
  app(validate_spinor_checks(seed));
  app(validate_free_checks(q));
  app(validate_crystal_checks(cfg));
  app(validate_appendix_checks(seed + 1));
  app(validate_zero_field_checks(q));
  return all;
}

}  // namespace estc
