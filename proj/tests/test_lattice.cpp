#include <doctest.h>

#include <complex>
#include <vector>

#include "estc/lattice.hpp"
#include "estc/free_space.hpp"
#include "estc/validate.hpp"

using namespace estc;

namespace {

const std::array<double, 3> qp = {0.0, 0.0, 0.02};

// ---- brute-force dense oracle, independent of eliminate() ----------------
// Assembles the full interior system straight from the constructive
// formulas and solves it by Gaussian elimination with partial pivoting.

using cz = std::complex<double>;

std::vector<Mat4<double>> dense_family(const Region& region, const CrystalConfig& cfg,
                                       const std::array<double, 3>& q, double q4,
                                       const LatticeFlags& flags) {
  const int n = region.size();
  const int center = region.center;
  const int ni = n - 1;
  const int dim = 4 * ni;
  std::vector<cz> a(size_t(dim) * dim, cz{0, 0});
  std::vector<cz> b(size_t(dim) * 4, cz{0, 0});
  auto A = [&](int r, int c) -> cz& { return a[size_t(r) * dim + c]; };
  auto B = [&](int r, int c) -> cz& { return b[size_t(r) * 4 + c]; };
  auto intmap = [&](int i) { return i < center ? i : i - 1; };
  const auto& dm = dirac_matrices();
  double sgn = flags.coupling_sign;
  cz diag_a2 =
      flags.a2_diagonal
          ? cz{0.5 * sgn, 0} * cz{n2_scalar<double>(cfg, {0, 0, 0, 0}).re,
                                  n2_scalar<double>(cfg, {0, 0, 0, 0}).im}
          : cz{0, 0};
  for (int i = 0; i < n; ++i) {
    if (i == center) continue;
    int r = intmap(i);
    const auto& pt = region.pts[i];
    double w1 = q[0] + pt[0] * cfg.omega, w2 = q[1] + pt[1] * cfg.omega,
           w3 = q[2] + pt[2] * cfg.omega, w4 = q4 + pt[3] * cfg.omega;
    Mat4<double> diag = dm.alpha4 + w1 * dm.alpha1 + w2 * dm.alpha2 + w3 * dm.alpha3;
    for (int k = 0; k < 4; ++k) diag(k, k) -= cxd{w4, 0};
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) A(4 * r + x, 4 * r + y) += cz{diag(x, y).re, diag(x, y).im};
    for (int x = 0; x < 4; ++x) A(4 * r + x, 4 * r + x) += diag_a2;
    for (const auto& s : unit_shifts()) {
      int j = region.index_of(pt + s);
      if (j < 0) continue;
      Mat4<double> cpl = n1_matrix<double>(cfg, pt, s, q, q4);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
          cz v = cz{0.5 * sgn, 0} * cz{cpl(x, y).re, cpl(x, y).im};
          if (j == center) B(4 * r + x, y) -= v;
          else A(4 * r + x, 4 * intmap(j) + y) += v;
        }
    }
    for (const auto& s : g2_shifts()) {
      int j = region.index_of(pt + s);
      if (j < 0) continue;
      cxd nv = n2_scalar<double>(cfg, s);
      cz v = cz{0.5 * sgn, 0} * cz{nv.re, nv.im};
      for (int x = 0; x < 4; ++x) {
        if (j == center) B(4 * r + x, x) -= v;
        else A(4 * r + x, 4 * intmap(j) + x) += v;
      }
    }
  }
  // gaussian elimination with partial pivoting on [A | B]
  std::vector<int> piv(dim);
  for (int c = 0; c < dim; ++c) {
    int p = c;
    double best = std::abs(A(c, c));
    for (int r = c + 1; r < dim; ++r)
      if (std::abs(A(r, c)) > best) { best = std::abs(A(r, c)); p = r; }
    REQUIRE(best > 0.0);
    if (p != c) {
      for (int k = 0; k < dim; ++k) std::swap(A(p, k), A(c, k));
      for (int k = 0; k < 4; ++k) std::swap(B(p, k), B(c, k));
    }
    cz inv = cz{1, 0} / A(c, c);
    for (int r = c + 1; r < dim; ++r) {
      cz f = A(r, c) * inv;
      if (f == cz{0, 0}) continue;
      for (int k = c; k < dim; ++k) A(r, k) -= f * A(c, k);
      for (int k = 0; k < 4; ++k) B(r, k) -= f * B(c, k);
    }
  }
  for (int c = dim - 1; c >= 0; --c) {
    for (int k = 0; k < 4; ++k) {
      cz s = B(c, k);
      for (int j = c + 1; j < dim; ++j) s -= A(c, j) * B(j, k);
      B(c, k) = s / A(c, c);
    }
  }
  std::vector<Mat4<double>> out(n, Mat4<double>::zero());
  out[center] = Mat4<double>::identity();
  for (int i = 0; i < n; ++i) {
    if (i == center) continue;
    int r = intmap(i);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        out[i](x, y) = {B(4 * r + x, y).real(), B(4 * r + x, y).imag()};
  }
  return out;
}

}  // namespace

TEST_CASE("build_region: counts from exhaustive enumeration") {
  CHECK(build_region(1).size() == 13);
  CHECK(build_region(2).size() == 69);
  CHECK(build_region(3).size() == 233);
  CHECK_THROWS_AS(build_region(0), stencil_error);
  Region r = build_region(2);
  CHECK(r.center >= 0);
  CHECK(r.pts[r.center] == LatticeIndex{0, 0, 0, 0});
  // closed under negation
  for (const auto& p : r.pts) CHECK(r.index_of(-p) >= 0);
  // matches a direct loop oracle at d = 3
  int count = 0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        for (int d = -3; d <= 3; ++d)
          if (even_sum({a, b, c, d}) && g4d({a, b, c, d}) <= 3) ++count;
  CHECK(count == 233);
}

TEST_CASE("assemble: free rows reduce to the free Dirac operator") {
  Region region = build_region(1);
  double q4 = q40(qp) + 0.3;
  auto sys = assemble<double>(region, zero_crystal(0.1), qp, q4, {});
  CHECK(sys.rows.size() == 13);
  // center-row eigenvalues are -w4 +- w40, each twofold
  std::array<double, 4> w;
  Mat4<double> v;
  hermitian_eigen(sys.rows[region.center].diag, w, v);
  double w40 = q40(qp);
  CHECK(w[0] == doctest::Approx(-w40 - q4).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(-w40 - q4).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(w40 - q4).epsilon(1e-12));
  CHECK(w[3] == doctest::Approx(w40 - q4).epsilon(1e-12));
}

TEST_CASE("assemble: d=1 coupling topology for estc1") {
  Region region = build_region(1);
  auto sys = assemble<double>(region, estc1(5e-4), qp, q40(qp), {});
  for (int i = 0; i < region.size(); ++i) {
    if (i == region.center) continue;
    // off-center rows reach the center only through N1 blocks
    for (const auto& mc : sys.rows[i].mats) CHECK(mc.col == region.center);
    for (const auto& sc : sys.rows[i].scals) CHECK(sc.col != region.center);
  }
  // center row couples to all 12 neighbors via N1 and none via N2
  CHECK(sys.rows[region.center].mats.size() == 12);
  CHECK(sys.rows[region.center].scals.size() == 0);
}

TEST_CASE("assemble: singular-row warning for w4 = 0") {
  Region region = build_region(2);
  // q4 = 0.2 makes w4 vanish on the n4 = -2 plane
  auto sys = assemble<double>(region, estc1(1e-4), qp, 0.2, {});
  CHECK(!sys.singular_rows.empty());
  for (const auto& n : sys.singular_rows) CHECK(n[3] == -2);
}

TEST_CASE("eliminate: zero field decouples") {
  Region region = build_region(1);
  double q4 = q40(qp) + 0.2;
  auto sys = assemble<double>(region, zero_crystal(0.1), qp, q4, {});
  auto fam = solve_family(sys);
  for (int i = 0; i < region.size(); ++i) {
    if (i == region.center) continue;
    CHECK(max_abs(fam.s[i]) == 0.0);
  }
  CHECK(max_abs(fam.ue - Mat4<double>::identity()) <= 1e-15);
  // U_D eigenvalues (q4 -+ q40)^2, twofold
  auto ge = generalized_eigen(fam.ud, fam.ue);
  CHECK(ge.lambda[0] == doctest::Approx(0.04).epsilon(1e-10));
  CHECK(ge.lambda[1] == doctest::Approx(0.04).epsilon(1e-10));
  double big = (q4 + q40(qp)) * (q4 + q40(qp));
  CHECK(ge.lambda[2] == doctest::Approx(big).epsilon(1e-10));
  CHECK(ge.lambda[3] == doctest::Approx(big).epsilon(1e-10));
}

TEST_CASE("eliminate: first-order perturbation oracle at weak field") {
  Region region = build_region(1);
  const double am = 1e-7;
  CrystalConfig cfg = estc1(am);
  double q4 = q40(qp);
  auto sys = assemble<double>(region, cfg, qp, q4, {});
  auto fam = solve_family(sys);
  const auto& dm = dirac_matrices();
  for (const auto& e : shift_table()) {
    int i = region.index_of(e.s);
    REQUIRE(i >= 0);
    // S1(s) = -(1/2) D(s)^-1 N1(s, -s), D inverted through the adjugate
    double w1 = qp[0] + e.s[0] * cfg.omega, w2 = qp[1] + e.s[1] * cfg.omega,
           w3 = qp[2] + e.s[2] * cfg.omega, w4 = q4 + e.s[3] * cfg.omega;
    Mat4<double> d = dm.alpha4 + w1 * dm.alpha1 + w2 * dm.alpha2 + w3 * dm.alpha3;
    for (int k = 0; k < 4; ++k) d(k, k) -= cxd{w4, 0};
    Mat4<double> dinv = (cxd{1, 0} / det4(d)) * adjugate(d);
    Mat4<double> s1 = cxd{-0.5, 0} * (dinv * n1_matrix<double>(cfg, e.s, -e.s, qp, q4));
    double scale = max_abs(s1);
    CHECK(scale > 1e-8);  // O(A_m)
    CHECK(scale < 1e-5);
    CHECK(max_abs(fam.s[i] - s1) <= 1e-4 * scale);
  }
}

TEST_CASE("eliminate: dense brute-force oracle agreement, d = 1 and 2") {
  for (int d : {1, 2}) {
    for (uint64_t seed : {21u, 22u}) {
      CrystalConfig cfg = random_transverse_crystal(seed, 1e-4);
      Region region = build_region(d);
      double q4 = q40(qp) + 3e-6;
      LatticeFlags flags;
      auto sys = assemble<double>(region, cfg, qp, q4, flags);
      auto fam = solve_family(sys);
      auto dense = dense_family(region, cfg, qp, q4, flags);
      double worst = 0, scale = 0;
      for (int i = 0; i < region.size(); ++i) {
        worst = std::max(worst, max_abs(fam.s[i] - dense[i]));
        scale = std::max(scale, max_abs(dense[i]));
      }
      CHECK(worst <= 1e-10 * std::max(scale, 1.0));
      // U_E, U_D recomputed from the dense family through the same forms
      SolutionFamily<double> famd;
      famd.region = region;
      famd.s = dense;
      residual_forms(sys, famd);
      CHECK(max_abs(fam.ue - famd.ue) <= 1e-10 * max_abs(famd.ue));
      CHECK(max_abs(fam.ud - famd.ud) <= 1e-10 * std::max(max_abs(famd.ud), 1e-12));
    }
  }
}

TEST_CASE("eliminate: interior rows are satisfied exactly") {
  Region region = build_region(2);
  auto sys = assemble<double>(region, estc1(5e-4), qp, q40(qp) + 1.5e-6, {});
  auto fam = solve_family(sys);
  CHECK(fam.max_interior_defect <= 1e-11);
  // U_E >= U and U_D >= 0
  auto ge_e = generalized_eigen(fam.ue, Mat4<double>::identity());
  CHECK(ge_e.lambda[0] >= 1.0 - 1e-12);
  auto ge_d = generalized_eigen(fam.ud, Mat4<double>::identity());
  CHECK(ge_d.lambda[0] >= -1e-14);
  CHECK(max_abs(fam.ue - dagger(fam.ue)) == 0.0);
  CHECK(max_abs(fam.ud - dagger(fam.ud)) == 0.0);
}

TEST_CASE("eliminate: singular interior system raises with a lattice point") {
  // hand-built two-point system with an exactly singular interior row
  Region region;
  region.d = 1;
  region.pts = {{0, 0, 0, 0}, {0, 0, 1, 1}};
  region.finalize();
  BlockSystem<double> sys;
  sys.region = region;
  sys.cfg = zero_crystal(0.1);
  sys.q = qp;
  sys.q4 = 1.0;
  sys.rows.resize(2);
  sys.rows[region.center].diag = Mat4<double>::identity();
  int other = region.center == 0 ? 1 : 0;
  sys.rows[other].diag = Mat4<double>::zero();  // singular block
  CHECK_THROWS_WITH_AS(eliminate(sys), doctest::Contains("lattice point"), numeric_error);
}

TEST_CASE("order invariance: permuted region gives the same residual forms") {
  CrystalConfig cfg = estc1(5e-4);
  double q4 = q40(qp) + 1.5e-6;
  Region a = build_region(1);
  Region b;
  b.d = 1;
  b.pts = a.pts;
  std::reverse(b.pts.begin(), b.pts.end());
  std::swap(b.pts[2], b.pts[7]);
  b.finalize();
  auto fa = solve_family(assemble<double>(a, cfg, qp, q4, {}));
  auto fb = solve_family(assemble<double>(b, cfg, qp, q4, {}));
  auto ga = generalized_eigen(fa.ud, fa.ue);
  auto gb = generalized_eigen(fb.ud, fb.ue);
  for (int j = 0; j < 4; ++j)
    CHECK(gb.lambda[j] == doctest::Approx(ga.lambda[j]).epsilon(1e-12));
}

TEST_CASE("relative_residual: eigenvector and mixed amplitudes") {
  Region region = build_region(1);
  auto sys = assemble<double>(region, estc1(5e-4), qp, q40(qp) + 1.5e-6, {});
  auto fam = solve_family(sys);
  auto ge = generalized_eigen(fam.ud, fam.ue);
  for (int j = 0; j < 4; ++j) {
    double r = relative_residual(fam.ud, fam.ue, ge.vectors[j]);
    CHECK(r == doctest::Approx(std::sqrt(std::max(ge.lambda[j], 0.0))).epsilon(1e-9));
  }
  // free field, mixed amplitude (c+ + c-)/sqrt(2) at q4 = q40
  auto sysf = assemble<double>(region, zero_crystal(0.1), qp, q40(qp), {});
  auto famf = solve_family(sysf);
  auto c = free_basis(qp);
  Vec4<double> mixed;
  for (int i = 0; i < 4; ++i) mixed[i] = cxd{1 / std::sqrt(2.0), 0} * (c[0][i] + c[2][i]);
  double expect = std::sqrt(4 * q40(qp) * q40(qp) / 2.0);
  CHECK(relative_residual(famf.ud, famf.ue, mixed) == doctest::Approx(expect).epsilon(1e-10));
  Vec4<double> zero;
  CHECK_THROWS_AS(relative_residual(famf.ud, famf.ue, zero), numeric_error);
}

TEST_CASE("extended-precision elimination matches and refines") {
  Region region = build_region(1);
  CrystalConfig cfg = estc1(5e-4);
  std::array<ddouble, 3> qd = {ddouble(0.0), ddouble(0.0), ddouble(0.02)};
  ddouble q4 = q40(qd) + ddouble(1.5e-6);
  auto sysd = assemble<ddouble>(region, cfg, qd, q4, {});
  auto famd = solve_family(sysd);
  CHECK(famd.refine_iterations >= 1);
  CHECK(to_double(famd.max_interior_defect) <= 1e-25);

  auto sys = assemble<double>(region, cfg, qp, to_double(q4), {});
  auto fam = solve_family(sys);
  double worst = 0;
  for (int i = 0; i < region.size(); ++i) worst = std::max(worst, max_abs(fam.s[i] - demote(famd.s[i])));
  CHECK(worst <= 1e-12);
}
