#include "estc/spinor.hpp"

namespace estc {

namespace {

Mat4<double> from_rows(std::initializer_list<std::initializer_list<cxd>> rows) {
  Mat4<double> m;
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const auto& e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

const cxd O{0, 0}, I1{1, 0}, Im{0, 1};

DiracMatrices build_dirac() {
  DiracMatrices d;
  d.U = Mat4<double>::identity();
  d.alpha1 = from_rows({{O, O, O, I1}, {O, O, I1, O}, {O, I1, O, O}, {I1, O, O, O}});
  d.alpha2 = from_rows({{O, O, O, -Im}, {O, O, Im, O}, {O, -Im, O, O}, {Im, O, O, O}});
  d.alpha3 = from_rows({{O, O, I1, O}, {O, O, O, -I1}, {I1, O, O, O}, {O, -I1, O, O}});
  d.alpha4 = from_rows({{I1, O, O, O}, {O, I1, O, O}, {O, O, -I1, O}, {O, O, O, -I1}});
  d.Sigma1 = from_rows({{O, I1, O, O}, {I1, O, O, O}, {O, O, O, I1}, {O, O, I1, O}});
  d.Sigma2 = from_rows({{O, -Im, O, O}, {Im, O, O, O}, {O, O, O, -Im}, {O, O, Im, O}});
  d.Sigma3 = from_rows({{I1, O, O, O}, {O, -I1, O, O}, {O, O, I1, O}, {O, O, O, -I1}});
  return d;
}

std::array<Mat4<double>, 16> build_basis() {
  const DiracMatrices& d = dirac_matrices();
  std::array<Mat4<double>, 16> b;
  b[0] = d.U;
  b[1] = d.Sigma3;
  b[2] = d.Sigma1;
  b[3] = d.Sigma2;
  b[4] = d.alpha4;
  b[5] = d.alpha4 * d.Sigma3;
  b[6] = d.alpha4 * d.Sigma1;
  b[7] = d.alpha4 * d.Sigma2;
  // alpha5: off-diagonal identity blocks (-i alpha1 alpha2 alpha3)
  b[8] = from_rows({{O, O, I1, O}, {O, O, O, I1}, {I1, O, O, O}, {O, I1, O, O}});
  b[9] = d.alpha3;
  b[10] = d.alpha1;
  b[11] = d.alpha2;
  b[12] = Im * (d.alpha4 * d.alpha3);
  b[13] = Im * (d.alpha4 * d.alpha1);
  b[14] = Im * (d.alpha4 * d.alpha2);
  b[15] = d.alpha1 * d.alpha2 * d.alpha3 * d.alpha4;
  return b;
}

std::array<std::string, 16> build_names() {
  return {"U",       "Sigma3",       "Sigma1",       "Sigma2",
          "alpha4",  "alpha4Sigma3", "alpha4Sigma1", "alpha4Sigma2",
          "alpha5",  "alpha3",       "alpha1",       "alpha2",
          "i*alpha4alpha3", "i*alpha4alpha1", "i*alpha4alpha2", "alpha1234"};
}

}  // namespace

const DiracMatrices& dirac_matrices() {
  static const DiracMatrices d = build_dirac();
  return d;
}

const std::array<Mat4<double>, 16>& dirac_basis() {
  static const std::array<Mat4<double>, 16> b = build_basis();
  return b;
}

const std::array<std::string, 16>& dirac_basis_names() {
  static const std::array<std::string, 16> n = build_names();
  return n;
}

DiracSet dirac_set_decompose(const Mat4<double>& m) {
  const auto& b = dirac_basis();
  DiracSet d;
  for (int i = 0; i < 16; ++i) {
    // basis elements are Hermitian, so tr(B_i^dagger M) = tr(B_i M)
    cxd t{0, 0};
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 4; ++k) t += b[i](r, k) * m(k, r);
    d[i] = {t.re / 4.0, t.im / 4.0};
  }
  return d;
}

Mat4<double> dirac_set_compose(const DiracSet& d) {
  const auto& b = dirac_basis();
  Mat4<double> m;
  for (int i = 0; i < 16; ++i) m += d[i] * b[i];
  return m;
}

}  // namespace estc
