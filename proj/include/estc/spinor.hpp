#pragma once

// Bispinor and 4x4 complex matrix algebra over a generic real scalar
// (double or ddouble): Dirac matrices, the 16-element Hermitian matrix
// basis with its Dirac-set encoding, adjugates, and the 4x4 Hermitian
// generalized eigenproblem solved by whitening + complex Jacobi.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "estc/dd.hpp"

namespace estc {

template <class R>
struct Cx {
  R re{}, im{};
  constexpr Cx() = default;
  constexpr Cx(R r) : re(r), im(R(0)) {}
  constexpr Cx(R r, R i) : re(r), im(i) {}
};

template <class R> inline Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R> inline Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R> inline Cx<R> operator-(const Cx<R>& a) { return {-a.re, -a.im}; }
template <class R> inline Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R> inline Cx<R> operator*(const R& s, const Cx<R>& a) { return {s * a.re, s * a.im}; }
template <class R> inline Cx<R> operator*(const Cx<R>& a, const R& s) { return {a.re * s, a.im * s}; }
template <class R> inline Cx<R> conj(const Cx<R>& a) { return {a.re, -a.im}; }
template <class R> inline R norm2(const Cx<R>& a) { return a.re * a.re + a.im * a.im; }
template <class R> inline R abs(const Cx<R>& a) {
  return sqrt(norm2(a));
}
template <class R> inline Cx<R> operator/(const Cx<R>& a, const R& s) { return {a.re / s, a.im / s}; }
template <class R> inline Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  R d = norm2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class R> inline Cx<R>& operator+=(Cx<R>& a, const Cx<R>& b) { a = a + b; return a; }
template <class R> inline Cx<R>& operator-=(Cx<R>& a, const Cx<R>& b) { a = a - b; return a; }
template <class R> inline Cx<R>& operator*=(Cx<R>& a, const Cx<R>& b) { a = a * b; return a; }

using cxd = Cx<double>;

template <class R>
struct Vec4 {
  std::array<Cx<R>, 4> v{};
  Cx<R>& operator[](int i) { return v[i]; }
  const Cx<R>& operator[](int i) const { return v[i]; }
};

template <class R>
struct Mat4 {
  std::array<Cx<R>, 16> a{};
  Cx<R>& operator()(int i, int j) { return a[4 * i + j]; }
  const Cx<R>& operator()(int i, int j) const { return a[4 * i + j]; }

  static Mat4 zero() { return Mat4{}; }
  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = Cx<R>(R(1));
    return m;
  }
};

template <class R> inline Mat4<R> operator+(const Mat4<R>& x, const Mat4<R>& y) {
  Mat4<R> r;
  for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}
template <class R> inline Mat4<R> operator-(const Mat4<R>& x, const Mat4<R>& y) {
  Mat4<R> r;
  for (int i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}
template <class R> inline Mat4<R> operator-(const Mat4<R>& x) {
  Mat4<R> r;
  for (int i = 0; i < 16; ++i) r.a[i] = -x.a[i];
  return r;
}
template <class R> inline Mat4<R> operator*(const Cx<R>& s, const Mat4<R>& x) {
  Mat4<R> r;
  for (int i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
  return r;
}
template <class R> inline Mat4<R> operator*(const R& s, const Mat4<R>& x) {
  Mat4<R> r;
  for (int i = 0; i < 16; ++i) r.a[i] = s * x.a[i];
  return r;
}
template <class R> inline Mat4<R>& operator+=(Mat4<R>& x, const Mat4<R>& y) { x = x + y; return x; }
template <class R> inline Mat4<R>& operator-=(Mat4<R>& x, const Mat4<R>& y) { x = x - y; return x; }

template <class R>
inline Mat4<R> operator*(const Mat4<R>& x, const Mat4<R>& y) {
  Mat4<R> r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      Cx<R> xv = x(i, k);
      if (xv.re == R(0) && xv.im == R(0)) continue;
      for (int j = 0; j < 4; ++j) r(i, j) += xv * y(k, j);
    }
  return r;
}

template <class R>
inline Vec4<R> operator*(const Mat4<R>& x, const Vec4<R>& c) {
  Vec4<R> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += x(i, j) * c[j];
  return r;
}

template <class R> inline Vec4<R> operator+(const Vec4<R>& a, const Vec4<R>& b) {
  Vec4<R> r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
  return r;
}
template <class R> inline Vec4<R> operator-(const Vec4<R>& a, const Vec4<R>& b) {
  Vec4<R> r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
  return r;
}
template <class R> inline Vec4<R> operator*(const Cx<R>& s, const Vec4<R>& a) {
  Vec4<R> r;
  for (int i = 0; i < 4; ++i) r[i] = s * a[i];
  return r;
}

template <class R> inline Mat4<R> dagger(const Mat4<R>& x) {
  Mat4<R> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = conj(x(j, i));
  return r;
}

template <class R> inline Cx<R> trace(const Mat4<R>& x) {
  return x(0, 0) + x(1, 1) + x(2, 2) + x(3, 3);
}

// c† M c
template <class R> inline Cx<R> quad_form(const Mat4<R>& m, const Vec4<R>& c) {
  Cx<R> s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += conj(c[i]) * m(i, j) * c[j];
  return s;
}

template <class R> inline Cx<R> dot(const Vec4<R>& a, const Vec4<R>& b) {
  Cx<R> s;
  for (int i = 0; i < 4; ++i) s += conj(a[i]) * b[i];
  return s;
}

template <class R> inline Mat4<R> outer(const Vec4<R>& a, const Vec4<R>& b) {
  Mat4<R> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = a[i] * conj(b[j]);
  return r;
}

template <class R> inline R max_abs(const Mat4<R>& x) {
  R m(0);
  for (const auto& e : x.a) m = max(m, max(fabs(e.re), fabs(e.im)));
  return m;
}
inline double max_abs(const Mat4<double>& x) {
  double m = 0;
  for (const auto& e : x.a) m = std::max(m, std::max(std::fabs(e.re), std::fabs(e.im)));
  return m;
}

template <class R> inline R norm2(const Vec4<R>& c) {
  R s(0);
  for (int i = 0; i < 4; ++i) s += norm2(c[i]);
  return s;
}

template <class R> inline R frobenius2(const Mat4<R>& x) {
  R s(0);
  for (const auto& e : x.a) s += norm2(e);
  return s;
}

// ---------------------------------------------------------------------------
// Dirac matrices, standard representation: alpha_k off-diagonal Pauli blocks,
// alpha4 = diag(1,1,-1,-1), Sigma_k = diag(sigma_k, sigma_k).
// ---------------------------------------------------------------------------

struct DiracMatrices {
  Mat4<double> U, alpha1, alpha2, alpha3, alpha4, Sigma1, Sigma2, Sigma3;
};

const DiracMatrices& dirac_matrices();

// The 16-element orthonormal Hermitian basis (Dirac set positions).
// Position table (1-based, as reported in summaries):
//   1: U           2: Sigma3      3: Sigma1      4: Sigma2
//   5: alpha4      6: alpha4*Sigma3  7: alpha4*Sigma1  8: alpha4*Sigma2
//   9: alpha5 (offdiag I blocks)
//  10: alpha3     11: alpha1     12: alpha2
//  13: i*alpha4*alpha3  14: i*alpha4*alpha1  15: i*alpha4*alpha2
//  16: alpha1*alpha2*alpha3*alpha4
const std::array<Mat4<double>, 16>& dirac_basis();
const std::array<std::string, 16>& dirac_basis_names();

template <class R>
inline Mat4<R> promote(const Mat4<double>& m) {
  Mat4<R> r;
  for (int i = 0; i < 16; ++i)
    r.a[i] = Cx<R>(real_traits<R>::from_double(m.a[i].re), real_traits<R>::from_double(m.a[i].im));
  return r;
}
template <>
inline Mat4<double> promote<double>(const Mat4<double>& m) { return m; }

inline Mat4<double> demote(const Mat4<ddouble>& m) {
  Mat4<double> r;
  for (int i = 0; i < 16; ++i) r.a[i] = {m.a[i].re.hi, m.a[i].im.hi};
  return r;
}
inline Mat4<double> demote(const Mat4<double>& m) { return m; }

using DiracSet = std::array<cxd, 16>;

// d_i = tr(B_i M)/4 over the orthonormal basis above
DiracSet dirac_set_decompose(const Mat4<double>& m);
Mat4<double> dirac_set_compose(const DiracSet& d);

// ---------------------------------------------------------------------------
// adjugate: transpose of cofactors, M adj(M) = det(M) U.  Valid for singular M.
// ---------------------------------------------------------------------------

template <class R>
Cx<R> det3(const Mat4<R>& m, int r0, int r1, int r2, int c0, int c1, int c2) {
  return m(r0, c0) * (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) -
         m(r0, c1) * (m(r1, c0) * m(r2, c2) - m(r1, c2) * m(r2, c0)) +
         m(r0, c2) * (m(r1, c0) * m(r2, c1) - m(r1, c1) * m(r2, c0));
}

template <class R>
Mat4<R> adjugate(const Mat4<R>& m) {
  static const int idx[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  Mat4<R> adj;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int* r = idx[i];
      const int* c = idx[j];
      Cx<R> cof = det3(m, r[0], r[1], r[2], c[0], c[1], c[2]);
      if ((i + j) & 1) cof = -cof;
      adj(j, i) = cof;
    }
  return adj;
}

template <class R>
Cx<R> det4(const Mat4<R>& m) {
  static const int idx[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  Cx<R> d;
  for (int j = 0; j < 4; ++j) {
    Cx<R> cof = det3(m, 1, 2, 3, idx[j][0], idx[j][1], idx[j][2]);
    if (j & 1) cof = -cof;
    d += m(0, j) * cof;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Cholesky, triangular solves, Hermitian Jacobi eigensolver
// ---------------------------------------------------------------------------

// A = L L^dagger with L lower triangular; returns false if a pivot is <= 0.
template <class R>
bool cholesky(const Mat4<R>& a, Mat4<R>& l) {
  l = Mat4<R>::zero();
  for (int j = 0; j < 4; ++j) {
    R d = a(j, j).re;
    for (int k = 0; k < j; ++k) d -= norm2(l(j, k));
    if (!(d > R(0))) return false;
    R dj = sqrt(d);
    l(j, j) = Cx<R>(dj);
    for (int i = j + 1; i < 4; ++i) {
      Cx<R> s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * conj(l(j, k));
      l(i, j) = s / dj;
    }
  }
  return true;
}

// solve L x = b (forward) for each column of B, L lower triangular
template <class R>
Mat4<R> solve_lower(const Mat4<R>& l, const Mat4<R>& b) {
  Mat4<R> x;
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 4; ++i) {
      Cx<R> s = b(i, c);
      for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i);
    }
  return x;
}

// solve L^dagger x = b (backward)
template <class R>
Vec4<R> solve_upper_dagger(const Mat4<R>& l, const Vec4<R>& b) {
  Vec4<R> x;
  for (int i = 3; i >= 0; --i) {
    Cx<R> s = b[i];
    for (int k = i + 1; k < 4; ++k) s -= conj(l(k, i)) * x[k];
    x[i] = s / Cx<R>(l(i, i).re);
  }
  return x;
}

// X L^dagger = B  =>  X = B (L^dagger)^-1, solved row-wise
template <class R>
Mat4<R> solve_right_upper_dagger(const Mat4<R>& l, const Mat4<R>& b) {
  Mat4<R> x;
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 4; ++j) {
      Cx<R> s = b(r, j);
      for (int k = 0; k < j; ++k) s -= x(r, k) * conj(l(j, k));
      x(r, j) = s / Cx<R>(l(j, j).re);
    }
  return x;
}

// Cyclic complex Jacobi for Hermitian 4x4.  Eigenvalues ascending in w,
// eigenvectors as columns of v.
template <class R>
void hermitian_eigen(const Mat4<R>& a_in, std::array<R, 4>& w, Mat4<R>& v) {
  Mat4<R> a = a_in;
  // enforce Hermiticity
  for (int i = 0; i < 4; ++i) {
    a(i, i) = Cx<R>(a(i, i).re);
    for (int j = i + 1; j < 4; ++j) {
      Cx<R> m = Cx<R>(R(0.5)) * (a(i, j) + conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = conj(m);
    }
  }
  v = Mat4<R>::identity();
  R scale(0);
  for (int i = 0; i < 4; ++i) scale = max(scale, fabs(a(i, i).re));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) scale = max(scale, sqrt(norm2(a(i, j))));
  if (scale == R(0)) scale = R(1);
  const R tol = real_traits<R>::epsilon() * scale;
  for (int sweep = 0; sweep < 60; ++sweep) {
    R off(0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off = max(off, sqrt(norm2(a(i, j))));
    if (off <= tol) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        R apq = sqrt(norm2(a(p, q)));
        if (apq <= tol * R(1e-2)) continue;
        // phase of a_pq
        Cx<R> phase = a(p, q) / apq;
        R tau = (a(q, q).re - a(p, p).re) / (R(2) * apq);
        R t;
        if (tau >= R(0)) t = R(1) / (tau + sqrt(R(1) + tau * tau));
        else t = R(-1) / (-tau + sqrt(R(1) + tau * tau));
        R c = R(1) / sqrt(R(1) + t * t);
        R s = t * c;
        // G: rows/cols p,q; G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase), G(q,q)=c
        // apply A <- G^dagger A G, V <- V G
        Cx<R> gpq = s * phase;
        Cx<R> gqp = -(s * conj(phase));
        for (int k = 0; k < 4; ++k) {
          Cx<R> akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * Cx<R>(c) + akq * gqp;
          a(k, q) = akp * gpq + akq * Cx<R>(c);
        }
        for (int k = 0; k < 4; ++k) {
          Cx<R> apk = a(p, k), aqk = a(q, k);
          a(p, k) = Cx<R>(c) * apk + conj(gqp) * aqk;
          a(q, k) = conj(gpq) * apk + Cx<R>(c) * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          Cx<R> vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * Cx<R>(c) + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * Cx<R>(c);
        }
      }
  }
  // sort ascending
  std::array<int, 4> ord = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (a(ord[j], ord[j]).re < a(ord[i], ord[i]).re) std::swap(ord[i], ord[j]);
  Mat4<R> vs;
  for (int i = 0; i < 4; ++i) {
    w[i] = a(ord[i], ord[i]).re;
    for (int k = 0; k < 4; ++k) vs(k, i) = v(k, ord[i]);
  }
  v = vs;
}

// ---------------------------------------------------------------------------
// Generalized eigenproblem U_D c = lambda U_E c for Hermitian U_D, U_E > 0
// ---------------------------------------------------------------------------

template <class R>
struct GeneralizedEigen {
  std::array<R, 4> lambda{};
  std::array<Vec4<R>, 4> vectors{};   // normalized c^dagger c = 1
  std::array<int, 4> multiplicity{};  // size of the degenerate group each root belongs to
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Multiplicity grouping threshold |l_{i+1}-l_i| <= thresh_scale*max(1, l4),
// sized well above each scalar type's whitening noise floor.
template <class R> inline R multiplicity_threshold();
template <> inline double multiplicity_threshold<double>() { return 1e-8; }
template <> inline ddouble multiplicity_threshold<ddouble>() { return ddouble(1e-24); }

template <class R>
GeneralizedEigen<R> generalized_eigen(const Mat4<R>& ud, const Mat4<R>& ue) {
  Mat4<R> l;
  if (!cholesky(ue, l)) {
    std::array<R, 4> ew;
    Mat4<R> ev;
    hermitian_eigen(ue, ew, ev);
    throw numeric_error("U_E is not positive definite; smallest eigenvalue = " +
                        real_traits<R>::to_string(ew[0]));
  }
  Mat4<R> y = solve_lower(l, ud);                 // y = L^-1 U_D
  Mat4<R> aw = solve_right_upper_dagger(l, y);    // aw = y (L^dagger)^-1
  std::array<R, 4> w;
  Mat4<R> v;
  hermitian_eigen(aw, w, v);
  GeneralizedEigen<R> out;
  out.lambda = w;
  for (int j = 0; j < 4; ++j) {
    Vec4<R> col;
    for (int i = 0; i < 4; ++i) col[i] = v(i, j);
    Vec4<R> c = solve_upper_dagger(l, col);
    R n = sqrt(norm2(c));
    for (int i = 0; i < 4; ++i) c[i] = c[i] / n;
    out.vectors[j] = c;
  }
  R thr = multiplicity_threshold<R>() * max(R(1), fabs(w[3]));
  int g = 0;
  while (g < 4) {
    int h = g;
    while (h + 1 < 4 && fabs(w[h + 1] - w[h]) <= thr) ++h;
    for (int k = g; k <= h; ++k) out.multiplicity[k] = h - g + 1;
    g = h + 1;
  }
  return out;
}

// Projector onto the generalized eigenspace of root lambda_j.
// Twofold roots: rho = U - 2 (U_D - l U_E)/tr(U_D - l U_E);
// simple roots: rho = adj(D)/tr(adj(D)), D = U_D - l U_E.
template <class R>
Mat4<R> projector_from_root(const Mat4<R>& ud, const Mat4<R>& ue, const R& lam, int multiplicity) {
  Mat4<R> d = ud - lam * ue;
  Mat4<R> num;
  if (multiplicity == 2) {
    num = d + d;  // 2 D
  } else if (multiplicity == 1) {
    num = adjugate(d);
  } else {
    throw numeric_error("projector_from_root: unsupported multiplicity " +
                        std::to_string(multiplicity));
  }
  Cx<R> tr = (multiplicity == 2) ? trace(d) * Cx<R>(R(0.5)) : trace(num);
  R scale = max_abs(num);
  if (!(sqrt(norm2(tr)) > R(1e-300) * max(scale, R(1e-300)))) {
    throw numeric_error("projector_from_root: degenerate pencil, vanishing trace denominator");
  }
  Mat4<R> rho;
  if (multiplicity == 2) {
    rho = Mat4<R>::identity() - (Cx<R>(R(1)) / tr) * d;
  } else {
    rho = (Cx<R>(R(1)) / tr) * num;
  }
  return rho;
}

}  // namespace estc
