#pragma once

// Output writers: comma-separated scan tables and field-map grids, the
// key=value summary document, and the S(n)/U_E/U_D family dump.  Every
// file embeds the resolved run configuration; no timestamps, so reruns
// are byte-identical.

#include <ostream>
#include <string>
#include <vector>

#include "estc/observables.hpp"
#include "estc/pipeline.hpp"
#include "estc/spectral.hpp"

namespace estc {

template <class R>
std::string fmt_real(const R& v) {
  return real_traits<R>::to_string(v);
}

template <class R>
void write_scan_csv(std::ostream& os, const std::string& echo,
                    const std::vector<SpectralPoint<R>>& pts) {
  os << "# estc scan\n# config = " << echo << "\n";
  os << "xi,R1,R2,R3,R4\n";
  bool any_err = false;
  for (const auto& p : pts) {
    os << fmt_real(p.xi);
    for (int j = 0; j < 4; ++j) os << "," << (p.error.empty() ? fmt_real(p.r[j]) : "nan");
    os << "\n";
    if (!p.error.empty()) any_err = true;
  }
  if (any_err) {
    os << "# errors:\n";
    for (const auto& p : pts)
      if (!p.error.empty()) os << "# xi = " << fmt_real(p.xi) << ": " << p.error << "\n";
  }
}

template <class R>
void write_line_summary(std::ostream& os, const LineResult<R>& lr) {
  const auto& ln = lr.line;
  os << "line = " << ln.label << "\n";
  os << "branch = " << ln.branch + 1 << "\n";
  os << "xi0 = " << fmt_real(ln.xi0) << "\n";
  os << "R0 = " << fmt_real(ln.r0) << "\n";
  os << "beta0 = " << fmt_real(ln.beta0) << "\n";
  os << "delta_xi = " << fmt_real(ln.delta_xi) << "\n";
  os << "R_av = " << fmt_real(ln.r_av) << "\n";
  os << "fit_max_rel_dev = " << fmt_real(ln.fit_max_rel_dev) << "\n";
  os << "multiplicity = " << ln.multiplicity << "\n";
  os << "trace_rho1 = " << fmt_real(ln.trace_rho1) << "\n";
  for (int j = 0; j < 4; ++j) os << "lambda" << j + 1 << " = " << fmt_real(lr.lambda[j]) << "\n";
  DiracSet ds = dirac_set_decompose(demote(ln.rho1));
  os << "dirac_set_rho1 =";
  for (int k = 0; k < 16; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.12g", ds[k].re);
    os << buf;
  }
  os << "\n";
}

template <class R>
void write_observables(std::ostream& os, const LineResult<R>& lr) {
  os << "mean_H = " << fmt_real(lr.obs.h) << "\n";
  for (int k = 0; k < 3; ++k) os << "mean_P" << k + 1 << " = " << fmt_real(lr.obs.p[k]) << "\n";
  for (int k = 0; k < 3; ++k)
    os << "mean_alpha" << k + 1 << " = " << fmt_real(lr.obs.alpha[k]) << "\n";
  for (int k = 0; k < 3; ++k)
    os << "mean_Sigma" << k + 1 << " = " << fmt_real(lr.obs.sigma[k]) << "\n";
  os << "max_imag = " << fmt_real(lr.obs.max_imag) << "\n";
  for (int j = 0; j < 4; ++j) {
    if (!lr.have_obs[j]) {
      os << "dressed_c" << j + 1 << " = annihilated\n";
      continue;
    }
    os << "dressed_c" << j + 1 << "_Sigma =";
    for (int k = 0; k < 3; ++k) os << " " << fmt_real(lr.obs_j[j].sigma[k]);
    os << "\n";
  }
}

template <class R>
void write_summary(std::ostream& os, const std::string& echo,
                   const std::vector<LineResult<R>>& lines) {
  os << "# estc summary\n# config = " << echo << "\n";
  os << "lines = " << lines.size() << "\n";
  for (const auto& lr : lines) {
    os << "\n";
    write_line_summary(os, lr);
    write_observables(os, lr);
  }
  if (lines.size() == 2) {
    os << "\nsplitting = " << fmt_real(lines[1].line.xi0 - lines[0].line.xi0) << "\n";
  }
}

void write_fieldmap_csv(std::ostream& os, const std::string& echo, const FieldMap& fm);

// one record per lattice point: n1 n2 n3 n4 then 16 complex entries of S(n)
// as re/im pairs (32 numbers); U_E and U_D appended as labeled records
template <class R>
void write_family_dump(std::ostream& os, const std::string& echo, const Region& region,
                       const std::vector<Mat4<R>>& s, const Mat4<R>& ue, const Mat4<R>& ud) {
  os << "# estc family dump\n# config = " << echo << "\n";
  os << "# record: n1 n2 n3 n4 then Re/Im of the 16 entries of S(n), row-major\n";
  auto put_mat = [&os](const Mat4<R>& m) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        os << " " << fmt_real(m(i, j).re) << " " << fmt_real(m(i, j).im);
    os << "\n";
  };
  for (int i = 0; i < region.size(); ++i) {
    const auto& n = region.pts[i];
    os << n[0] << " " << n[1] << " " << n[2] << " " << n[3];
    put_mat(s[i]);
  }
  os << "UE";
  put_mat(ue);
  os << "UD";
  put_mat(ud);
}

}  // namespace estc
