#pragma once

// Conformance and analytic validation suites behind `estc validate`:
// Clifford/basis identities, free-space projector relations, the
// closed-form zero-model values, crystal amplitude structure, and the
// explicit first/second-order coupling reference tables (an independent
// route against the constructive formulas in stencil.hpp).

#include <cstdint>
#include <string>
#include <vector>

#include "estc/crystal.hpp"
#include "estc/spinor.hpp"
#include "estc/stencil.hpp"

namespace estc {

struct CheckResult {
  std::string name;
  bool pass = false;
  double deviation = 0.0;  // measured worst deviation
  double tolerance = 0.0;
  std::string detail;
};

std::vector<CheckResult> validate_spinor_checks(uint64_t seed = 12345);
std::vector<CheckResult> validate_free_checks(const std::array<double, 3>& q);
std::vector<CheckResult> validate_crystal_checks(const CrystalConfig& cfg);
std::vector<CheckResult> validate_appendix_checks(uint64_t seed = 67890);
std::vector<CheckResult> validate_zero_field_checks(const std::array<double, 3>& q);

// everything above, in order
std::vector<CheckResult> validate_report(const CrystalConfig& cfg, const std::array<double, 3>& q,
                                         uint64_t seed = 2026);

// --- appendix oracle internals (also used by unit tests) -------------------

// explicit reference table of the 12 first-order Dirac-set templates;
// w, w4 are the row values, positions follow dirac_basis() ordering
DiracSet appendix_n1_dirac_set(const LatticeIndex& s, const CrystalConfig& cfg,
                               const std::array<double, 3>& w, double w4, double omega);

// explicit reference table of the 56 second-order coefficients, in list order
std::vector<cxd> appendix_n2_list(const CrystalConfig& cfg);

// multiset comparison: worst pairwise deviation after sorting, or +inf on
// size mismatch
double n2_multiset_deviation(std::vector<cxd> ours, std::vector<cxd> oracle);

// random crystal with transverse waves (for conformance checks)
CrystalConfig random_transverse_crystal(uint64_t seed, double scale = 1.0);

}  // namespace estc
