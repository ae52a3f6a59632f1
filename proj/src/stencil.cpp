#include "estc/stencil.hpp"

#include <algorithm>

namespace estc {

std::vector<LatticeIndex> enumerate_shifts(int g_max) {
  std::vector<LatticeIndex> out;
  for (int n1 = -g_max; n1 <= g_max; ++n1)
    for (int n2 = -g_max; n2 <= g_max; ++n2)
      for (int n3 = -g_max; n3 <= g_max; ++n3)
        for (int n4 = -g_max; n4 <= g_max; ++n4) {
          LatticeIndex s{n1, n2, n3, n4};
          if (even_sum(s) && g4d(s) <= g_max) out.push_back(s);
        }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<LatticeIndex>& unit_shifts() {
  static const std::vector<LatticeIndex> u = [] {
    std::vector<LatticeIndex> v;
    for (const auto& e : shift_table()) v.push_back(e.s);
    return v;
  }();
  return u;
}

const std::vector<LatticeIndex>& g2_shifts() {
  static const std::vector<LatticeIndex> g2 = [] {
    std::vector<LatticeIndex> v;
    for (const auto& s : enumerate_shifts(2))
      if (g4d(s) == 2) v.push_back(s);
    return v;
  }();
  return g2;
}

}  // namespace estc
