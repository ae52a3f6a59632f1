#include "estc/text_io.hpp"

#include <cstdio>

namespace estc {

void write_fieldmap_csv(std::ostream& os, const std::string& echo, const FieldMap& fm) {
  auto f = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "# estc fieldmap\n# config = " << echo << "\n";
  os << "# operator = " << fm.op_name << "\n";
  os << "# axes = X" << fm.spec.axis1 + 1 << ",X" << fm.spec.axis2 + 1 << "\n";
  os << "# offsets = " << f(fm.spec.offsets[0]) << "," << f(fm.spec.offsets[1]) << ","
     << f(fm.spec.offsets[2]) << "," << f(fm.spec.offsets[3]) << "\n";
  os << "# max_imag = " << f(fm.max_imag) << "\n";
  // header row: the axis1 coordinates
  os << "X" << fm.spec.axis2 + 1 << "\\X" << fm.spec.axis1 + 1;
  for (double x : fm.x1) os << "," << f(x);
  os << "\n";
  for (size_t i2 = 0; i2 < fm.values.size(); ++i2) {
    os << f(fm.x2[i2]);
    for (double v : fm.values[i2]) os << "," << f(v);
    os << "\n";
  }
}

}  // namespace estc
