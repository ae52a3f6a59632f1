#include "estc/spectral.hpp"

#include <cmath>

namespace estc {

DoubletClassification classify_doublet(const std::vector<double>& sigma3_means) {
  DoubletClassification out;
  if (sigma3_means.size() == 1) {
    out.labels = {"single"};
    return out;
  }
  if (sigma3_means.size() != 2) {
    out.ok = false;
    out.diagnostic = "classify_doublet: expected 1 or 2 lines, got " +
                     std::to_string(sigma3_means.size());
    return out;
  }
  double sa = sigma3_means[0], sb = sigma3_means[1];
  if (!(sa * sb < 0.0)) {
    out.ok = false;
    out.labels = {"?", "?"};
    out.diagnostic = "classification-failed: <Sigma3> means are not of opposite sign (" +
                     std::to_string(sa) + ", " + std::to_string(sb) + ")";
    return out;
  }
  out.labels = {sa > 0 ? "a" : "b", sb > 0 ? "a" : "b"};
  return out;
}

}  // namespace estc
