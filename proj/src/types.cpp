#include "grkhs/types.hpp"

#include <sstream>

namespace grkhs {

std::string ValidationReport::summary() const {
  if (passed()) return "pass";
  std::ostringstream out;
  out << violations.size() << " violation(s):";
  for (const auto& v : violations) {
    out << "\n  [" << v.rule << "] " << v.witness;
    if (v.deviation > 0.0) out << " (deviation " << v.deviation << ")";
  }
  return out.str();
}

}  // namespace grkhs
