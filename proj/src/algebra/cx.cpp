#include "ivpp/algebra/cx.hpp"

#include <algorithm>
#include <ostream>

namespace ivpp {

std::ostream& operator<<(std::ostream& os, const Cx& z) {
  return os << '(' << z.re() << (z.im() < 0 ? "-" : "+") << std::abs(z.im()) << "i)";
}

double relative_distance(const PointC& a, const PointC& b) {
  if (a.size() != b.size()) throw ArityError("relative_distance: dimension mismatch");
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    worst = std::max(worst, (a[j] - b[j]).abs() / (1.0 + a[j].abs()));
  return worst;
}

}  // namespace ivpp
