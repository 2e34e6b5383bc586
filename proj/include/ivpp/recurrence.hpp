#pragma once

#include <string>

#include "ivpp/algebra/mpoly.hpp"

namespace ivpp {

/// F(x, X) = 0 generating a recurrence x -> X of fixed period.
struct RecurrenceRelation {
  MPoly F;
  int period = 0;
  std::string source;
};

}  // namespace ivpp
