#pragma once

#include <complex>
#include <vector>

#include "ivpp/catalog.hpp"

namespace ivpp {

struct IntegrableMap::Compiled {
  std::vector<CompiledPoly> num, den;
  std::vector<CompiledPoly> inv_num, inv_den;
  std::complex<double> alpha, beta, gamma;  // Euler top only
};

}  // namespace ivpp
