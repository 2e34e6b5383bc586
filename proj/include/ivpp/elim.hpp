#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ivpp/algebra/mpoly.hpp"
#include "ivpp/catalog.hpp"

namespace ivpp {

/// Draws `count` assignments of every variable at true transitions
/// (points and their images) on the variety.
using TransitionSampler = std::function<std::vector<Assignment>(int count, std::uint64_t seed)>;

struct EliminationProblem {
  std::vector<MPoly> relations;
  std::vector<std::string> eliminate;  // at most two, eliminated in order
  std::vector<std::string> keep;
  TransitionSampler sampler;           // optional; without it no filtering
};

/// Iterated Sylvester resultants in the eliminate variables. A variable
/// appearing in a single remaining polynomial is removed by taking its
/// content in that variable. Results are split by contents and square-free
/// parts; with a sampler, a factor is kept iff it vanishes (<= 1e-8
/// relative) on 8/8 sampled transitions. Returned factors are primitive.
///
/// Throws EliminationError when every resultant vanishes identically in
/// both orders or when no factor survives filtering.
std::vector<MPoly> eliminate(const EliminationProblem& prob, std::uint64_t seed = 1);

/// Splits p into coprime pieces using contents in each variable and
/// square-free decomposition. Not a full factorization.
std::vector<MPoly> split_factors(const MPoly& p);

/// Image coordinate names: x -> X, x1 -> X1.
std::string image_name(const std::string& coord);

/// Cleared relation X_j * den_j - num_j for coordinate j of the map.
MPoly map_relation(const IntegrableMap& m, std::size_t j);

/// The recurrence problem for coordinate `target` of map m at period n:
/// relations {map_relation(target), composed generators}, eliminating the
/// catalog's elimination variables, with an on-variety transition sampler.
EliminationProblem recurrence_problem(const IntegrableMap& m, int period,
                                      const std::string& target);

/// Coordinates that survive elimination for (map, period), in map order.
std::vector<std::string> reduced_coordinates(const IntegrableMap& m, int period);

/// Relative residual |p(at)| / (1 + sum |c||mono|).
double relative_residual(const MPoly& p, const Assignment& at);

}  // namespace ivpp
