#ifndef KLIN_DISTANCE_HPP
#define KLIN_DISTANCE_HPP

#include <utility>

#include "klin/distribution.hpp"
#include "klin/oracle.hpp"
#include "klin/parity.hpp"

namespace klin {

enum class ClassMode { ExactK, AtMostK };

/// Exact Pr_d[f(x) != g(x)], by full enumeration of the cube (n <= 24) or,
/// for table distributions, of the points with positive mass. The result is
/// exact for uniform/explicit/mixture and within 1e-12 for product.
double exact_distance(FunctionOracle& f, FunctionOracle& g, const DistributionSpec& d);

/// Minimum exact distance from f to the parities of weight exactly k
/// (ExactK) or at most k (AtMostK), plus an argmin support. Requires n <= 20
/// and an enumerable candidate class.
std::pair<double, ParitySupport> distance_to_class(FunctionOracle& f, const DistributionSpec& d,
                                                   int k, ClassMode mode);

}  // namespace klin

#endif
