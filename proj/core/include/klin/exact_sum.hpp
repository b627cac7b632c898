#ifndef KLIN_EXACT_SUM_HPP
#define KLIN_EXACT_SUM_HPP

#include <cmath>
#include <vector>

namespace klin {

/// Error-free accumulation of doubles (Shewchuk's growing expansion).
///
/// Every double is a dyadic rational, so the expansion of non-overlapping
/// partials represents the exact rational sum of everything added so far;
/// value() collapses it with error below one ulp of the result.
class ExactSum {
public:
  void add(double x) {
    size_t used = 0;
    for (size_t i = 0; i < partials_.size(); ++i) {
      double y = partials_[i];
      if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[used++] = lo;
      x = hi;
    }
    partials_.resize(used);
    partials_.push_back(x);
  }

  double value() const {
    double s = 0.0;
    for (double p : partials_) s += p;
    return s;
  }

  void reset() { partials_.clear(); }

private:
  std::vector<double> partials_;
};

}  // namespace klin

#endif
