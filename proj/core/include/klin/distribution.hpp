#ifndef KLIN_DISTRIBUTION_HPP
#define KLIN_DISTRIBUTION_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "klin/bitvector.hpp"
#include "klin/rng.hpp"

namespace klin {

/// A sampling oracle over {0,1}^n.
///
/// Four variants: uniform, per-coordinate product, an explicit probability
/// table (unlisted points have mass 0), and a point-mass mixture. Explicit
/// and mixture weights must be nonnegative and sum to 1 within 1e-12.
class DistributionSpec {
public:
  enum class Kind { Uniform, Product, Explicit, Mixture };

  static DistributionSpec uniform(int n);
  static DistributionSpec product(int n, double p);
  static DistributionSpec product(int n, std::vector<double> ps);
  static DistributionSpec explicit_table(int n, std::vector<std::pair<BitVector, double>> pts);
  static DistributionSpec mixture(int n, std::vector<std::pair<BitVector, double>> pts);

  // Explicit-distribution file: UTF-8 lines "<bitstring> <probability>".
  // The listed masses must sum to 1 within 1e-9; they are renormalized by
  // their exact sum on load.
  static DistributionSpec load_explicit(std::istream& in, int expected_n = -1);
  static DistributionSpec load_explicit_file(const std::string& path, int expected_n = -1);

  Kind kind() const { return kind_; }
  int n() const { return n_; }

  BitVector sample(Rng& rng) const;

  // Point+weight list; valid for Explicit and Mixture only.
  const std::vector<std::pair<BitVector, double>>& points() const;
  // Per-coordinate one-probabilities; valid for Product only.
  const std::vector<double>& product_ps() const;

  double mass(const BitVector& x) const;

private:
  DistributionSpec(Kind k, int n) : kind_(k), n_(n) {}
  void finish_table();

  Kind kind_;
  int n_;
  std::vector<double> ps_;
  std::vector<std::pair<BitVector, double>> pts_;
  std::vector<double> cum_;  // cumulative weights for table sampling
};

const char* to_string(DistributionSpec::Kind k);

}  // namespace klin

#endif
