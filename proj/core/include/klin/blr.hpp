#ifndef KLIN_BLR_HPP
#define KLIN_BLR_HPP

#include "klin/oracle.hpp"
#include "klin/rng.hpp"

namespace klin {

struct BlrReport {
  int rounds = 0;
  int failures = 0;
  bool accept() const { return failures == 0; }
};

/// One linearity round: draws x, y uniform and checks f(x) + f(y) = f(x + y).
/// Exactly 3 queries; returns true on pass.
bool blr_round(FunctionOracle& f, Rng& rng);

// ceil(2 / eps_prime); the default round count of blr_test.
int blr_rounds_for(double eps_prime);

/// Runs ceil(2/eps_prime) rounds (or rounds_override when positive) and
/// rejects iff any round fails. One-sided: a linear f never rejects.
/// Requires 0 < eps_prime < 1/8.
BlrReport blr_test(FunctionOracle& f, double eps_prime, Rng& rng, int rounds_override = 0);

/// Self-corrected value g(x) = f(x + z) + f(z) for a fresh uniform z.
/// Exactly 2 queries; equals f(x) with certainty when f is linear.
bool self_correct(FunctionOracle& f, BitView x, Rng& rng);

}  // namespace klin

#endif
