#include "klin/blr.hpp"

#include <cmath>
#include <stdexcept>

namespace klin {

bool blr_round(FunctionOracle& f, Rng& rng) {
  BitVector x(f.n()), y(f.n());
  x.randomize(rng);
  y.randomize(rng);
  const bool fx = f.eval(x);
  const bool fy = f.eval(y);
  x ^= y;
  return (fx ^ fy) == f.eval(x);
}

int blr_rounds_for(double eps_prime) {
  return static_cast<int>(std::ceil(2.0 / eps_prime));
}

BlrReport blr_test(FunctionOracle& f, double eps_prime, Rng& rng, int rounds_override) {
  if (!(eps_prime > 0.0 && eps_prime < 0.125))
    throw std::invalid_argument("blr_test: eps_prime must lie in (0, 1/8)");
  BlrReport report;
  report.rounds = rounds_override > 0 ? rounds_override : blr_rounds_for(eps_prime);
  for (int i = 0; i < report.rounds; ++i)
    if (!blr_round(f, rng)) ++report.failures;
  return report;
}

bool self_correct(FunctionOracle& f, BitView x, Rng& rng) {
  BitVector z(f.n());
  z.randomize(rng);
  BitVector xz = x.to_vector();
  xz ^= z;
  return f.eval(xz) ^ f.eval(z);
}

}  // namespace klin
