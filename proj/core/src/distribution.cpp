#include "klin/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "klin/exact_sum.hpp"

namespace klin {

namespace {

void check_dim(int n) {
  if (n <= 0) throw std::invalid_argument("DistributionSpec: dimension must be positive");
}

}  // namespace

DistributionSpec DistributionSpec::uniform(int n) {
  check_dim(n);
  return DistributionSpec(Kind::Uniform, n);
}

DistributionSpec DistributionSpec::product(int n, double p) {
  return product(n, std::vector<double>(n, p));
}

DistributionSpec DistributionSpec::product(int n, std::vector<double> ps) {
  check_dim(n);
  if (static_cast<int>(ps.size()) != n)
    throw std::invalid_argument("DistributionSpec: product needs one p per coordinate");
  for (double p : ps)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("DistributionSpec: product p outside [0, 1]");
  DistributionSpec d(Kind::Product, n);
  d.ps_ = std::move(ps);
  return d;
}

DistributionSpec DistributionSpec::explicit_table(int n, std::vector<std::pair<BitVector, double>> pts) {
  check_dim(n);
  DistributionSpec d(Kind::Explicit, n);
  d.pts_ = std::move(pts);
  d.finish_table();
  return d;
}

DistributionSpec DistributionSpec::mixture(int n, std::vector<std::pair<BitVector, double>> pts) {
  check_dim(n);
  DistributionSpec d(Kind::Mixture, n);
  d.pts_ = std::move(pts);
  d.finish_table();
  return d;
}

void DistributionSpec::finish_table() {
  if (pts_.empty()) throw std::invalid_argument("DistributionSpec: empty point table");
  ExactSum sum;
  for (const auto& [pt, w] : pts_) {
    if (pt.n() != n_) throw std::invalid_argument("DistributionSpec: point dimension mismatch");
    if (!(w >= 0.0)) throw std::invalid_argument("DistributionSpec: negative probability");
    sum.add(w);
  }
  if (std::fabs(sum.value() - 1.0) > 1e-12)
    throw std::invalid_argument("DistributionSpec: probabilities must sum to 1 (1e-12)");
  cum_.resize(pts_.size());
  ExactSum run;
  for (size_t i = 0; i < pts_.size(); ++i) {
    run.add(pts_[i].second);
    cum_[i] = run.value();
  }
  cum_.back() = 1.0;
}

DistributionSpec DistributionSpec::load_explicit(std::istream& in, int expected_n) {
  std::vector<std::pair<BitVector, double>> pts;
  std::string line;
  int n = expected_n;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string bits;
    double w;
    if (!(ls >> bits >> w)) throw std::runtime_error("distribution file: malformed line: " + line);
    BitVector pt = BitVector::from_string(bits);
    if (n < 0) n = pt.n();
    if (pt.n() != n) throw std::runtime_error("distribution file: inconsistent point length");
    pts.emplace_back(std::move(pt), w);
  }
  if (pts.empty()) throw std::runtime_error("distribution file: no points");
  ExactSum sum;
  for (const auto& [_, w] : pts) sum.add(w);
  const double total = sum.value();
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::runtime_error("distribution file: masses sum to " + std::to_string(total) +
                             ", expected 1 within 1e-9");
  for (auto& [_, w] : pts) w /= total;
  return explicit_table(n, std::move(pts));
}

DistributionSpec DistributionSpec::load_explicit_file(const std::string& path, int expected_n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distribution file: " + path);
  return load_explicit(in, expected_n);
}

BitVector DistributionSpec::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::Uniform: {
      BitVector x(n_);
      x.randomize(rng);
      return x;
    }
    case Kind::Product: {
      BitVector x(n_);
      for (int i = 1; i <= n_; ++i)
        if (rng.unit() < ps_[i - 1]) x.set(i, true);
      return x;
    }
    case Kind::Explicit:
    case Kind::Mixture: {
      const double u = rng.unit();
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
      const size_t i = std::min(static_cast<size_t>(it - cum_.begin()), pts_.size() - 1);
      return pts_[i].first;
    }
  }
  throw std::logic_error("DistributionSpec: bad kind");
}

const std::vector<std::pair<BitVector, double>>& DistributionSpec::points() const {
  if (kind_ != Kind::Explicit && kind_ != Kind::Mixture)
    throw std::logic_error("DistributionSpec: points() needs a table variant");
  return pts_;
}

const std::vector<double>& DistributionSpec::product_ps() const {
  if (kind_ != Kind::Product) throw std::logic_error("DistributionSpec: product_ps() needs Product");
  return ps_;
}

double DistributionSpec::mass(const BitVector& x) const {
  if (x.n() != n_) throw std::invalid_argument("DistributionSpec: mass dimension mismatch");
  switch (kind_) {
    case Kind::Uniform:
      if (n_ > 1000) throw std::invalid_argument("DistributionSpec: uniform mass underflows");
      return std::ldexp(1.0, -n_);
    case Kind::Product: {
      double m = 1.0;
      for (int i = 1; i <= n_; ++i) m *= x.get(i) ? ps_[i - 1] : 1.0 - ps_[i - 1];
      return m;
    }
    case Kind::Explicit:
    case Kind::Mixture: {
      ExactSum s;  // duplicated points are allowed in a mixture list
      for (const auto& [pt, w] : pts_)
        if (pt == x) s.add(w);
      return s.value();
    }
  }
  throw std::logic_error("DistributionSpec: bad kind");
}

const char* to_string(DistributionSpec::Kind k) {
  switch (k) {
    case DistributionSpec::Kind::Uniform: return "uniform";
    case DistributionSpec::Kind::Product: return "product";
    case DistributionSpec::Kind::Explicit: return "explicit";
    case DistributionSpec::Kind::Mixture: return "mixture";
  }
  return "?";
}

}  // namespace klin
