#include "klin/lowerbound.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace klin {

using boost::multiprecision::cpp_int;

BitMatrix::BitMatrix(int q, int n_cols) : n_cols_(n_cols), rows_(q, BitVector(n_cols)) {
  if (n_cols < 1 || q < 1) throw std::invalid_argument("BitMatrix: empty shape");
  cols_.assign(n_cols_, BitVector(q));
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows) {
  if (rows.empty()) throw std::invalid_argument("BitMatrix: no rows");
  BitMatrix m(static_cast<int>(rows.size()), rows[0].n());
  for (const auto& r : rows)
    if (r.n() != m.n_cols_) throw std::invalid_argument("BitMatrix: ragged rows");
  m.rows_ = std::move(rows);
  m.rebuild_columns();
  return m;
}

void BitMatrix::rebuild_columns() {
  cols_.assign(n_cols_, BitVector(q()));
  for (int r = 1; r <= q(); ++r)
    for (int j = 1; j <= n_cols_; ++j)
      if (rows_[r - 1].get(j)) cols_[j - 1].set(r, true);
}

void BitMatrix::set(int r, int c, bool v) {
  rows_.at(r - 1).set(c, v);
  cols_.at(c - 1).set(r, v);
}

BitMatrix BitMatrix::from_query_matrix(const QueryMatrix& qm, int row_begin, int row_end) {
  if (row_end < 0) row_end = qm.q();
  if (row_begin < 0 || row_begin >= row_end || row_end > qm.q())
    throw std::invalid_argument("BitMatrix: bad row range");
  std::vector<BitVector> rows(qm.rows().begin() + row_begin, qm.rows().begin() + row_end);
  return from_rows(std::move(rows));
}

const BitVector& BitMatrix::column(int c) const {
  if (c < 1 || c > n_cols_) throw std::invalid_argument("BitMatrix: column out of range");
  return cols_[c - 1];
}

BitMatrix BitMatrix::concat_rows(const BitMatrix& other) const {
  if (other.n_cols_ != n_cols_) throw std::invalid_argument("concat_rows: column count mismatch");
  std::vector<BitVector> rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  return from_rows(std::move(rows));
}

int hamming_lower_bound(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("hamming_lower_bound: need 1 <= k <= n");
  cpp_int sum = 0;
  cpp_int binom = 1;  // C(n, 0)
  for (int i = 0; i <= k / 2; ++i) {
    sum += binom;
    binom = binom * (n - i) / (i + 1);
  }
  // ceil(log2 sum): bit count of sum-1 for powers of two, else msb+1.
  if (sum <= 1) return 0;
  const cpp_int s1 = sum - 1;
  int bits = 0;
  for (cpp_int v = s1; v > 0; v >>= 1) ++bits;
  return bits;
}

namespace {

// Exact maximum packing of pairwise-disjoint subsets from `candidates`
// (column masks) by branch and bound.
struct Packing {
  const std::vector<uint32_t>& candidates;
  int best = 0;

  void search(size_t from, uint32_t used, int chosen) {
    best = std::max(best, chosen);
    if (from >= candidates.size()) return;
    // Even taking every remaining candidate cannot beat best: prune.
    if (chosen + static_cast<int>(candidates.size() - from) <= best) return;
    for (size_t i = from; i < candidates.size(); ++i) {
      if (candidates[i] & used) continue;
      search(i + 1, used | candidates[i], chosen + 1);
    }
  }
};

}  // namespace

int count_zero_sum_packing(const BitMatrix& m, int j) {
  if (m.n_cols() > 24)
    throw std::invalid_argument("count_zero_sum_packing: exact search limited to n_cols <= 24");
  if (j < 1 || j > 4)
    throw std::invalid_argument("count_zero_sum_packing: exact search limited to j <= 4");

  // All j-subsets of columns with zero GF(2) sum, as column bitmasks.
  std::vector<uint32_t> zero_sets;
  const int n = m.n_cols();
  std::vector<int> idx(j);
  BitVector acc(m.q());
  const std::function<void(int, int)> enumerate = [&](int depth, int from) {
    if (depth == j) {
      if (!acc.any()) {
        uint32_t mask = 0;
        for (int c : idx) mask |= uint32_t{1} << (c - 1);
        zero_sets.push_back(mask);
      }
      return;
    }
    for (int c = from; c <= n; ++c) {
      idx[depth] = c;
      acc ^= m.column(c);
      enumerate(depth + 1, c + 1);
      acc ^= m.column(c);
    }
  };
  enumerate(0, 1);

  Packing p{zero_sets};
  p.search(0, 0, 0);
  return p.best;
}

bool check_good(const BitMatrix& m, const GoodnessSpec& spec) {
  if (spec.slack < 0) throw std::invalid_argument("check_good: negative slack");
  for (int j : spec.sizes)
    if (count_zero_sum_packing(m, j) > spec.slack) return false;
  return true;
}

std::vector<int> gcd_reduce(std::vector<int> w, int m_bound) {
  if (w.empty()) throw std::invalid_argument("gcd_reduce: empty set");
  for (int v : w)
    if (v < 1 || v > m_bound) throw std::invalid_argument("gcd_reduce: element outside [1, m_bound]");
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());

  const auto gcd_of = [](const std::vector<int>& s) {
    int g = 0;
    for (int v : s) g = std::gcd(g, v);
    return g;
  };
  const int target = gcd_of(w);

  // An element equal to the gcd is already an irreducible witness.
  for (int v : w)
    if (v == target) return {v};

  // Greedy irreducibility: drop elements while the gcd survives.
  for (size_t i = 0; i < w.size();) {
    if (w.size() == 1) break;
    std::vector<int> without;
    without.reserve(w.size() - 1);
    for (size_t j = 0; j < w.size(); ++j)
      if (j != i) without.push_back(w[j]);
    if (gcd_of(without) == target) {
      w = std::move(without);
      i = 0;  // removal can unlock earlier removals
    } else {
      ++i;
    }
  }
  return w;
}

long long find_shift_lambda(long long d, long long d_prime, long long k, long long y) {
  if (d < 1 || d_prime < 1 || k < 1 || y < 1)
    throw std::invalid_argument("find_shift_lambda: arguments must be positive");
  if (y % d != 0 || k % d != 0 || d_prime % d != 0)
    throw std::invalid_argument("find_shift_lambda: d must divide y, k and d'");
  if (std::gcd(y, d_prime) != d)
    throw std::invalid_argument("find_shift_lambda: gcd(y, d') must equal d");
  const long long bound = d_prime / d;
  for (long long lam = 0; lam < bound; ++lam) {
    const long long rem = (k - lam * y) % d_prime;
    if (rem == 0) return lam;
  }
  throw std::logic_error("find_shift_lambda: no lambda found (the preconditions guarantee one)");
}

std::vector<long long> decompose_k(const std::vector<int>& j_set, long long k) {
  if (j_set.empty()) throw std::invalid_argument("decompose_k: empty j_set");
  if (k < 1) throw std::invalid_argument("decompose_k: k must be positive");
  const long long l = static_cast<long long>(j_set.size());
  long long d = 0;
  for (size_t i = 0; i < j_set.size(); ++i) {
    const long long j = j_set[i];
    if (j < 1 || j * l * j * l > k)
      throw std::invalid_argument("decompose_k: need 1 <= j_i <= sqrt(k)/l");
    for (size_t t = i + 1; t < j_set.size(); ++t)
      if (j_set[t] == j_set[i]) throw std::invalid_argument("decompose_k: duplicate j");
    d = std::gcd(d, j);
  }
  if (k % d != 0) throw std::invalid_argument("decompose_k: gcd(j_set) must divide k");

  // The recursion peels j_1: either gcd(rest) = d (take lambda_1 = 0) or
  // shift k by lambda_1 * j_1 so that gcd(rest) divides the remainder.
  std::vector<long long> lambdas(j_set.size(), 0);
  std::vector<int> rest(j_set.begin(), j_set.end());
  long long remaining = k;
  long long cur_d = d;
  for (size_t i = 0; i + 1 < j_set.size(); ++i) {
    long long rest_d = 0;
    for (size_t t = i + 1; t < j_set.size(); ++t) rest_d = std::gcd(rest_d, (long long)j_set[t]);
    if (rest_d == cur_d) {
      lambdas[i] = 0;
    } else {
      const long long lam = find_shift_lambda(cur_d, rest_d, remaining, j_set[i]);
      lambdas[i] = lam;
      remaining -= lam * j_set[i];
    }
    cur_d = rest_d;
    if (remaining < 0) throw std::logic_error("decompose_k: negative remainder");
  }
  const long long last = j_set.back();
  if (remaining % last != 0) throw std::logic_error("decompose_k: base case shift failed");
  lambdas.back() = remaining / last;
  return lambdas;
}

BitMatrix load_bit_matrix(std::istream& in) {
  const QueryMatrix qm = load_matrix(in);
  return BitMatrix::from_query_matrix(qm);
}

}  // namespace klin
