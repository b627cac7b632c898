#ifndef KLIN_LOWERBOUND_HPP
#define KLIN_LOWERBOUND_HPP

#include <iosfwd>
#include <vector>

#include "klin/bitvector.hpp"
#include "klin/learner.hpp"

namespace klin {

/// A q x n_cols GF(2) matrix with cheap column access, the object the
/// zero-sum-subset machinery works over.
class BitMatrix {
public:
  BitMatrix(int q, int n_cols);
  static BitMatrix from_rows(std::vector<BitVector> rows);
  static BitMatrix from_query_matrix(const QueryMatrix& m, int row_begin = 0, int row_end = -1);

  int q() const { return static_cast<int>(rows_.size()); }
  int n_cols() const { return n_cols_; }
  const std::vector<BitVector>& rows() const { return rows_; }
  bool get(int r, int c) const { return rows_.at(r - 1).get(c); }  // 1-based
  void set(int r, int c, bool v);

  // Column c (1-based) packed as a q-bit vector.
  const BitVector& column(int c) const;

  // Rows of this followed by rows of other (same column count).
  BitMatrix concat_rows(const BitMatrix& other) const;

private:
  void rebuild_columns();

  int n_cols_;
  std::vector<BitVector> rows_;
  std::vector<BitVector> cols_;
};

/// Which subset sizes to check and how many disjoint zero-sum subsets per
/// size are tolerated; slack 0 is plain goodness.
struct GoodnessSpec {
  std::vector<int> sizes;
  int slack = 0;
};

/// ceil(log2 sum_{i=0}^{floor(k/2)} C(n, i)), exactly, via big integers.
int hamming_lower_bound(int n, int k);

/// The exact maximum number of pairwise-disjoint j-subsets of columns each
/// summing to zero, by branch-and-bound packing. Requires n_cols <= 24 and
/// j <= 4; larger instances are an error, never an approximation.
int count_zero_sum_packing(const BitMatrix& m, int j);

/// True iff the packing count is within spec.slack for every size in
/// spec.sizes.
bool check_good(const BitMatrix& m, const GoodnessSpec& spec);

/// A greedily irreducible subset W' of W with gcd(W') = gcd(W): no single
/// element can be removed without changing the gcd. Any such subset obeys
/// |W'|! <= floor(m_bound / gcd(W)).
std::vector<int> gcd_reduce(std::vector<int> w, int m_bound);

/// The least lambda in [0, d_prime/d) with d_prime | (k - lambda*y).
/// Preconditions (checked): d | y, d | k, d | d_prime, gcd(y, d_prime) = d.
long long find_shift_lambda(long long d, long long d_prime, long long k, long long y);

/// Nonnegative lambdas with sum lambda_i * j_i = k, lambda_i <= sqrt(k) for
/// i < l and lambda_l <= k. Preconditions: (j_i * l)^2 <= k for all i, the
/// j_i distinct and positive, gcd(j_set) | k.
std::vector<long long> decompose_k(const std::vector<int>& j_set, long long k);

// Matrix file I/O, same text form as the learner's dump.
BitMatrix load_bit_matrix(std::istream& in);

}  // namespace klin

#endif
