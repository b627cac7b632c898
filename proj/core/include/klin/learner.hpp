#ifndef KLIN_LEARNER_HPP
#define KLIN_LEARNER_HPP

#include <iosfwd>
#include <optional>

#include "klin/gf2m.hpp"
#include "klin/oracle.hpp"
#include "klin/parity.hpp"

namespace klin {

/// A q x N GF(2) matrix whose rows are the non-adaptive query points of the
/// sparse-parity learner. The BCH construction keeps q <= K*m + 1 and makes
/// every sum of <= 2K distinct columns nonzero, so each vector of weight <= K
/// is determined by its answer vector M*x.
class QueryMatrix {
public:
  enum class Construction { Bch, Explicit };

  QueryMatrix(int n_cols, std::vector<BitVector> rows, int m, int k_sparse, uint32_t poly,
              Construction construction);

  int q() const { return static_cast<int>(rows_.size()); }
  int n_cols() const { return n_cols_; }
  const std::vector<BitVector>& rows() const { return rows_; }

  // Column c (1-based) packed as a q-bit vector, row r at bit r.
  const BitVector& column(int c) const;

  int m() const { return m_; }
  int k_sparse() const { return k_sparse_; }
  uint32_t poly() const { return poly_; }
  Construction construction() const { return construction_; }

private:
  int n_cols_;
  std::vector<BitVector> rows_;
  std::vector<BitVector> cols_;
  int m_;
  int k_sparse_;
  uint32_t poly_;
  Construction construction_;
};

/// Rows are the GF(2) bit-rows of j -> (alpha^j, alpha^{3j}, ..., alpha^{(2K-1)j})
/// over the columns j = 0..N-1, plus one all-ones parity row.
QueryMatrix build_bch_matrix(int n_cols, int k_sparse);

/// M*x over GF(2): the answer bit of each query row against the parity x.
BitVector syndrome(const QueryMatrix& m, const ParitySupport& x);

struct DecodeResult {
  // Engaged: the unique weight-<=K support reproducing the answers exactly.
  // Empty: the answers are not the syndrome of any such support ("not in the
  // class" -- a value the testers branch on, not an error).
  std::optional<ParitySupport> support;
  bool not_sparse() const { return !support.has_value(); }
};

/// Berlekamp-Massey on the field syndromes, Chien search over all N column
/// locators, then a full answer-vector cross-check (parity row included).
DecodeResult decode(const QueryMatrix& m, const BitVector& answers, int k_sparse);

/// Verification oracle for decode: exhaustive search over all supports of
/// weight <= K for an exact syndrome match. Requires C(N, <=K) <= 1e6.
DecodeResult brute_force_decode(const QueryMatrix& m, const BitVector& answers, int k_sparse);

struct LearnResult {
  DecodeResult result;
  uint64_t queries = 0;
};

/// Queries the oracle at every row of build_bch_matrix(N, K) through the
/// plan-then-answer contract and decodes. Exact whenever the oracle computes
/// a parity of weight <= K.
LearnResult learn_sparse_parity(FunctionOracle& oracle, int k_sparse);
LearnResult learn_sparse_parity(FunctionOracle& oracle, const QueryMatrix& m);

// Text form: header "N K q m poly=<hex>" then q rows of N '0'/'1' chars.
void dump_matrix(const QueryMatrix& m, std::ostream& out);
QueryMatrix load_matrix(std::istream& in);

}  // namespace klin

#endif
