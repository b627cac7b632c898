#include "klin/learner.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace klin {

namespace {

int ceil_log2(long long v) {
  int m = 0;
  while ((1LL << m) < v) ++m;
  return m;
}

}  // namespace

QueryMatrix::QueryMatrix(int n_cols, std::vector<BitVector> rows, int m, int k_sparse,
                         uint32_t poly, Construction construction)
    : n_cols_(n_cols),
      rows_(std::move(rows)),
      m_(m),
      k_sparse_(k_sparse),
      poly_(poly),
      construction_(construction) {
  if (n_cols_ < 1) throw std::invalid_argument("QueryMatrix: need at least one column");
  for (const auto& r : rows_)
    if (r.n() != n_cols_) throw std::invalid_argument("QueryMatrix: ragged rows");
  cols_.assign(n_cols_, BitVector(q()));
  for (int r = 0; r < q(); ++r)
    for (int c = 1; c <= n_cols_; ++c)
      if (rows_[r].get(c)) cols_[c - 1].set(r + 1, true);
}

const BitVector& QueryMatrix::column(int c) const {
  if (c < 1 || c > n_cols_) throw std::invalid_argument("QueryMatrix: column out of range");
  return cols_[c - 1];
}

QueryMatrix build_bch_matrix(int n_cols, int k_sparse) {
  if (k_sparse < 1) throw std::invalid_argument("build_bch_matrix: K must be >= 1");
  if (n_cols < 1) throw std::invalid_argument("build_bch_matrix: N must be >= 1");
  const int m = std::max(3, ceil_log2(static_cast<long long>(n_cols) + 1));
  if (m > 16) throw std::invalid_argument("build_bch_matrix: N too large (needs m <= 16)");
  const FieldTables field = build_field(m);

  const int q = k_sparse * m + 1;
  std::vector<BitVector> rows(q, BitVector(n_cols));
  for (int j = 0; j < n_cols; ++j) {
    for (int i = 1; i <= k_sparse; ++i) {
      const uint32_t e = field.pow_alpha(static_cast<uint64_t>(2 * i - 1) * j);
      for (int r = 0; r < m; ++r)
        if ((e >> r) & 1) rows[(i - 1) * m + r].set(j + 1, true);
    }
    rows[q - 1].set(j + 1, true);  // parity row
  }

  QueryMatrix matrix(n_cols, std::move(rows), m, k_sparse, field.primitive_poly,
                     QueryMatrix::Construction::Bch);
  if (matrix.q() > k_sparse * ceil_log2(static_cast<long long>(n_cols) + 1) + 1 &&
      matrix.q() > k_sparse * m + 1)
    throw std::logic_error("build_bch_matrix: query bound violated");
  return matrix;
}

BitVector syndrome(const QueryMatrix& m, const ParitySupport& x) {
  if (x.n() != m.n_cols()) throw std::invalid_argument("syndrome: dimension mismatch");
  BitVector s(m.q());
  for (int c : x.indices()) s ^= m.column(c);
  return s;
}

DecodeResult decode(const QueryMatrix& m, const BitVector& answers, int k_sparse) {
  if (answers.n() != m.q()) throw std::invalid_argument("decode: answer length mismatch");
  if (k_sparse < 1 || k_sparse > m.k_sparse())
    throw std::invalid_argument("decode: K exceeds the matrix design parameter");
  if (m.construction() != QueryMatrix::Construction::Bch)
    throw std::invalid_argument("decode: needs a BCH-constructed matrix");

  const FieldTables field = build_field(m.m());
  const int deg = m.m();
  const int two_k = 2 * k_sparse;

  // Field syndromes: odd ones straight from the answer bits, even ones by
  // squaring (S_{2i} = S_i^2 in characteristic 2). syn[i] = S_{i+1}.
  std::vector<uint32_t> syn(two_k, 0);
  for (int i = 1; i <= k_sparse; ++i) {
    uint32_t s = 0;
    for (int r = 0; r < deg; ++r)
      if (answers.get((i - 1) * deg + r + 1)) s |= uint32_t{1} << r;
    syn[2 * i - 2] = s;
  }
  for (int idx = 2; idx <= two_k; idx += 2) syn[idx - 1] = field.mul(syn[idx / 2 - 1], syn[idx / 2 - 1]);

  // Berlekamp-Massey: minimal error-locator polynomial for the syndromes.
  std::vector<uint32_t> locator{1}, prev{1};
  int length = 0, gap = 1;
  uint32_t prev_discrepancy = 1;
  for (int step = 0; step < two_k; ++step) {
    uint32_t d = syn[step];
    for (int i = 1; i <= length && i < static_cast<int>(locator.size()); ++i)
      d ^= field.mul(locator[i], syn[step - i]);
    if (d == 0) {
      ++gap;
      continue;
    }
    const uint32_t scale = field.mul(d, field.inv(prev_discrepancy));
    std::vector<uint32_t> adjusted = locator;
    if (adjusted.size() < prev.size() + gap) adjusted.resize(prev.size() + gap, 0);
    for (size_t i = 0; i < prev.size(); ++i)
      adjusted[i + gap] ^= field.mul(scale, prev[i]);
    if (2 * length <= step) {
      prev = locator;
      prev_discrepancy = d;
      length = step + 1 - length;
      gap = 1;
    } else {
      ++gap;
    }
    locator = std::move(adjusted);
  }
  if (length > k_sparse) return {};

  // Chien search over the column locators alpha^0 .. alpha^{N-1}. A support
  // column j corresponds to a root at alpha^{-j}.
  std::vector<int> support;
  if (length > 0) {
    if (static_cast<int>(locator.size()) <= length || locator[length] == 0) return {};
    for (size_t i = length + 1; i < locator.size(); ++i)
      if (locator[i] != 0) return {};
    for (int j = 0; j < m.n_cols(); ++j) {
      uint32_t v = 0;
      const uint64_t x_log = (field.order() - static_cast<uint32_t>(j % field.order())) % field.order();
      for (int i = 0; i <= length; ++i) {
        if (locator[i] == 0) continue;
        v ^= field.antilog[(field.log[locator[i]] + x_log * i) % field.order()];
      }
      if (v == 0) support.push_back(j + 1);
    }
    if (static_cast<int>(support.size()) != length) return {};
  }

  // Cross-check against every answer bit, parity row included. Anything the
  // algebra let through that is not an exact preimage dies here.
  ParitySupport candidate(m.n_cols(), std::move(support));
  if (syndrome(m, candidate) != answers) return {};
  return {candidate};
}

DecodeResult brute_force_decode(const QueryMatrix& m, const BitVector& answers, int k_sparse) {
  if (answers.n() != m.q()) throw std::invalid_argument("brute_force_decode: answer length mismatch");
  const int n = m.n_cols();
  double combos = 1.0, total = 1.0;
  for (int w = 1; w <= k_sparse; ++w) {
    combos = combos * (n - w + 1) / w;
    total += combos;
    if (total > 1e6) throw std::invalid_argument("brute_force_decode: instance too large");
  }

  std::vector<int> pick;
  BitVector acc(m.q());
  // DFS over supports by ascending largest element; acc tracks the running
  // column XOR so each node costs one column op.
  const std::function<DecodeResult(int)> search = [&](int next) -> DecodeResult {
    if (acc == answers) return {ParitySupport(n, pick)};
    if (static_cast<int>(pick.size()) == k_sparse) return {};
    for (int c = next; c <= n; ++c) {
      pick.push_back(c);
      acc ^= m.column(c);
      DecodeResult r = search(c + 1);
      acc ^= m.column(c);
      pick.pop_back();
      if (!r.not_sparse()) return r;
    }
    return {};
  };
  return search(1);
}

LearnResult learn_sparse_parity(FunctionOracle& oracle, const QueryMatrix& m) {
  if (oracle.n() != m.n_cols())
    throw std::invalid_argument("learn_sparse_parity: oracle dimension mismatch");
  const uint64_t before = oracle.query_count();
  oracle.begin_plan(m.q());
  for (const auto& row : m.rows()) oracle.plan_query(row);
  oracle.seal_plan();
  BitVector answers(m.q());
  for (int i = 0; i < m.q(); ++i) answers.set(i + 1, oracle.answer(i));
  oracle.end_plan();
  LearnResult out;
  out.result = decode(m, answers, m.k_sparse());
  out.queries = oracle.query_count() - before;
  return out;
}

LearnResult learn_sparse_parity(FunctionOracle& oracle, int k_sparse) {
  const QueryMatrix m = build_bch_matrix(oracle.n(), k_sparse);
  return learn_sparse_parity(oracle, m);
}

void dump_matrix(const QueryMatrix& m, std::ostream& out) {
  out << m.n_cols() << ' ' << m.k_sparse() << ' ' << m.q() << ' ' << m.m() << " poly=0x"
      << std::hex << m.poly() << std::dec << '\n';
  for (const auto& row : m.rows()) out << row.to_string() << '\n';
}

QueryMatrix load_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("matrix file: missing header");
  std::istringstream hs(header);
  int n_cols, k_sparse, q, m;
  std::string poly_field;
  if (!(hs >> n_cols >> k_sparse >> q >> m >> poly_field) || poly_field.rfind("poly=", 0) != 0)
    throw std::runtime_error("matrix file: bad header, expected 'N K q m poly=<hex>'");
  const uint32_t poly = static_cast<uint32_t>(std::stoul(poly_field.substr(5), nullptr, 16));
  std::vector<BitVector> rows;
  std::string line;
  while (static_cast<int>(rows.size()) < q && std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(BitVector::from_string(line));
  }
  if (static_cast<int>(rows.size()) != q) throw std::runtime_error("matrix file: truncated rows");
  return QueryMatrix(n_cols, std::move(rows), m, k_sparse, poly,
                     QueryMatrix::Construction::Explicit);
}

}  // namespace klin
