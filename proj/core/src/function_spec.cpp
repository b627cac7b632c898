#include "klin/function_spec.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace klin {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

uint64_t packed_index(BitView x) {
  // Only meaningful for n <= 63.
  return x.w[0];
}

uint64_t point_hash(BitView x, uint64_t salt) {
  uint64_t h = mix64(salt ^ 0x8f1bbcdcbfa53e0bull);
  for (size_t i = 0; i < x.word_count(); ++i) h = mix64(h ^ x.w[i]);
  return h;
}

}  // namespace

FunctionOracle make_parity_oracle(const ParitySupport& s) {
  BitVector mask = s.mask();
  return FunctionOracle(s.n(), [mask = std::move(mask)](BitView x) { return parity_and(x, mask); });
}

FunctionOracle make_const_oracle(int n, bool value) {
  return FunctionOracle(n, [value](BitView) { return value; });
}

FunctionOracle make_table_oracle(int n, std::vector<uint64_t> table_words) {
  if (n > 24) throw std::invalid_argument("make_table_oracle: n must be <= 24");
  const size_t need = ((size_t{1} << n) + 63) / 64;
  if (table_words.size() < need) table_words.resize(need, 0);
  return FunctionOracle(n, [table = std::move(table_words)](BitView x) {
    const uint64_t idx = packed_index(x);
    return static_cast<bool>((table[idx >> 6] >> (idx & 63)) & 1);
  });
}

FunctionOracle make_corrupted_parity_oracle(const ParitySupport& s,
                                            std::vector<uint64_t> flipped_points) {
  if (s.n() > 63) throw std::invalid_argument("make_corrupted_parity_oracle: n must be <= 63");
  std::sort(flipped_points.begin(), flipped_points.end());
  flipped_points.erase(std::unique(flipped_points.begin(), flipped_points.end()),
                       flipped_points.end());
  BitVector mask = s.mask();
  return FunctionOracle(
      s.n(), [mask = std::move(mask), pts = std::move(flipped_points)](BitView x) {
        const bool base = parity_and(x, mask);
        return std::binary_search(pts.begin(), pts.end(), packed_index(x)) ? !base : base;
      });
}

FunctionOracle make_noisy_parity_oracle(const ParitySupport& s, double rate, uint64_t salt) {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw std::invalid_argument("make_noisy_parity_oracle: rate outside [0, 1]");
  const uint64_t threshold =
      rate >= 1.0 ? ~uint64_t{0} : static_cast<uint64_t>(rate * 0x1.0p64);
  BitVector mask = s.mask();
  return FunctionOracle(s.n(), [mask = std::move(mask), threshold, salt](BitView x) {
    const bool base = parity_and(x, mask);
    return point_hash(x, salt) < threshold ? !base : base;
  });
}

std::vector<int> parse_index_list(const std::string& csv) {
  std::vector<int> out;
  if (csv.empty()) return out;
  for (const std::string& tok : split(csv, ',')) {
    if (tok.empty()) throw std::invalid_argument("index list: empty entry in '" + csv + "'");
    out.push_back(std::stoi(tok));
  }
  return out;
}

FunctionOracle make_function(const std::string& spec, int n, uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "parity") return make_parity_oracle(ParitySupport(n, parse_index_list(rest)));
  if (head == "const") {
    if (rest != "0" && rest != "1") throw std::invalid_argument("const spec needs 0 or 1");
    return make_const_oracle(n, rest == "1");
  }
  if (head == "table") {
    std::ifstream in(rest);
    if (!in) throw std::runtime_error("cannot open table file: " + rest);
    if (n > 24) throw std::invalid_argument("table function: n must be <= 24");
    std::vector<uint64_t> words(((size_t{1} << n) + 63) / 64, 0);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::string bits;
      int value;
      if (!(ls >> bits >> value)) throw std::runtime_error("table file: malformed line: " + line);
      const BitVector pt = BitVector::from_string(bits);
      if (pt.n() != n) throw std::runtime_error("table file: point length != n");
      if (value) {
        const uint64_t idx = pt.words()[0];
        words[idx >> 6] |= uint64_t{1} << (idx & 63);
      }
    }
    return make_table_oracle(n, std::move(words));
  }
  if (head == "noisy-parity") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw std::invalid_argument("noisy-parity spec: <support>:<rate>");
    const ParitySupport s(n, parse_index_list(parts[0]));
    return make_noisy_parity_oracle(s, std::stod(parts[1]), derive_seed(seed, 0x6e6f697379ull));
  }
  throw std::invalid_argument("unknown function spec: " + spec);
}

DistributionSpec make_distribution(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "uniform") return DistributionSpec::uniform(n);
  if (head == "product") return DistributionSpec::product(n, std::stod(rest));
  if (head == "file") return DistributionSpec::load_explicit_file(rest, n);
  if (head == "mass") {
    std::vector<std::pair<BitVector, double>> pts;
    for (const std::string& entry : split(rest, ',')) {
      const auto sep = entry.find(':');
      if (sep == std::string::npos)
        throw std::invalid_argument("mass spec entry needs <point>:<w>: " + entry);
      pts.emplace_back(BitVector::from_string(entry.substr(0, sep)),
                       std::stod(entry.substr(sep + 1)));
    }
    // Same tolerance-and-renormalize treatment as distribution files.
    double total = 0.0;
    for (const auto& [_, w] : pts) total += w;
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument("mass spec: weights must sum to 1 within 1e-9");
    for (auto& [_, w] : pts) w /= total;
    return DistributionSpec::mixture(n, std::move(pts));
  }
  throw std::invalid_argument("unknown distribution spec: " + spec);
}

}  // namespace klin
