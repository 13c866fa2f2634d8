#include "hmpzeta/orbits.hpp"

#include "hmpzeta/error.hpp"
#include "internal.hpp"

#include <algorithm>

namespace hmpz {

std::string Orbit::word() const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i && letters[i] > 9) out += ' ';
    out += std::to_string(letters[i]);
  }
  return out;
}

OrbitSet::OrbitSet(int alphabet, int max_order, std::vector<std::vector<Orbit>> by_length)
    : alphabet_(alphabet), max_order_(max_order), by_length_(std::move(by_length)) {
  for (const auto& group : by_length_) flat_.insert(flat_.end(), group.begin(), group.end());
}

OrbitSet enumerate_orbits(int alphabet, int max_order, std::uint64_t cap) {
  if (alphabet < 2) throw ValidationError("alphabet size must be at least 2");
  if (max_order < 1) throw ValidationError("maximal orbit length must be at least 1");
  std::uint64_t work = 1;
  for (int k = 0; k < max_order; ++k) {
    work *= static_cast<std::uint64_t>(alphabet);
    if (work > cap)
      throw ResourceError("orbit enumeration " + std::to_string(alphabet) + "^" + std::to_string(max_order) +
                          " exceeds the cap of " + std::to_string(cap));
  }

  std::vector<std::vector<Orbit>> groups(static_cast<std::size_t>(max_order));
  // Duval's iteration visits all Lyndon words of length <= K in lexicographic order.
  std::vector<int> w{0};
  while (!w.empty()) {
    groups[w.size() - 1].push_back(Orbit{});
    auto& letters = groups[w.size() - 1].back().letters;
    for (int c : w) letters.push_back(c + 1);
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(max_order)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == alphabet - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return OrbitSet(alphabet, max_order, std::move(groups));
}

int moebius(int n) {
  int result = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

std::uint64_t necklace_count(int alphabet, int p) {
  if (p < 1) return 0;
  long double total = 0.0L;
  for (int d = 1; d <= p; ++d) {
    if (p % d) continue;
    total += static_cast<long double>(moebius(d)) * std::pow(static_cast<long double>(alphabet), p / d);
  }
  return static_cast<std::uint64_t>(std::llround(total / p));
}

std::vector<int> canonical_rotation(std::span<const int> word) {
  std::vector<int> best(word.begin(), word.end());
  std::vector<int> rot = best;
  for (std::size_t k = 1; k < word.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

bool is_aperiodic(std::span<const int> word) {
  const std::size_t p = word.size();
  for (std::size_t k = 1; k < p; ++k) {
    if (p % k) continue;
    bool same = true;
    for (std::size_t i = 0; i < p && same; ++i) same = word[i] == word[(i + k) % p];
    if (same) return false;
  }
  return true;
}

namespace {

double product_radius(const std::vector<Matrix>& letters, const std::vector<int>& word) {
  Matrix prod = letters.at(static_cast<std::size_t>(word[0] - 1));
  for (std::size_t i = 1; i < word.size(); ++i) prod = prod * letters.at(static_cast<std::size_t>(word[i] - 1));
  return spectral_radius(prod);
}

}  // namespace

ZmReport zm_consistency(const std::vector<Matrix>& letters, int m, double rel_tol) {
  const int M = static_cast<int>(letters.size());
  if (M < 2 || m < 1) throw ValidationError("zm_consistency needs at least two letters and m >= 1");
  std::uint64_t words = 1;
  for (int k = 0; k < m; ++k) words *= static_cast<std::uint64_t>(M);
  if (words > (std::uint64_t{1} << 18)) throw ResourceError("zm_consistency: M^m exceeds 2^18");

  ZmReport r;
  std::vector<int> word(static_cast<std::size_t>(m), 1);
  for (std::uint64_t idx = 0; idx < words; ++idx) {
    std::uint64_t v = idx;
    for (int k = m - 1; k >= 0; --k) {
      word[static_cast<std::size_t>(k)] = static_cast<int>(v % static_cast<std::uint64_t>(M)) + 1;
      v /= static_cast<std::uint64_t>(M);
    }
    r.all_words += product_radius(letters, word);
  }
  const auto orbits = enumerate_orbits(M, m);
  for (int n = 1; n <= m; ++n) {
    if (m % n) continue;
    for (const auto& o : orbits.of_length(n))
      r.orbit_sum += n * std::pow(product_radius(letters, o.letters), m / n);
  }
  r.relative_error = std::abs(r.all_words - r.orbit_sum) / std::max(std::abs(r.all_words), 1e-300);
  r.pass = r.relative_error <= rel_tol;
  return r;
}

ZmReport zm_consistency(int alphabet, int m, std::uint64_t seed, int dim, double rel_tol) {
  auto rng = detail::make_engine(seed);
  std::vector<Matrix> letters;
  for (int a = 0; a < alphabet; ++a) {
    Matrix A(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) A(i, j) = detail::uniform01(rng);
    letters.push_back(A);
  }
  return zm_consistency(letters, m, rel_tol);
}

}  // namespace hmpz
