#pragma once

#include "hmpzeta/matrix.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hmpz {

// Aperiodic necklace stored as its Lyndon word (least rotation), letters 1..M.
struct Orbit {
  std::vector<int> letters;
  std::size_t length() const { return letters.size(); }
  std::string word() const;
  bool operator==(const Orbit&) const = default;
};

class OrbitSet {
 public:
  OrbitSet(int alphabet, int max_order, std::vector<std::vector<Orbit>> by_length);

  int alphabet() const { return alphabet_; }
  int max_order() const { return max_order_; }
  // Orbits of length p (1..K), lexicographic.
  const std::vector<Orbit>& of_length(int p) const { return by_length_.at(static_cast<std::size_t>(p - 1)); }
  // All orbits by length, then lexicographic.
  const std::vector<Orbit>& all() const { return flat_; }
  std::size_t size() const { return flat_.size(); }

 private:
  int alphabet_;
  int max_order_;
  std::vector<std::vector<Orbit>> by_length_;
  std::vector<Orbit> flat_;
};

inline constexpr std::uint64_t default_orbit_cap = std::uint64_t{1} << 24;

OrbitSet enumerate_orbits(int alphabet, int max_order, std::uint64_t cap = default_orbit_cap);

// Number of aperiodic necklaces of length p over M letters.
std::uint64_t necklace_count(int alphabet, int p);

int moebius(int n);

// Least rotation of a word.
std::vector<int> canonical_rotation(std::span<const int> word);
bool is_aperiodic(std::span<const int> word);

struct ZmReport {
  double all_words = 0.0;    // sum over every word of length m
  double orbit_sum = 0.0;    // sum over divisors of orbit contributions
  double relative_error = 0.0;
  bool pass = false;
};

// Checks the word-sum / orbit-sum identity for the spectral radius of products of
// the given matrices (one per letter).
ZmReport zm_consistency(const std::vector<Matrix>& letters, int m, double rel_tol = 1e-9);
// Same check with seeded random nonnegative dim x dim matrices.
ZmReport zm_consistency(int alphabet, int m, std::uint64_t seed = 1, int dim = 2, double rel_tol = 1e-9);

}  // namespace hmpz
