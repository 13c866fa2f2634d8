#pragma once

#include "hmpzeta/hmp.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hmpz {

class BlockEntropyTable {
 public:
  explicit BlockEntropyTable(std::vector<double> block);  // block[N-1] = H(N)

  int max_length() const { return static_cast<int>(block_.size()); }
  double block(int n) const { return n == 0 ? 0.0 : block_.at(static_cast<std::size_t>(n - 1)); }
  double innovation(int n) const { return block(n) - block(n - 1); }
  double per_symbol(int n) const { return block(n) / n; }

  struct Violation {
    std::string relation;
    int n = 0;
    double margin = 0.0;
  };
  // Per-symbol / innovation ordering, concavity bound and per-symbol monotonicity.
  std::vector<Violation> check_monotonicity(double tol = 1e-12) const;

 private:
  std::vector<double> block_;
};

inline constexpr std::uint64_t block_entropy_cap = std::uint64_t{1} << 22;

BlockEntropyTable block_entropies(const HmpModel& model, int max_length, std::uint64_t cap = block_entropy_cap);

struct EntropyBounds {
  double lower = 0.0;  // conditional entropy of the next symbol given the hidden state
  double upper = 0.0;  // conditional entropy of the next symbol given the previous symbol
};

EntropyBounds entropy_bounds(const HmpModel& model);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::size_t zero_probability = 0;  // sequences that hit probability zero (excluded)
};

McEstimate mc_entropy(const HmpModel& model, std::size_t length, std::size_t samples, std::uint64_t seed);

struct SpectralGenericity {
  std::vector<double> moduli;
  std::vector<double> singular;
  bool leading_moduli_distinct = true;
  bool radius_matches_top_singular = true;
};

// Flags products whose two leading eigen-moduli coincide, the situation where the
// top singular value and the spectral radius may grow at different rates.
SpectralGenericity spectral_genericity(const Matrix& product, double rel_tol = 1e-9);

// Degenerate product diag(e^{-N mu0}, e^{-N mu1}) times a rotation with zero diagonal.
Matrix degenerate_rotation_product(double mu0, double mu1, int length);

struct LyapunovReport {
  std::size_t samples = 0;
  int length = 0;
  double mean_singular_rate = 0.0;   // -(1/N) ln sigma_0
  double mean_spectral_rate = 0.0;   // -(1/N) ln lambda
  double mean_probability_rate = 0.0;  // -(1/N) ln P
  double gap_singular_spectral = 0.0;  // mean |difference|
  double gap_singular_probability = 0.0;
  double gap_spectral_probability = 0.0;
  std::size_t weyl_failures = 0;
  std::size_t subadditivity_failures = 0;
  std::size_t degenerate_products = 0;
};

LyapunovReport mc_lyapunov_vs_spectral(const HmpModel& model, int length, std::size_t samples, std::uint64_t seed);

}  // namespace hmpz
