#pragma once

// Test-side reference computations written without the library's fast paths.

#include "hmpzeta/hmp.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Probability of an observed sequence by summing over every hidden path.
inline double path_sum_probability(const hmpz::HmpModel& m, const std::vector<int>& x) {
  const int L = m.states();
  const auto& P = m.chain().transition();
  const auto& st = m.chain().stationary();
  const auto& ch = m.channel();
  const std::size_t N = x.size();
  std::vector<int> s(N, 0);
  double total = 0.0;
  std::function<void(std::size_t, double)> walk = [&](std::size_t k, double w) {
    if (k == N) {
      total += w;
      return;
    }
    for (int j = 0; j < L; ++j) {
      // State j emits x[k]; the state before the first step is stationary.
      double step = 0.0;
      if (k == 0) {
        for (int i = 0; i < L; ++i) step += P(j, i) * st(i);
      } else {
        step = P(j, s[k - 1]);
      }
      const double e = ch(x[k] - 1, j);
      if (step * e == 0.0) continue;
      s[k] = j;
      walk(k + 1, w * step * e);
    }
  };
  walk(0, 1.0);
  return total;
}

// Every sequence over {1..M} of length N in lexicographic order.
inline std::vector<std::vector<int>> all_words(int M, int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(static_cast<std::size_t>(N), 1);
  while (true) {
    out.push_back(w);
    int k = N - 1;
    while (k >= 0 && w[static_cast<std::size_t>(k)] == M) w[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) break;
    ++w[static_cast<std::size_t>(k)];
  }
  return out;
}

inline double binary_entropy(double q) {
  auto xl = [](double v) { return v > 0 ? v * std::log(v) : 0.0; };
  return -xl(q) - xl(1 - q);
}

inline Eigen::MatrixXd random_nonnegative(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = u(rng);
  return m;
}

inline Eigen::MatrixXd random_signed(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace oracle
