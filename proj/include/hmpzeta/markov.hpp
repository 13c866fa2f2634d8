#pragma once

#include "hmpzeta/matrix.hpp"

#include <string>
#include <vector>

namespace hmpz {

struct MixingReport {
  bool strictly_positive = false;
  bool primitive = false;
  int primitive_power = 0;  // smallest power found entrywise positive, 0 if none up to the Wielandt bound
  bool positive_diagonal = false;
  double second_modulus = 0.0;
  bool mixing = false;
};

enum class Orientation { column_stochastic, row_stochastic };

// Checks entries >= 0 and unit column sums; throws ValidationError otherwise.
void require_column_stochastic(const Matrix& transition, double tol = 1e-12);

MixingReport mixing_check(const Matrix& transition);

// Fixed vector of a mixing chain; throws MixingError when the chain is not mixing.
Vector stationary_distribution(const Matrix& transition);

class MarkovChain {
 public:
  // Non-mixing chains are accepted as long as the fixed vector is unique; the
  // report and warnings() carry the verdict.
  explicit MarkovChain(Matrix transition, Orientation orientation = Orientation::column_stochastic);

  int size() const { return static_cast<int>(transition_.rows()); }
  const Matrix& transition() const { return transition_; }
  const Vector& stationary() const { return stationary_; }
  const MixingReport& mixing() const { return mixing_; }
  std::vector<std::string> warnings() const;

 private:
  Matrix transition_;
  Vector stationary_;
  MixingReport mixing_;
};

// Entropy rate of the chain in nats, with 0 ln 0 = 0.
double markov_entropy(const MarkovChain& chain);

// x ln x with the 0 ln 0 = 0 convention.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace hmpz
