#pragma once

#include "hmpzeta/markov.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hmpz {

// Symbols are 1..M in time order: symbols[0] is the first emitted symbol.
struct ObservedSequence {
  std::vector<int> symbols;
  std::size_t size() const { return symbols.size(); }
};

class HmpModel {
 public:
  // channel is M x L with entry (x-1, s) = pi(x|s); columns sum to one.
  HmpModel(MarkovChain chain, Matrix channel);

  int states() const { return chain_.size(); }
  int symbols() const { return static_cast<int>(channel_.rows()); }
  const MarkovChain& chain() const { return chain_; }
  const Matrix& channel() const { return channel_; }
  // Transfer matrix for symbol x in 1..M; entry (i,j) = pi(x|i) p(i|j).
  const Matrix& transfer(int x) const { return transfer_.at(static_cast<std::size_t>(x - 1)); }
  const std::vector<Matrix>& transfers() const { return transfer_; }

 private:
  MarkovChain chain_;
  Matrix channel_;
  std::vector<Matrix> transfer_;
};

void validate_sequence(const HmpModel& model, const ObservedSequence& seq);

double sequence_probability(const HmpModel& model, const ObservedSequence& seq);
double sequence_log_probability(const HmpModel& model, const ObservedSequence& seq);

// Total probability over all M^N sequences; cap bounds M^N.
double sum_over_sequences(const HmpModel& model, int length, std::uint64_t cap = std::uint64_t{1} << 20);

// Two-state flip chain observed through a symmetric channel with error eps.
HmpModel build_binary_symmetric(double q, double eps);

// Three-state chain with state 1 emitting symbol 1 and states 2, 3 emitting symbol 2.
HmpModel build_aggregated(double p1, double p2, double q1, double q2, double r1, double r2);
HmpModel build_aggregated_case1(double p1, double p2, double q1, double q2);
HmpModel build_aggregated_case2(double p1, double p2, double q, double r);

HmpModel build_explicit(const Matrix& transition, const Matrix& channel,
                        Orientation orientation = Orientation::column_stochastic);

struct SimulatedPath {
  std::vector<int> hidden;  // states 1..L, hidden[0] = s_1
  ObservedSequence observed;
};

SimulatedPath simulate_path(const HmpModel& model, std::size_t length, std::uint64_t seed);
ObservedSequence simulate(const HmpModel& model, std::size_t length, std::uint64_t seed);

// Binary alphabet utilities.
ObservedSequence invert_symbols(const ObservedSequence& seq);
// Change-point recoding: last symbol flipped, and adjacent recoded symbols agree
// exactly where the original ones differ.
ObservedSequence change_point_recode(const ObservedSequence& seq);

}  // namespace hmpz
