#include "oracles.hpp"

#include "hmpzeta/error.hpp"
#include "hmpzeta/exact.hpp"
#include "hmpzeta/markov.hpp"

#include <doctest.h>

using namespace hmpz;

namespace {

Matrix aggregated_transition(double p1, double p2, double q1, double q2, double r1, double r2) {
  Matrix p(3, 3);
  p << 1 - p1 - p2, q1, r1, p1, 1 - q1 - q2, r2, p2, q2, 1 - r1 - r2;
  return p;
}

}  // namespace

TEST_SUITE("markov") {

TEST_CASE("binary flip chain is uniform at stationarity") {
  for (double q : {0.05, 0.2, 0.5, 0.9}) {
    Matrix p(2, 2);
    p << 1 - q, q, q, 1 - q;
    const auto st = stationary_distribution(p);
    CHECK(st(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(st(1) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("three-state aggregated chain matches its closed-form stationary vector") {
  const double p1 = 0.3, p2 = 0.2, q1 = 0.55, q2 = 0.1, r1 = 0.25, r2 = 0.4;
  const auto st = stationary_distribution(aggregated_transition(p1, p2, q1, q2, r1, r2));
  Vector want(3);
  want << q1 * (r1 + r2) + q2 * r1, r2 * (p1 + p2) + p1 * r1, p2 * (q1 + q2) + p1 * q2;
  want /= want.sum();
  CHECK((st - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("doubly stochastic chain is uniform") {
  Matrix p(3, 3);
  p << 0.2, 0.5, 0.3, 0.3, 0.2, 0.5, 0.5, 0.3, 0.2;
  const auto st = stationary_distribution(p);
  for (int i = 0; i < 3; ++i) CHECK(st(i) == doctest::Approx(1.0 / 3).epsilon(1e-13));
}

TEST_CASE("stationary vector is a fixed point and a distribution") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 5;
    Matrix p = oracle::random_nonnegative(dim, rng);
    for (int j = 0; j < dim; ++j) p.col(j) /= p.col(j).sum();
    const MarkovChain c(p);
    CHECK((p * c.stationary() - c.stationary()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(c.stationary().sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.stationary().minCoeff() >= 0.0);
  }
}

TEST_CASE("mixing diagnostics") {
  Matrix positive(2, 2);
  positive << 0.6, 0.3, 0.4, 0.7;
  const auto ok = mixing_check(positive);
  CHECK(ok.strictly_positive);
  CHECK(ok.mixing);
  CHECK(ok.second_modulus == doctest::Approx(0.3));

  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  const auto bad = mixing_check(flip);
  CHECK_FALSE(bad.mixing);
  CHECK(bad.second_modulus == doctest::Approx(1.0));
  CHECK_THROWS_AS(stationary_distribution(flip), MixingError);
  try {
    stationary_distribution(flip);
  } catch (const MixingError& e) {
    CHECK(e.modulus() == doctest::Approx(1.0));
  }

  // Case-2 chain with q = r = 0: states 2 and 3 swap forever once entered.
  const auto frozen = mixing_check(aggregated_transition(0.2, 0.3, 0.0, 1.0, 0.0, 1.0));
  CHECK_FALSE(frozen.mixing);
}

TEST_CASE("primitive chain with zeros is still mixing") {
  Matrix p(3, 3);
  p << 0, 0, 0.5, 1, 0, 0, 0, 1, 0.5;
  const auto r = mixing_check(p);
  CHECK_FALSE(r.strictly_positive);
  CHECK(r.primitive);
  CHECK(r.primitive_power > 1);
  CHECK(r.primitive_power <= 3 * 3 - 2 * 3 + 2);
  CHECK(r.mixing);
}

TEST_CASE("non-stochastic input is rejected") {
  Matrix p(2, 2);
  p << 0.5, 0.5, 0.6, 0.5;
  CHECK_THROWS_AS(require_column_stochastic(p), ValidationError);
  CHECK_THROWS_AS(MarkovChain{p}, ValidationError);
  p << -0.1, 0.5, 1.1, 0.5;
  CHECK_THROWS_AS(MarkovChain{p}, ValidationError);
}

TEST_CASE("row-stochastic ingestion transposes") {
  Matrix rows(2, 2);
  rows << 0.9, 0.1, 0.4, 0.6;
  const MarkovChain c(rows, Orientation::row_stochastic);
  CHECK(c.transition()(1, 0) == doctest::Approx(0.1));
  CHECK(c.stationary()(0) == doctest::Approx(0.8));
}

TEST_CASE("periodic chain is accepted with a warning") {
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  const MarkovChain c(flip);
  CHECK_FALSE(c.mixing().mixing);
  REQUIRE_FALSE(c.warnings().empty());
  CHECK(c.warnings()[0].rfind("non_mixing", 0) == 0);
  CHECK(markov_entropy(c) == doctest::Approx(0.0));
}

TEST_CASE("reducible chain with two closed classes has no unique fixed vector") {
  Matrix p = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(MarkovChain{p}, MixingError);
}

TEST_CASE("markov entropy of the flip chain") {
  for (double q : {0.1, 0.3, 0.5}) {
    Matrix p(2, 2);
    p << 1 - q, q, q, 1 - q;
    CHECK(markov_entropy(MarkovChain(p)) == doctest::Approx(oracle::binary_entropy(q)).epsilon(1e-14));
  }
}

TEST_CASE("markov entropy is nonnegative on random chains") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix p = oracle::random_nonnegative(3, rng);
    for (int j = 0; j < 3; ++j) p.col(j) /= p.col(j).sum();
    CHECK(markov_entropy(MarkovChain(p)) > 0.0);
  }
}

TEST_CASE("case-2 closed-form markov entropy matches the generic formula") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int trial = 0; trial < 100; ++trial) {
    const double p1 = u(rng) * 0.5, p2 = u(rng) * 0.5, q = u(rng), r = u(rng);
    const Case2Params cp{p1, p2, q, r};
    const MarkovChain c(aggregated_transition(p1, p2, q, 1 - q, r, 1 - r));
    CHECK(markov_entropy_case2(cp) == doctest::Approx(markov_entropy(c)).epsilon(1e-10));
    CHECK(markov_entropy_case2(cp) > exact_entropy_case2(cp));
  }
}

TEST_CASE("case-2 chain with q = r = 1 and p1 = p2") {
  // Closed form and generic formula on a chain whose hidden states 2, 3 always return to 1.
  const Case2Params cp{0.3, 0.3, 1.0, 1.0};
  const MarkovChain c(aggregated_transition(0.3, 0.3, 1.0, 0.0, 1.0, 0.0));
  CHECK(std::isfinite(markov_entropy_case2(cp)));
  CHECK(markov_entropy_case2(cp) == doctest::Approx(markov_entropy(c)).epsilon(1e-10));
}

}
