#include "oracles.hpp"

#include "hmpzeta/error.hpp"
#include "hmpzeta/exact.hpp"
#include "hmpzeta/oracle.hpp"
#include "hmpzeta/zeta.hpp"

#include <doctest.h>

using namespace hmpz;

TEST_SUITE("exact") {

TEST_CASE("Lerch series: trivial and closed-form cases") {
  CHECK(lerch_phi(0.0, 1.7, 2.5).value == doctest::Approx(std::pow(2.5, 1.7)).epsilon(1e-15));
  CHECK(lerch_phi(0.0, 1.7, 2.5).terms == 1);
  CHECK(lerch_phi(0.3, 0.0, 4.0).value == doctest::Approx(1 / 0.7).epsilon(1e-14));
  CHECK(lerch_phi(0.5, 1.0, 1.0).value == doctest::Approx(4.0).epsilon(1e-14));
  // Sum (k+1) y^k = 1/(1-y)^2 for any y in the disk.
  CHECK(lerch_phi(-0.8, 1.0, 1.0).value == doctest::Approx(1 / (1.8 * 1.8)).epsilon(1e-13));
}

TEST_CASE("Lerch log companion is minus the n-derivative at n = 1") {
  for (double y : {0.1, 0.5, 0.9}) {
    for (double b : {0.3, 1.0, 2.2}) {
      const double h = 1e-6;
      const double d = (lerch_phi(y, 1 + h, b).value - lerch_phi(y, 1 - h, b).value) / (2 * h);
      CHECK(lerch_phi_log(y, b).value == doctest::Approx(-d).epsilon(1e-7));
    }
  }
}

TEST_CASE("Lerch series near the unit circle reports the terms it would need") {
  CHECK_THROWS_AS(lerch_phi(1.0 - 1e-10, 1.0, 1.0), ConvergenceError);
  try {
    lerch_phi(1.0 - 1e-10, 1.0, 1.0);
  } catch (const ConvergenceError& e) {
    CHECK(e.needed_terms() > lerch_term_cap);
  }
  CHECK_THROWS_AS(lerch_phi(0.5, 1.0, -0.5), ValidationError);
  CHECK(lerch_phi(0.5, 1.0, 0.0).value == doctest::Approx(2.0).epsilon(1e-13));  // sum k 2^-k
}

TEST_CASE("exact entropies reproduce the tables") {
  CHECK(exact_entropy_case1({0.75, 0.10, 0.25, 0.20}) == doctest::Approx(0.569580).epsilon(1e-5));
  CHECK(exact_entropy_case1({0.30, 0.20, 0.55, 0.10}) == doctest::Approx(0.684796).epsilon(1e-5));
  CHECK(exact_entropy_case2({0.1, 0.1, 0.2, 0.3}) == doctest::Approx(0.528531).epsilon(1e-5));
  CHECK(exact_entropy_case2({0.2, 0.2, 0.3, 0.4}) == doctest::Approx(0.659897).epsilon(1e-5));
  CHECK(exact_entropy_case2({0.2, 0.3, 0.05, 0.01}) == doctest::Approx(0.166671).epsilon(1e-5));
  CHECK(exact_entropy_case2({0.2, 0.3, 0.1, 0.4}) == doctest::Approx(0.619519).epsilon(1e-5));
}

TEST_CASE("exact zetas vanish at (1, 1) across seeded grids") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = u(rng) * 0.5, b = u(rng) * 0.5;
    const double c = u(rng) * 0.5, d = u(rng) * 0.5;
    CHECK(std::abs(exact_zeta_case1({a, b, c, d}, 1.0, 1.0)) < 1e-10);
    CHECK(std::abs(exact_zeta_case2({a, b, u(rng), u(rng)}, 1.0, 1.0)) < 1e-10);
  }
}

TEST_CASE("jets match finite differences") {
  const Case1Params p1{0.75, 0.10, 0.25, 0.20};
  const Case2Params p2{0.1, 0.1, 0.2, 0.3};
  const double h = 1e-6;
  for (double z : {0.3, 0.9}) {
    for (double n : {0.8, 1.1}) {
      const auto j1 = exact_zeta_case1_jet(p1, z, n);
      CHECK(j1.value == doctest::Approx(exact_zeta_case1(p1, z, n)).epsilon(1e-14));
      CHECK(j1.dz == doctest::Approx((exact_zeta_case1(p1, z + h, n) - exact_zeta_case1(p1, z - h, n)) / (2 * h)).epsilon(1e-6));
      CHECK(j1.dn == doctest::Approx((exact_zeta_case1(p1, z, n + h) - exact_zeta_case1(p1, z, n - h)) / (2 * h)).epsilon(1e-6));
      const auto j2 = exact_zeta_case2_jet(p2, z, n);
      CHECK(j2.dz == doctest::Approx((exact_zeta_case2(p2, z + h, n) - exact_zeta_case2(p2, z - h, n)) / (2 * h)).epsilon(1e-6));
      CHECK(j2.dn == doctest::Approx((exact_zeta_case2(p2, z, n + h) - exact_zeta_case2(p2, z, n - h)) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("entropy is the implicit derivative of the exact zeta") {
  const Case1Params p1{0.30, 0.20, 0.55, 0.10};
  const auto j1 = exact_zeta_case1_jet(p1, 1.0, 1.0);
  CHECK(-j1.dn / j1.dz == doctest::Approx(exact_entropy_case1(p1)).epsilon(1e-12));
  const Case2Params p2{0.2, 0.2, 0.3, 0.4};
  const auto j2 = exact_zeta_case2_jet(p2, 1.0, 1.0);
  CHECK(-j2.dn / j2.dz == doctest::Approx(exact_entropy_case2(p2)).epsilon(1e-12));
}

TEST_CASE("case 1 with q1 + q2 = 1 collapses the Lerch series") {
  const Case1Params p{0.3, 0.2, 0.6, 0.4};
  CHECK(exact_zeta_case1_terms(p, 0.7, 1.3) == 1);
  CHECK(std::abs(exact_zeta_case1(p, 1.0, 1.0)) < 1e-12);
}

TEST_CASE("case 2 with q = r: first-order coefficient") {
  for (double n : {0.8, 1.0, 1.4}) {
    const Case2Params p{0.2, 0.3, 0.35, 0.35};
    const double want = -(std::pow(1 - p.p1 - p.p2, n) + std::pow(1 - p.q, n));
    CHECK(exact_zeta_case2_jet(p, 0.0, n).dz == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("exact forms outside their disks") {
  CHECK_THROWS_AS(exact_zeta_case1({0.75, 0.10, 0.25, 0.20}, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(exact_zeta_case2({0.1, 0.1, 0.2, 0.3}, 2.0, 1.0), DomainError);
}

TEST_CASE("parameter validation rejects, never clamps") {
  CHECK_THROWS_AS(validate(Case1Params{0.7, 0.4, 0.1, 0.1}), ValidationError);
  CHECK_THROWS_AS(validate(Case1Params{0.2, 0.2, 0.7, 0.4}), ValidationError);
  CHECK_THROWS_AS(validate(Case2Params{0.2, 0.2, 1.2, 0.4}), ValidationError);
  CHECK_THROWS_AS(validate(Case2Params{-0.1, 0.2, 0.2, 0.4}), ValidationError);
  CHECK_NOTHROW(validate(Case1Params{0.2, 0.2, 0.2, 0.2}));
}

TEST_CASE("exact entropies lie inside the bound bracket") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.03, 0.97);
  for (int trial = 0; trial < 100; ++trial) {
    const Case1Params c1{u(rng) * 0.5, u(rng) * 0.5, u(rng) * 0.5, u(rng) * 0.5};
    const auto b1 = entropy_bounds(build_aggregated_case1(c1.p1, c1.p2, c1.q1, c1.q2));
    const double h1 = exact_entropy_case1(c1);
    CHECK(h1 >= b1.lower - 1e-12);
    CHECK(h1 <= b1.upper + 1e-12);
    const Case2Params c2{u(rng) * 0.5, u(rng) * 0.5, u(rng), u(rng)};
    const auto b2 = entropy_bounds(build_aggregated_case2(c2.p1, c2.p2, c2.q, c2.r));
    const double h2 = exact_entropy_case2(c2);
    CHECK(h2 >= b2.lower - 1e-12);
    CHECK(h2 <= b2.upper + 1e-12);
  }
}

TEST_CASE("exact entropies agree with block-entropy innovations from above") {
  const Case2Params c2{0.1, 0.1, 0.2, 0.3};
  const auto t = block_entropies(build_aggregated_case2(c2.p1, c2.p2, c2.q, c2.r), 16);
  const double gap = t.innovation(16) - exact_entropy_case2(c2);
  CHECK(gap >= 0.0);
  CHECK(gap <= 5e-3);
  const Case1Params c1{0.75, 0.10, 0.25, 0.20};
  const auto t1 = block_entropies(build_aggregated_case1(c1.p1, c1.p2, c1.q1, c1.q2), 16);
  const double gap1 = t1.innovation(16) - exact_entropy_case1(c1);
  CHECK(gap1 >= 0.0);
  CHECK(gap1 <= 5e-3);
}

TEST_CASE("case-1 entropy is continuous but not analytic at p1 + p2 = 1") {
  const double p1 = 0.5, q1 = 0.25, q2 = 0.2;
  auto h = [&](double s) { return exact_entropy_case1({p1, s - p1, q1, q2}); };
  // Continuity in the interior.
  CHECK(std::abs(h(0.8 + 1e-9) - h(0.8)) < 1e-7);
  // The (1-s) ln(1-s) term: its second derivative diverges like 1/(1-s).
  const double s = 1.0 - 1e-4, d = 1e-6;
  const double second = (h(s + d) - 2 * h(s) + h(s - d)) / (d * d);
  CHECK(std::abs(second) > 1e3);
  const double interior = (h(0.7 + 1e-4) - 2 * h(0.7) + h(0.7 - 1e-4)) / 1e-8;
  CHECK(std::abs(interior) < 1e2);
}

TEST_CASE("small-noise entropy: limits and the cycle-expansion oracle") {
  for (double q : {0.1, 0.3, 0.45}) CHECK(small_noise_entropy(q, 0.0) == doctest::Approx(oracle::binary_entropy(q)).epsilon(1e-15));
  for (double eps : {0.0, 0.01, 0.1}) CHECK(small_noise_entropy(0.5, eps) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double cycle = entropy_cycle_expansion(build_binary_symmetric(0.3, 0.01), 13).entropy;
  CHECK(std::abs(small_noise_entropy(0.3, 0.01) - cycle) < 5e-5);
  CHECK_THROWS_AS(small_noise_entropy(0.6, 0.01), DomainError);
}

TEST_CASE("small-noise coefficients: closed-form limits") {
  for (double n : {0.8, 1.0, 1.2}) {
    CHECK(small_noise_phi(0.3, 0.0, n, 3) == doctest::Approx(0.0));
    CHECK(small_noise_phi(0.3, 0.0, n, 4) == doctest::Approx(0.0));
    CHECK(small_noise_phi(0.3, 0.0, n, 1) == doctest::Approx(-2 * std::pow(0.7, n)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(small_noise_phi(0.3, 0.01, 1.0, 5), ValidationError);
}

TEST_CASE("small-noise coefficients against the generic truncation: third-order residual") {
  const double q = 0.3;
  auto residual = [&](double eps, double n, int k) {
    const auto m = build_binary_symmetric(q, eps);
    const auto poly = zeta_polynomial(orbit_weights(m, enumerate_orbits(2, 6)), n, 6);
    return poly[k].value - small_noise_phi(q, eps, n, k);
  };
  for (double n : {0.8, 1.0, 1.2}) {
    for (int k = 1; k <= 4; ++k) {
      const double r2 = residual(0.02, n, k), r1 = residual(0.01, n, k);
      CHECK(std::abs(r2) < 1e-3);
      // Halving the noise cuts an O(eps^3) remainder roughly eightfold.
      if (std::abs(r2) > 1e-9) CHECK(std::abs(r2 / r1) > 6.0);
    }
  }
}

TEST_CASE("small-noise Lambda: limits") {
  for (double n : {0.5, 1.5, 3.0}) CHECK(small_noise_lambda(0.3, 0.0, n) == doctest::Approx(std::pow(0.3, n) + std::pow(0.7, n)));
  CHECK(small_noise_lambda(0.3, 0.05, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

}
