#include "hmpzeta/oracle.hpp"

#include "hmpzeta/error.hpp"
#include "internal.hpp"

namespace hmpz {

BlockEntropyTable::BlockEntropyTable(std::vector<double> block) : block_(std::move(block)) {}

std::vector<BlockEntropyTable::Violation> BlockEntropyTable::check_monotonicity(double tol) const {
  std::vector<Violation> out;
  const int n_max = max_length();
  auto expect = [&](const char* relation, int n, double small, double large) {
    if (small > large + tol) out.push_back({relation, n, large - small});
  };
  for (int n = 1; n <= n_max; ++n) {
    expect("innovation <= per_symbol", n, innovation(n), per_symbol(n));
    if (n + 1 <= n_max) {
      expect("innovation non-increasing", n, innovation(n + 1), innovation(n));
      expect("per_symbol non-increasing", n, per_symbol(n + 1), per_symbol(n));
      expect("block concavity", n, block(n + 1), 2.0 * block(n) - block(n - 1));
    }
  }
  return out;
}

BlockEntropyTable block_entropies(const HmpModel& model, int max_length, std::uint64_t cap) {
  if (max_length < 1) throw ValidationError("block length must be positive");
  const int M = model.symbols();
  std::uint64_t count = 1;
  for (int k = 0; k < max_length; ++k) {
    count *= static_cast<std::uint64_t>(M);
    if (count > cap)
      throw ResourceError("block entropy enumeration " + std::to_string(M) + "^" + std::to_string(max_length) +
                          " exceeds the cap of " + std::to_string(cap));
  }

  const auto depth_max = static_cast<std::size_t>(max_length);
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(M), std::vector<double>(depth_max, 0.0));
  detail::parallel_for(
      static_cast<std::size_t>(M),
      [&](std::size_t first) {
        auto& acc = partial[first];
        std::vector<Vector> stack(depth_max + 1);
        std::vector<int> next(depth_max + 1, 1);
        stack[0] = model.chain().stationary();
        stack[1].noalias() = model.transfer(static_cast<int>(first) + 1) * stack[0];
        std::vector<detail::CompensatedSum> sums(depth_max);
        sums[0].add(-xlogx(stack[1].sum()));
        std::size_t depth = stack[1].sum() > 0.0 ? 1 : 0;
        while (depth >= 1) {
          if (depth == depth_max) {
            --depth;
            continue;
          }
          int& x = next[depth];
          if (x > M) {
            x = 1;
            --depth;
            continue;
          }
          stack[depth + 1].noalias() = model.transfer(x) * stack[depth];
          ++x;
          const double p = stack[depth + 1].sum();
          if (p <= 0.0) continue;
          sums[depth].add(-xlogx(p));
          ++depth;
        }
        for (std::size_t d = 0; d < depth_max; ++d) acc[d] = sums[d].value();
      },
      1);

  std::vector<double> block(depth_max, 0.0);
  for (std::size_t d = 0; d < depth_max; ++d) {
    detail::CompensatedSum s;
    for (const auto& part : partial) s.add(part[d]);
    block[d] = s.value();
  }
  return BlockEntropyTable(std::move(block));
}

EntropyBounds entropy_bounds(const HmpModel& model) {
  const int M = model.symbols();
  const int L = model.states();
  const auto& st = model.chain().stationary();
  EntropyBounds b;
  for (int s = 0; s < L; ++s) {
    double h = 0.0;
    for (int x = 1; x <= M; ++x) h -= xlogx(model.transfer(x).col(s).sum());
    b.lower += st(s) * h;
  }
  double h1 = 0.0, h2 = 0.0;
  for (int x1 = 1; x1 <= M; ++x1) {
    const Vector v1 = model.transfer(x1) * st;
    h1 -= xlogx(v1.sum());
    for (int x2 = 1; x2 <= M; ++x2) h2 -= xlogx((model.transfer(x2) * v1).sum());
  }
  b.upper = h2 - h1;
  return b;
}

McEstimate mc_entropy(const HmpModel& model, std::size_t length, std::size_t samples, std::uint64_t seed) {
  if (length < 1 || samples < 2) throw ValidationError("Monte Carlo needs length >= 1 and at least two samples");
  std::vector<double> rate(samples);
  detail::parallel_for(
      samples,
      [&](std::size_t i) {
        const auto seq = simulate(model, length, detail::derive_seed(seed, i));
        rate[i] = -sequence_log_probability(model, seq) / static_cast<double>(length);
      },
      1);
  McEstimate est;
  detail::CompensatedSum sum;
  for (double r : rate) {
    if (!std::isfinite(r)) {
      ++est.zero_probability;
      continue;
    }
    sum.add(r);
    ++est.samples;
  }
  if (est.samples < 2) throw NumericalError("Monte Carlo: fewer than two sequences had positive probability");
  est.estimate = sum.value() / static_cast<double>(est.samples);
  detail::CompensatedSum sq;
  for (double r : rate)
    if (std::isfinite(r)) sq.add((r - est.estimate) * (r - est.estimate));
  const double var = sq.value() / static_cast<double>(est.samples - 1);
  est.stderr_ = std::sqrt(var / static_cast<double>(est.samples));
  return est;
}

SpectralGenericity spectral_genericity(const Matrix& product, double rel_tol) {
  SpectralGenericity g;
  g.moduli = eigen_moduli(product);
  g.singular = singular_values(product);
  if (g.moduli.size() > 1) g.leading_moduli_distinct = g.moduli[0] - g.moduli[1] > rel_tol * g.moduli[0];
  g.radius_matches_top_singular = std::abs(g.singular[0] - g.moduli[0]) <= rel_tol * g.singular[0];
  return g;
}

Matrix degenerate_rotation_product(double mu0, double mu1, int length) {
  Matrix scale = Matrix::Zero(2, 2);
  scale(0, 0) = std::exp(-length * mu0);
  scale(1, 1) = std::exp(-length * mu1);
  Matrix rotation(2, 2);
  rotation << 0, 1, 1, 0;
  return scale * rotation;
}

namespace {

struct ScaledProduct {
  Matrix m;
  double log_scale = 0.0;
};

// Product T(x_hi) ... T(x_lo) (1-based inclusive positions), rescaled each step past 64 factors.
ScaledProduct product_of(const HmpModel& model, const ObservedSequence& seq, std::size_t lo, std::size_t hi) {
  ScaledProduct p{Matrix::Identity(model.states(), model.states()), 0.0};
  const bool rescale = hi - lo + 1 > 64;
  detail::CompensatedSum logs;
  for (std::size_t k = lo; k <= hi; ++k) {
    p.m = model.transfer(seq.symbols[k - 1]) * p.m;
    if (rescale) {
      const double c = p.m.cwiseAbs().maxCoeff();
      if (c > 0.0) {
        logs.add(std::log(c));
        p.m /= c;
      }
    }
  }
  p.log_scale = logs.value();
  return p;
}

}  // namespace

LyapunovReport mc_lyapunov_vs_spectral(const HmpModel& model, int length, std::size_t samples, std::uint64_t seed) {
  if (length < 2 || samples < 1) throw ValidationError("Lyapunov check needs length >= 2 and samples >= 1");
  struct Sample {
    double singular, spectral, probability;
    bool weyl_ok, subadditive, degenerate;
  };
  std::vector<Sample> out(samples);
  const auto N = static_cast<std::size_t>(length);
  detail::parallel_for(
      samples,
      [&](std::size_t i) {
        const std::uint64_t sub = detail::derive_seed(seed, i);
        const auto seq = simulate(model, N, sub);
        auto rng = detail::make_engine(sub, 1);
        const std::size_t split = 1 + static_cast<std::size_t>(detail::uniform01(rng) * static_cast<double>(N - 1));
        const auto lower = product_of(model, seq, 1, split);
        const auto upper = product_of(model, seq, split + 1, N);
        const Matrix full = upper.m * lower.m;
        const double log_scale = lower.log_scale + upper.log_scale;
        const auto g = spectral_genericity(full);
        Sample s{};
        s.singular = -(std::log(g.singular[0]) + log_scale) / length;
        s.spectral = -(std::log(g.moduli[0]) + log_scale) / length;
        s.probability = -sequence_log_probability(model, seq) / length;
        s.weyl_ok = weyl_check(full, 1.0).all_pass();
        const double log_full = std::log(g.singular[0]) + log_scale;
        const double log_split = std::log(singular_values(lower.m)[0]) + lower.log_scale +
                                 std::log(singular_values(upper.m)[0]) + upper.log_scale;
        s.subadditive = log_full <= log_split + 1e-10 * std::max(1.0, std::abs(log_split));
        s.degenerate = !g.leading_moduli_distinct;
        out[i] = s;
      },
      1);

  LyapunovReport r;
  r.samples = samples;
  r.length = length;
  for (const auto& s : out) {
    r.mean_singular_rate += s.singular;
    r.mean_spectral_rate += s.spectral;
    r.mean_probability_rate += s.probability;
    r.gap_singular_spectral += std::abs(s.singular - s.spectral);
    r.gap_singular_probability += std::abs(s.singular - s.probability);
    r.gap_spectral_probability += std::abs(s.spectral - s.probability);
    r.weyl_failures += s.weyl_ok ? 0 : 1;
    r.subadditivity_failures += s.subadditive ? 0 : 1;
    r.degenerate_products += s.degenerate ? 1 : 0;
  }
  const double inv = 1.0 / static_cast<double>(samples);
  r.mean_singular_rate *= inv;
  r.mean_spectral_rate *= inv;
  r.mean_probability_rate *= inv;
  r.gap_singular_spectral *= inv;
  r.gap_singular_probability *= inv;
  r.gap_spectral_probability *= inv;
  return r;
}

}  // namespace hmpz
