#include "hmpzeta/hmp.hpp"

#include "hmpzeta/error.hpp"
#include "internal.hpp"

#include <sstream>

namespace hmpz {

HmpModel::HmpModel(MarkovChain chain, Matrix channel) : chain_(std::move(chain)), channel_(std::move(channel)) {
  const auto L = chain_.size();
  if (channel_.cols() != L || channel_.rows() < 1)
    throw DimensionError("channel must be M x L with L = " + std::to_string(L) + ", got " +
                         std::to_string(channel_.rows()) + "x" + std::to_string(channel_.cols()));
  require_finite(channel_, "channel");
  if ((channel_.array() < 0.0).any()) throw ValidationError("channel has negative entries");
  for (Eigen::Index s = 0; s < L; ++s) {
    const double sum = channel_.col(s).sum();
    if (std::abs(sum - 1.0) > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "channel column " << s + 1 << " sums to " << sum << ", expected 1";
      throw ValidationError(os.str());
    }
  }
  const auto& p = chain_.transition();
  for (Eigen::Index x = 0; x < channel_.rows(); ++x)
    transfer_.push_back(channel_.row(x).transpose().asDiagonal() * p);
}

void validate_sequence(const HmpModel& model, const ObservedSequence& seq) {
  if (seq.symbols.empty()) throw ValidationError("observed sequence is empty");
  for (int x : seq.symbols)
    if (x < 1 || x > model.symbols())
      throw ValidationError("symbol " + std::to_string(x) + " outside 1.." + std::to_string(model.symbols()));
}

double sequence_log_probability(const HmpModel& model, const ObservedSequence& seq) {
  validate_sequence(model, seq);
  Vector v = model.chain().stationary();
  detail::CompensatedSum logp;
  for (int x : seq.symbols) {
    v = model.transfer(x) * v;
    const double c = v.sum();
    if (c <= 0.0) return -std::numeric_limits<double>::infinity();
    logp.add(std::log(c));
    v /= c;
  }
  return logp.value();
}

double sequence_probability(const HmpModel& model, const ObservedSequence& seq) {
  if (seq.size() > 64) return std::exp(sequence_log_probability(model, seq));
  validate_sequence(model, seq);
  Vector v = model.chain().stationary();
  for (int x : seq.symbols) v = model.transfer(x) * v;
  return v.sum();
}

double sum_over_sequences(const HmpModel& model, int length, std::uint64_t cap) {
  if (length < 1) throw ValidationError("sequence length must be positive");
  const auto M = static_cast<std::uint64_t>(model.symbols());
  std::uint64_t count = 1;
  for (int k = 0; k < length; ++k) {
    count *= M;
    if (count > cap)
      throw ResourceError("sum over " + std::to_string(M) + "^" + std::to_string(length) +
                          " sequences exceeds the cap of " + std::to_string(cap));
  }
  // Depth-first walk reusing prefix vectors.
  std::vector<Vector> stack(static_cast<std::size_t>(length) + 1);
  stack[0] = model.chain().stationary();
  detail::CompensatedSum total;
  std::vector<int> next(static_cast<std::size_t>(length) + 1, 1);
  int depth = 0;
  while (depth >= 0) {
    if (depth == length) {
      total.add(stack[depth].sum());
      --depth;
      continue;
    }
    auto& x = next[depth];
    if (x > model.symbols()) {
      x = 1;
      --depth;
      continue;
    }
    stack[depth + 1] = model.transfer(x) * stack[depth];
    ++x;
    ++depth;
  }
  return total.value();
}

HmpModel build_binary_symmetric(double q, double eps) {
  detail::require_probability("q", q);
  detail::require_probability("eps", eps);
  Matrix p(2, 2);
  p << 1 - q, q, q, 1 - q;
  Matrix channel(2, 2);
  channel << 1 - eps, eps, eps, 1 - eps;
  return HmpModel(MarkovChain(p), channel);
}

HmpModel build_aggregated(double p1, double p2, double q1, double q2, double r1, double r2) {
  for (auto [name, v] : {std::pair{"p1", p1}, {"p2", p2}, {"q1", q1}, {"q2", q2}, {"r1", r1}, {"r2", r2}})
    detail::require_probability(name, v);
  detail::require_nonnegative_sum_complement("p1+p2", p1 + p2);
  detail::require_nonnegative_sum_complement("q1+q2", q1 + q2);
  detail::require_nonnegative_sum_complement("r1+r2", r1 + r2);
  Matrix p(3, 3);
  p << std::max(0.0, 1 - p1 - p2), q1, r1,
       p1, std::max(0.0, 1 - q1 - q2), r2,
       p2, q2, std::max(0.0, 1 - r1 - r2);
  Matrix channel(2, 3);
  channel << 1, 0, 0,
             0, 1, 1;
  return HmpModel(MarkovChain(p), channel);
}

HmpModel build_aggregated_case1(double p1, double p2, double q1, double q2) {
  return build_aggregated(p1, p2, q1, q2, q1 + q2, 0.0);
}

HmpModel build_aggregated_case2(double p1, double p2, double q, double r) {
  detail::require_probability("q", q);
  detail::require_probability("r", r);
  return build_aggregated(p1, p2, q, 1 - q, r, 1 - r);
}

HmpModel build_explicit(const Matrix& transition, const Matrix& channel, Orientation orientation) {
  return HmpModel(MarkovChain(transition, orientation), channel);
}

namespace {

int draw(const Eigen::Ref<const Vector>& weights, std::mt19937_64& rng) {
  const double u = detail::uniform01(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) <= 0.0) continue;
    acc += weights(i);
    last_positive = static_cast<int>(i);
    if (u < acc) return last_positive;
  }
  return last_positive;
}

}  // namespace

SimulatedPath simulate_path(const HmpModel& model, std::size_t length, std::uint64_t seed) {
  auto rng = detail::make_engine(seed);
  const auto& p = model.chain().transition();
  const auto& channel = model.channel();
  SimulatedPath path;
  path.hidden.reserve(length);
  path.observed.symbols.reserve(length);
  int s = draw(model.chain().stationary(), rng);
  for (std::size_t k = 0; k < length; ++k) {
    s = draw(p.col(s), rng);
    path.hidden.push_back(s + 1);
    path.observed.symbols.push_back(draw(channel.col(s), rng) + 1);
  }
  return path;
}

ObservedSequence simulate(const HmpModel& model, std::size_t length, std::uint64_t seed) {
  return simulate_path(model, length, seed).observed;
}

ObservedSequence invert_symbols(const ObservedSequence& seq) {
  ObservedSequence out = seq;
  for (int& x : out.symbols) {
    if (x != 1 && x != 2) throw ValidationError("inversion is defined for binary sequences only");
    x = 3 - x;
  }
  return out;
}

ObservedSequence change_point_recode(const ObservedSequence& seq) {
  if (seq.symbols.empty()) throw ValidationError("observed sequence is empty");
  const auto& x = seq.symbols;
  for (int s : x)
    if (s != 1 && s != 2) throw ValidationError("recoding is defined for binary sequences only");
  const std::size_t n = x.size();
  ObservedSequence out;
  out.symbols.assign(n, 0);
  out.symbols[n - 1] = 3 - x[n - 1];
  for (std::size_t k = n - 1; k-- > 0;)
    out.symbols[k] = x[k] != x[k + 1] ? out.symbols[k + 1] : 3 - out.symbols[k + 1];
  return out;
}

}  // namespace hmpz
