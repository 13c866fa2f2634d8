#include "hmpzeta/genfun.hpp"

#include "hmpzeta/error.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace hmpz {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

constexpr int newton_max_iterations = 100;
constexpr int max_halvings = 60;

// Newton in z at fixed n with step damping whenever an iterate leaves the zeta's domain.
std::optional<double> newton_root(const ZetaFunction& zeta, double n, double z0) {
  double z = z0;
  ZetaJet j;
  try {
    j = zeta.eval(z, n);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  for (int it = 0; it < newton_max_iterations; ++it) {
    if (j.dz == 0.0 || !std::isfinite(j.dz)) return std::nullopt;
    double step = j.value / j.dz;
    bool moved = false;
    for (int damp = 0; damp < 60; ++damp) {
      try {
        const ZetaJet next = zeta.eval(z - step, n);
        z -= step;
        j = next;
        moved = true;
        break;
      } catch (const DomainError&) {
        step *= 0.5;
      }
    }
    if (!moved) return std::nullopt;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return z;
  }
  return std::nullopt;
}

TrackPoint make_point(const ZetaFunction& zeta, double n, double z) {
  const ZetaJet j = zeta.eval(z, n);
  TrackPoint p;
  p.n = n;
  p.z = z;
  p.lambda = 1.0 / z;
  p.dlog_dn = j.dz != 0.0 ? (j.dn / j.dz) / z : 0.0;
  return p;
}

double dz_dn(const ZetaFunction& zeta, const TrackPoint& from) {
  const ZetaJet j = zeta.eval(from.z, from.n);
  return j.dz != 0.0 ? -j.dn / j.dz : 0.0;
}

// Advances the root from a known point to target n, halving the n-step whenever the
// Newton result strays from the tangent prediction by more than half the predicted move.
std::optional<TrackPoint> continue_root(const ZetaFunction& zeta, const TrackPoint& from, double target) {
  std::vector<double> pending{target};
  TrackPoint cur = from;
  int halvings = 0;
  while (!pending.empty()) {
    const double n_next = pending.back();
    const double h = n_next - cur.n;
    const double predicted_move = dz_dn(zeta, cur) * h;
    const double z_pred = cur.z + predicted_move;
    const auto root = newton_root(zeta, n_next, z_pred);
    const bool ok = root && *root > 0.0 &&
                    std::abs(*root - z_pred) <= 0.5 * std::abs(predicted_move) + 1e-9 * std::max(1.0, cur.z);
    if (ok) {
      cur = make_point(zeta, n_next, *root);
      pending.pop_back();
      continue;
    }
    if (++halvings > max_halvings) return std::nullopt;
    pending.push_back(cur.n + 0.5 * h);
  }
  cur.refinements = halvings;
  cur.flagged = halvings > 0;
  return cur;
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("n grid is empty");
  bool has_one = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) throw ValidationError("n grid values must be positive");
    if (std::abs(grid[i] - 1.0) <= 1e-12) has_one = true;
    if (i > 0) {
      const double gap = grid[i] - grid[i - 1];
      if (!(gap > 0.0)) throw ValidationError("n grid must be strictly increasing");
      if (gap > 0.05 + 1e-12) throw ValidationError("n grid spacing " + fmt(gap) + " exceeds 0.05");
    }
  }
  if (!has_one) throw ValidationError("n grid must contain n = 1");
}

}  // namespace

TruncatedZeta::TruncatedZeta(OrbitWeightTable weights, int order) : weights_(std::move(weights)), order_(order) {
  if (order_ < 1 || order_ > weights_.max_order())
    throw ValidationError("truncation order " + std::to_string(order_) + " not covered by the orbit table");
}

TruncatedZeta::TruncatedZeta(const HmpModel& model, int order)
    : TruncatedZeta(orbit_weights(model, enumerate_orbits(model.symbols(), order)), order) {}

const ZetaPolynomial& TruncatedZeta::polynomial(double n) const {
  std::lock_guard lock(cache_guard_);
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  if (cache_.size() > 4096) cache_.clear();
  return cache_.emplace(n, zeta_polynomial(weights_, n, order_)).first->second;
}

ZetaJet TruncatedZeta::eval(double z, double n) const {
  const auto& poly = polynomial(n);
  const Dual v = poly.value(z);
  return {v.value, poly.dz(z), v.deriv};
}

std::string TruncatedZeta::label() const { return "truncated_K" + std::to_string(order_); }

ExactCase1Zeta::ExactCase1Zeta(Case1Params p) : p_(p) { validate(p_); }
ExactCase2Zeta::ExactCase2Zeta(Case2Params p) : p_(p) { validate(p_); }

LambdaTrack::LambdaTrack(std::shared_ptr<const ZetaFunction> zeta, std::vector<TrackPoint> points)
    : zeta_(std::move(zeta)), points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("empty Lambda track");
}

TrackPoint LambdaTrack::at(double n) const {
  if (n < n_min() - 1e-12 || n > n_max() + 1e-12)
    throw ValidationError("n = " + fmt(n) + " outside the tracked range [" + fmt(n_min()) + ", " + fmt(n_max()) + "]");
  auto it = std::lower_bound(points_.begin(), points_.end(), n,
                             [](const TrackPoint& p, double v) { return p.n < v; });
  const TrackPoint* nearest = nullptr;
  if (it == points_.end()) {
    nearest = &points_.back();
  } else if (it == points_.begin()) {
    nearest = &*it;
  } else {
    nearest = (it->n - n < n - std::prev(it)->n) ? &*it : &*std::prev(it);
  }
  if (nearest->n == n) return *nearest;
  const auto p = continue_root(*zeta_, *nearest, n);
  if (!p) throw TrackingError("root continuation failed at n = " + fmt(n), n);
  return *p;
}

double LambdaTrack::min_second_difference() const {
  double worst = INFINITY;
  for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
    const double h1 = points_[i].n - points_[i - 1].n;
    const double h2 = points_[i + 1].n - points_[i].n;
    const double l0 = std::log(points_[i - 1].lambda), l1 = std::log(points_[i].lambda),
                 l2 = std::log(points_[i + 1].lambda);
    // divided difference scaled to a unit step so the threshold is grid-independent
    const double second = 2.0 * ((l2 - l1) / h2 - (l1 - l0) / h1) / (h1 + h2) * h1 * h2;
    worst = std::min(worst, second);
  }
  return worst;
}

std::vector<double> make_n_grid(double lo, double hi, double step) {
  if (!(lo > 0.0) || !(hi >= 1.0) || lo > 1.0 || !(step > 0.0) || step > 0.05)
    throw ValidationError("n grid needs 0 < lo <= 1 <= hi and 0 < step <= 0.05");
  std::vector<double> grid;
  for (long k = static_cast<long>(std::floor((1.0 - lo) / step + 1e-9)); k >= 1; --k) grid.push_back(1.0 - k * step);
  if (lo < 1.0 - 1e-12 && (grid.empty() || grid.front() - lo > 1e-12)) grid.insert(grid.begin(), lo);
  grid.push_back(1.0);
  const long up = static_cast<long>(std::floor((hi - 1.0) / step + 1e-9));
  for (long k = 1; k <= up; ++k) grid.push_back(1.0 + k * step);
  if (hi - grid.back() > 1e-12) grid.push_back(hi);
  return grid;
}

LambdaTrack lambda_of_n(std::shared_ptr<const ZetaFunction> zeta, const std::vector<double>& n_grid,
                        TrackFailure on_failure) {
  validate_grid(n_grid);
  std::vector<double> grid = n_grid;
  const auto one = std::find_if(grid.begin(), grid.end(), [](double v) { return std::abs(v - 1.0) <= 1e-12; });
  *one = 1.0;
  const auto i1 = static_cast<std::size_t>(one - grid.begin());

  const auto root1 = newton_root(*zeta, 1.0, 1.0);
  if (!root1) throw TrackingError("Newton iteration failed to converge at n = 1", 1.0);
  std::vector<std::optional<TrackPoint>> pts(grid.size());
  pts[i1] = make_point(*zeta, 1.0, *root1);
  std::vector<double> unreached;

  auto march = [&](long start, long stop, long dir) {
    for (long i = start; i != stop; i += dir) {
      const auto& prev = *pts[static_cast<std::size_t>(i - dir)];
      auto next = continue_root(*zeta, prev, grid[static_cast<std::size_t>(i)]);
      if (!next) {
        if (on_failure == TrackFailure::fail)
          throw TrackingError("root tracking lost the branch at n = " + fmt(grid[static_cast<std::size_t>(i)]),
                              grid[static_cast<std::size_t>(i)]);
        pts[static_cast<std::size_t>(i - dir)]->flagged = true;
        for (long k = i; k != stop; k += dir) unreached.push_back(grid[static_cast<std::size_t>(k)]);
        return;
      }
      pts[static_cast<std::size_t>(i)] = *next;
    }
  };
  march(static_cast<long>(i1) + 1, static_cast<long>(grid.size()), 1);
  march(static_cast<long>(i1) - 1, -1, -1);

  std::vector<TrackPoint> out;
  for (auto& p : pts)
    if (p) out.push_back(*p);
  std::sort(unreached.begin(), unreached.end());
  LambdaTrack track(std::move(zeta), std::move(out));
  track.set_unreached(std::move(unreached));
  return track;
}

LambdaTrack lambda_of_n(const HmpModel& model, int order, const std::vector<double>& n_grid, TrackFailure on_failure) {
  return lambda_of_n(std::make_shared<TruncatedZeta>(model, order), n_grid, on_failure);
}

std::vector<double> default_track_grid(double n_cap) { return make_n_grid(0.01, n_cap); }

namespace {

struct Maximum {
  double n = 0.0;
  double value = 0.0;
};

template <class F>
Maximum golden_section(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-8) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Maximum best{a, f(a)};
  for (double x : {b, 0.5 * (a + b)}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

// Maximizes -ln Lambda(n) + (1 - n) * slope over the candidate lattice, refining around the best.
RatePoint maximize(const LambdaTrack& track, const std::vector<double>& lattice, const std::vector<double>& log_lambda,
                   double slope, double eta, double lower, double upper) {
  std::size_t best = 0;
  double best_value = -INFINITY;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double v = -log_lambda[i] + (1.0 - lattice[i]) * slope;
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = best == 0 ? lower : lattice[best - 1];
  const double hi = best + 1 == lattice.size() ? upper : lattice[best + 1];
  auto objective = [&](double n) { return -track.log_lambda(n) + (1.0 - n) * slope; };
  Maximum m = golden_section(objective, lo, hi);
  if (best_value > m.value) m = {lattice[best], best_value};
  return RatePoint{eta, m.value, m.n, false};
}

}  // namespace

RateCurve rate_function_f(const LambdaTrack& track, double entropy, const std::vector<double>& eta_grid) {
  const double lower = track.n_min();
  const double upper = std::min(1.0, track.n_max());
  std::vector<double> lattice;
  for (int j = 1; j <= 64; ++j) {
    const double n = j / 65.0;
    if (n > lower && n < upper) lattice.push_back(n);
  }
  lattice.insert(lattice.begin(), lower);
  lattice.push_back(upper);
  std::vector<double> logs;
  for (double n : lattice) logs.push_back(track.log_lambda(n));

  RateCurve curve;
  curve.entropy = entropy;
  for (double eta : eta_grid) {
    if (!(eta >= 0.0)) throw ValidationError("eta grid must be non-negative");
    auto p = maximize(track, lattice, logs, (1.0 + eta) * entropy, eta, lower, upper);
    p.flagged = p.n_star - lower < 1e-6;
    curve.points.push_back(p);
  }
  return curve;
}

RateCurve rate_function_g(const LambdaTrack& track, double entropy, const std::vector<double>& eta_grid,
                          double n_cap) {
  const double lower = std::max(1.0, track.n_min());
  const double upper = std::min(n_cap, track.n_max());
  if (!(upper > lower)) throw ValidationError("Lambda track does not extend above n = 1");
  std::vector<double> lattice{lower};
  for (int j = 1; j <= 64; ++j) lattice.push_back(lower + j * (upper - lower) / 64.0);
  std::vector<double> logs;
  for (double n : lattice) logs.push_back(track.log_lambda(n));

  RateCurve curve;
  curve.entropy = entropy;
  for (double eta : eta_grid) {
    if (!(eta >= 0.0 && eta < 1.0)) throw ValidationError("eta grid for g must lie in [0,1)");
    auto p = maximize(track, lattice, logs, (1.0 - eta) * entropy, eta, lower, upper);
    p.flagged = upper - p.n_star < 1e-6;
    curve.points.push_back(p);
  }
  return curve;
}

double RateCurve::min_second_difference() const {
  double worst = INFINITY;
  for (std::size_t i = 1; i + 1 < points.size(); ++i)
    worst = std::min(worst, points[i + 1].rate - 2.0 * points[i].rate + points[i - 1].rate);
  return worst;
}

OrderingReport compare_rates(const std::string& relation, const RateCurve& lhs, const RateCurve& rhs) {
  if (lhs.points.size() != rhs.points.size()) throw ValidationError("rate curves use different eta grids");
  OrderingReport r;
  r.relation = relation;
  r.worst_margin = INFINITY;
  for (std::size_t i = 0; i < lhs.points.size(); ++i) {
    const double margin = rhs.points[i].rate - lhs.points[i].rate;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_eta = lhs.points[i].eta;
    }
  }
  r.holds = r.worst_margin > 0.0;
  return r;
}

}  // namespace hmpz
