#include "hmpzeta/zeta.hpp"

#include "hmpzeta/error.hpp"
#include "internal.hpp"

#include <sstream>

namespace hmpz {

int default_order(int alphabet) { return alphabet <= 2 ? 13 : 8; }

OrbitWeightTable::OrbitWeightTable(OrbitSet orbits, std::vector<double> lambda)
    : orbits_(std::move(orbits)), lambda_(std::move(lambda)) {
  if (lambda_.size() != orbits_.size()) throw DimensionError("orbit weight table size mismatch");
}

double orbit_weight(const HmpModel& model, const Orbit& orbit) {
  Matrix prod = model.transfer(orbit.letters[0]);
  for (std::size_t i = 1; i < orbit.letters.size(); ++i) prod = prod * model.transfer(orbit.letters[i]);
  try {
    return spectral_radius(prod);
  } catch (const NumericalError& e) {
    throw NumericalError("spectral radius failed for orbit " + orbit.word() + ": " + e.what());
  }
}

OrbitWeightTable orbit_weights(const HmpModel& model, const OrbitSet& orbits) {
  if (model.symbols() != orbits.alphabet())
    throw DimensionError("model has " + std::to_string(model.symbols()) + " symbols but orbits use " +
                         std::to_string(orbits.alphabet()));
  const auto& all = orbits.all();
  std::vector<double> lambda(all.size());
  detail::parallel_for(all.size(), [&](std::size_t i) { lambda[i] = orbit_weight(model, all[i]); });
  return OrbitWeightTable(orbits, std::move(lambda));
}

Dual ZetaPolynomial::value(double z) const {
  Dual acc{0.0, 0.0};
  for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) acc = acc * Dual{z, 0.0} + *it;
  return acc;
}

double ZetaPolynomial::dz(double z) const {
  double acc = 0.0;
  for (std::size_t k = coeff_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeff_[k].value;
  return acc;
}

ZetaPolynomial zeta_polynomial(const OrbitWeightTable& weights, double n, int order) {
  if (!(n > 0.0)) throw ValidationError("zeta polynomial needs n > 0");
  const int K = order < 0 ? weights.max_order() : order;
  if (K > weights.max_order())
    throw ValidationError("requested order " + std::to_string(K) + " exceeds the orbit table order " +
                          std::to_string(weights.max_order()));
  std::vector<Dual> c(static_cast<std::size_t>(K) + 1);
  c[0] = Dual{1.0, 0.0};
  const auto& orbits = weights.orbits().all();
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const int p = static_cast<int>(orbits[i].length());
    if (p > K) break;
    const Dual w = pow_n(weights.lambda()[i], n);
    for (int k = K; k >= p; --k) c[static_cast<std::size_t>(k)] -= w * c[static_cast<std::size_t>(k - p)];
  }
  return ZetaPolynomial(n, std::move(c));
}

std::string ConvergenceWarning::message() const {
  std::ostringstream os;
  os.precision(6);
  os << kind << " for T(" << symbol << "): " << value << " > " << threshold;
  return os.str();
}

std::vector<ConvergenceWarning> convergence_warnings(const HmpModel& model, const ConvergenceThresholds& t) {
  std::vector<ConvergenceWarning> out;
  for (int x = 1; x <= model.symbols(); ++x) {
    const auto s = spectrum_summary(model.transfer(x));
    if (s.radius > t.radius) out.push_back({x, "radius", s.radius, t.radius});
    if (s.radius <= 0.0) continue;
    if (s.degenerate) {
      if (s.third / s.radius > t.ratio) out.push_back({x, "degenerate_ratio", s.third / s.radius, t.ratio});
    } else if (s.second / s.radius > t.ratio) {
      out.push_back({x, "subdominant_ratio", s.second / s.radius, t.ratio});
    }
  }
  return out;
}

EntropyEstimate entropy_from_polynomial(const ZetaPolynomial& poly) {
  const Dual at_one = poly.value(1.0);
  const double dz = poly.dz(1.0);
  if (std::abs(dz) <= 1e-12)
    throw NumericalError("degenerate derivative: d xi / dz at (1,1) is " + std::to_string(dz));
  EntropyEstimate est;
  est.order = poly.order();
  est.entropy = -at_one.deriv / dz;
  est.diagnostics.residual = at_one.value;
  est.diagnostics.dxi_dz = dz;
  est.diagnostics.dxi_dn = at_one.deriv;
  const int K = poly.order();
  const double last = std::abs(poly[K].value);
  const double prev = K >= 1 ? std::abs(poly[K - 1].value) : 0.0;
  est.diagnostics.tail_ratio = prev > 0.0 ? last / prev : (last > 0.0 ? INFINITY : 0.0);
  return est;
}

EntropyEstimate entropy_cycle_expansion(const HmpModel& model, const OrbitWeightTable& weights, int order,
                                        const ConvergenceThresholds& thresholds) {
  if (order < 2) throw ValidationError("truncation order must be at least 2");
  auto est = entropy_from_polynomial(zeta_polynomial(weights, 1.0, order));
  est.diagnostics.warnings = convergence_warnings(model, thresholds);
  return est;
}

EntropyEstimate entropy_cycle_expansion(const HmpModel& model, int order, const ConvergenceThresholds& thresholds) {
  if (order < 2) throw ValidationError("truncation order must be at least 2");
  const auto weights = orbit_weights(model, enumerate_orbits(model.symbols(), order));
  return entropy_cycle_expansion(model, weights, order, thresholds);
}

}  // namespace hmpz
