#pragma once

#include "hmpzeta/hmp.hpp"
#include "hmpzeta/orbits.hpp"

#include <string>
#include <vector>

namespace hmpz {

// Default truncation order by alphabet size.
int default_order(int alphabet);

class OrbitWeightTable {
 public:
  OrbitWeightTable(OrbitSet orbits, std::vector<double> lambda);

  const OrbitSet& orbits() const { return orbits_; }
  int max_order() const { return orbits_.max_order(); }
  // Spectral radius of the orbit product, aligned with orbits().all().
  const std::vector<double>& lambda() const { return lambda_; }

 private:
  OrbitSet orbits_;
  std::vector<double> lambda_;
};

double orbit_weight(const HmpModel& model, const Orbit& orbit);
OrbitWeightTable orbit_weights(const HmpModel& model, const OrbitSet& orbits);

class ZetaPolynomial {
 public:
  ZetaPolynomial(double n, std::vector<Dual> coeff) : n_(n), coeff_(std::move(coeff)) {}

  int order() const { return static_cast<int>(coeff_.size()) - 1; }
  double n() const { return n_; }
  const std::vector<Dual>& coefficients() const { return coeff_; }
  const Dual& operator[](int k) const { return coeff_.at(static_cast<std::size_t>(k)); }

  // Value and n-derivative at z.
  Dual value(double z) const;
  // Derivative in z at z.
  double dz(double z) const;

 private:
  double n_;
  std::vector<Dual> coeff_;
};

// Product over orbits of (1 - z^p lambda^n), truncated at z^order (order <= table order, -1 for all).
ZetaPolynomial zeta_polynomial(const OrbitWeightTable& weights, double n, int order = -1);

struct ConvergenceThresholds {
  double ratio = 0.9;   // l1/lambda, or l2/lambda when the top modulus is degenerate
  double radius = 0.9;  // lambda itself
};

struct ConvergenceWarning {
  int symbol = 0;
  std::string kind;  // "subdominant_ratio", "radius", "degenerate_ratio"
  double value = 0.0;
  double threshold = 0.0;
  std::string message() const;
};

std::vector<ConvergenceWarning> convergence_warnings(const HmpModel& model,
                                                     const ConvergenceThresholds& thresholds = {});

struct EntropyDiagnostics {
  double residual = 0.0;    // xi_K(1,1)
  double tail_ratio = 0.0;  // |phi_K| / |phi_{K-1}| at n = 1
  double dxi_dz = 0.0;
  double dxi_dn = 0.0;
  std::vector<ConvergenceWarning> warnings;
};

struct EntropyEstimate {
  double entropy = 0.0;
  int order = 0;
  EntropyDiagnostics diagnostics;
};

EntropyEstimate entropy_from_polynomial(const ZetaPolynomial& poly);
EntropyEstimate entropy_cycle_expansion(const HmpModel& model, int order,
                                        const ConvergenceThresholds& thresholds = {});
EntropyEstimate entropy_cycle_expansion(const HmpModel& model, const OrbitWeightTable& weights, int order,
                                        const ConvergenceThresholds& thresholds = {});

}  // namespace hmpz
