#pragma once

#include "hmpzeta/exact.hpp"
#include "hmpzeta/zeta.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace hmpz {

// xi(z, n) with its partial derivatives; implementations may throw DomainError
// when z leaves their convergence region.
class ZetaFunction {
 public:
  virtual ~ZetaFunction() = default;
  virtual ZetaJet eval(double z, double n) const = 0;
  virtual std::string label() const = 0;
};

class TruncatedZeta : public ZetaFunction {
 public:
  TruncatedZeta(OrbitWeightTable weights, int order);
  TruncatedZeta(const HmpModel& model, int order);
  ZetaJet eval(double z, double n) const override;
  std::string label() const override;
  int order() const { return order_; }

 private:
  const ZetaPolynomial& polynomial(double n) const;
  OrbitWeightTable weights_;
  int order_;
  mutable std::mutex cache_guard_;
  mutable std::map<double, ZetaPolynomial> cache_;
};

class ExactCase1Zeta : public ZetaFunction {
 public:
  explicit ExactCase1Zeta(Case1Params p);
  ZetaJet eval(double z, double n) const override { return exact_zeta_case1_jet(p_, z, n); }
  std::string label() const override { return "exact_case1"; }

 private:
  Case1Params p_;
};

class ExactCase2Zeta : public ZetaFunction {
 public:
  explicit ExactCase2Zeta(Case2Params p);
  ZetaJet eval(double z, double n) const override { return exact_zeta_case2_jet(p_, z, n); }
  std::string label() const override { return "exact_case2"; }

 private:
  Case2Params p_;
};

struct TrackPoint {
  double n = 0.0;
  double z = 0.0;          // root of xi(., n)
  double lambda = 0.0;     // 1 / z
  double dlog_dn = 0.0;    // d ln Lambda / dn from the implicit derivative
  int refinements = 0;     // step halvings needed to keep the root continuous
  bool flagged = false;
};

class LambdaTrack {
 public:
  LambdaTrack(std::shared_ptr<const ZetaFunction> zeta, std::vector<TrackPoint> points);

  const std::vector<TrackPoint>& points() const { return points_; }
  const ZetaFunction& zeta() const { return *zeta_; }
  double n_min() const { return points_.front().n; }
  double n_max() const { return points_.back().n; }

  // Root at an arbitrary n inside the grid, continued from the nearest grid point.
  TrackPoint at(double n) const;
  double log_lambda(double n) const { return std::log(at(n).lambda); }

  // Smallest discrete second difference of ln Lambda over the grid.
  double min_second_difference() const;
  // Grid points the march could not reach.
  const std::vector<double>& unreached() const { return unreached_; }
  void set_unreached(std::vector<double> n) { unreached_ = std::move(n); }

 private:
  std::shared_ptr<const ZetaFunction> zeta_;
  std::vector<TrackPoint> points_;
  std::vector<double> unreached_;
};

// Evenly spaced grid from lo to hi that contains 1 exactly.
std::vector<double> make_n_grid(double lo, double hi, double step = 0.05);

enum class TrackFailure {
  fail,      // throw TrackingError at the offending n
  truncate,  // stop that side of the march and flag its last good point
};

LambdaTrack lambda_of_n(std::shared_ptr<const ZetaFunction> zeta, const std::vector<double>& n_grid,
                        TrackFailure on_failure = TrackFailure::fail);
LambdaTrack lambda_of_n(const HmpModel& model, int order, const std::vector<double>& n_grid,
                        TrackFailure on_failure = TrackFailure::fail);

struct RatePoint {
  double eta = 0.0;
  double rate = 0.0;
  double n_star = 0.0;
  bool flagged = false;  // maximizer sits on the search boundary
};

struct RateCurve {
  std::vector<RatePoint> points;
  double entropy = 0.0;
  // Smallest discrete second difference of the rate over an evenly spaced eta grid.
  double min_second_difference() const;
};

inline constexpr double default_g_cap = 12.0;

// Track grids suited to the two maximizations: (0,1] for f and [1, cap] for g.
std::vector<double> default_track_grid(double n_cap = default_g_cap);

RateCurve rate_function_f(const LambdaTrack& track, double entropy, const std::vector<double>& eta_grid);
RateCurve rate_function_g(const LambdaTrack& track, double entropy, const std::vector<double>& eta_grid,
                          double n_cap = default_g_cap);

struct OrderingReport {
  std::string relation;
  bool holds = false;
  double worst_margin = 0.0;  // smallest (rhs - lhs) over the grid
  double worst_eta = 0.0;
};

// Pointwise check that lhs(eta) < rhs(eta) on the shared grid.
OrderingReport compare_rates(const std::string& relation, const RateCurve& lhs, const RateCurve& rhs);

}  // namespace hmpz
