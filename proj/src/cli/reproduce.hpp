#pragma once

#include "output.hpp"

#include "hmpzeta/genfun.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hmpz::cli {

struct RatePair {
  RateCurve f;
  RateCurve g;
  std::vector<std::string> warnings;
};

// Evenly spaced grid with the given number of points, both ends included.
std::vector<double> linear_grid(double lo, double hi, int points);

RatePair compute_rates(std::shared_ptr<const ZetaFunction> zeta, double entropy, const std::vector<double>& eta_grid,
                       double n_cap = default_g_cap);

const std::vector<std::string>& reproduce_targets();

// Canned computation for a table or figure; table rows carry computed and reference values with pass flags.
Report reproduce(const std::string& target);

}  // namespace hmpz::cli
