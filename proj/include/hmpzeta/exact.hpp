#pragma once

#include "hmpzeta/matrix.hpp"

namespace hmpz {

struct LerchEval {
  double y = 0.0;
  double n = 0.0;
  double b = 0.0;
  double value = 0.0;
  long long terms = 0;
};

inline constexpr long long lerch_term_cap = 10'000'000;

// Sum over k >= 0 of (k+b)^n y^k.
LerchEval lerch_phi(double y, double n, double b);
// Sum over k >= 0 of ln(1/(k+b)) (k+b) y^k, the b-derivative companion series.
LerchEval lerch_phi_log(double y, double b);

// Value with both partial derivatives.
struct ZetaJet {
  double value = 0.0;
  double dz = 0.0;
  double dn = 0.0;
};

// Aggregated model with r2 = 0, r1 = q1 + q2.
struct Case1Params {
  double p1, p2, q1, q2;
};

// Aggregated model with q1 + q2 = 1, r1 + r2 = 1.
struct Case2Params {
  double p1, p2, q, r;
};

void validate(const Case1Params& p);
void validate(const Case2Params& p);

// Number of Lerch terms the case-1 form needs at (z, n); 1 when y vanishes.
long long exact_zeta_case1_terms(const Case1Params& p, double z, double n);

double exact_zeta_case1(const Case1Params& p, double z, double n);
ZetaJet exact_zeta_case1_jet(const Case1Params& p, double z, double n);
double exact_entropy_case1(const Case1Params& p);

double exact_zeta_case2(const Case2Params& p, double z, double n);
ZetaJet exact_zeta_case2_jet(const Case2Params& p, double z, double n);
double exact_entropy_case2(const Case2Params& p);
double markov_entropy_case2(const Case2Params& p);

// Binary symmetric model at small channel noise, q in (0, 1/2].
double small_noise_entropy(double q, double eps);
double small_noise_phi(double q, double eps, double n, int k);
double small_noise_lambda(double q, double eps, double n);

}  // namespace hmpz
