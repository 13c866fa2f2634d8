#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace hmpz {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

void require_square(const Matrix& m, std::string_view what);
void require_finite(const Matrix& m, std::string_view what);
std::string describe(const Matrix& m);

// Value paired with its derivative in the exponent parameter n.
struct Dual {
  double value = 0.0;
  double deriv = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v, double d = 0.0) : value(v), deriv(d) {}

  Dual& operator+=(const Dual& o) { value += o.value; deriv += o.deriv; return *this; }
  Dual& operator-=(const Dual& o) { value -= o.value; deriv -= o.deriv; return *this; }
  Dual& operator*=(const Dual& o) {
    deriv = deriv * o.value + value * o.deriv;
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    deriv = (deriv * o.value - value * o.deriv) / (o.value * o.value);
    value /= o.value;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.value, -a.deriv}; }

// base^n for base >= 0 where n carries its own derivative; 0^n = 0 with zero slope for n > 0.
inline Dual pow_base(double base, const Dual& n) {
  if (base == 0.0) return {n.value == 0.0 ? 1.0 : 0.0, 0.0};
  const double v = std::pow(base, n.value);
  return {v, v * std::log(base) * n.deriv};
}

// lambda^n as a function of n itself.
inline Dual pow_n(double lambda, double n) { return pow_base(lambda, Dual{n, 1.0}); }

std::vector<std::complex<double>> eigenvalues(const Matrix& m);
std::vector<double> eigen_moduli(const Matrix& m);
double spectral_radius(const Matrix& m);
std::vector<double> singular_values(const Matrix& m);

struct SpectrumSummary {
  double radius = 0.0;
  double second = 0.0;  // second-largest modulus
  double third = 0.0;
  bool degenerate = false;  // top modulus shared by two eigenvalues
};

SpectrumSummary spectrum_summary(const Matrix& m, double rel_tol = 1e-9);

struct WeylItem {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // signed margin; negative beyond tolerance means failure
  bool pass = false;
};

struct WeylReport {
  std::vector<WeylItem> items;
  bool all_pass() const;
};

// Singular-value / eigen-modulus majorization relations with relative tolerance.
WeylReport weyl_check(const Matrix& m, double rho, double rel_tol = 1e-10);

}  // namespace hmpz
