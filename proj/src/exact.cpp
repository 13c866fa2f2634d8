#include "hmpzeta/exact.hpp"

#include "hmpzeta/error.hpp"
#include "hmpzeta/markov.hpp"
#include "internal.hpp"

#include <sstream>

namespace hmpz {

namespace {

constexpr double lerch_tol = 1e-14;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_series_argument(double y) {
  const double ay = std::abs(y);
  if (ay <= 1.0 - 1e-9) return;
  const long long needed =
      ay < 1.0 ? static_cast<long long>(std::ceil(std::log(lerch_tol) / std::log(ay))) : -1;
  throw ConvergenceError("Lerch series argument |y| = " + fmt(ay) + " is too close to 1; about " +
                             (needed < 0 ? std::string("infinitely many") : std::to_string(needed)) +
                             " terms would be needed",
                         needed);
}

[[noreturn]] void throw_term_cap(double y, long long k, double magnitude, double rho) {
  const long long extra =
      rho > 0.0 && rho < 1.0 ? static_cast<long long>(std::ceil(std::log(lerch_tol / magnitude) / std::log(rho))) : -1;
  const long long needed = extra < 0 ? -1 : k + extra;
  throw ConvergenceError("Lerch series at y = " + fmt(y) + " did not reach the tail tolerance within " +
                             std::to_string(lerch_term_cap) + " terms; about " + std::to_string(needed) +
                             " needed",
                         needed);
}

struct DualSeries {
  Dual value;
  long long terms = 0;
};

// Sum of (k+b)^n y^k with y and n carrying one common derivative direction.
DualSeries lerch_dual(const Dual& y, const Dual& n, double b) {
  require_series_argument(y.value);
  DualSeries out;
  if (y.value == 0.0 && y.deriv == 0.0) {
    out.value = pow_base(b, n);
    out.terms = 1;
    return out;
  }
  const double ay = std::abs(y.value);
  const double growth = std::max(n.value, 0.0) + 1.0;
  Dual ypow{1.0, 0.0};
  for (long long k = 0;; ++k) {
    const Dual term = pow_base(static_cast<double>(k) + b, n) * ypow;
    out.value += term;
    out.terms = k + 1;
    if (k >= 2 && static_cast<double>(k) + b >= 3.0) {
      const double kb = static_cast<double>(k) + b;
      const double rho = ay * std::pow((kb + 1.0) / kb, growth) * (static_cast<double>(k + 1) / static_cast<double>(k));
      const double mag = std::abs(term.value) + std::abs(term.deriv);
      if (rho < 1.0 && mag * rho / (1.0 - rho) < lerch_tol) break;
      if (k + 1 >= lerch_term_cap) throw_term_cap(y.value, k, mag, rho);
    }
    ypow *= y;
  }
  return out;
}

void require_prob(const char* name, double v) { detail::require_probability(name, v); }

}  // namespace

LerchEval lerch_phi(double y, double n, double b) {
  if (!(b > 0.0) && !(b == 0.0 && n > 0.0)) throw ValidationError("Lerch parameter b must be positive");
  const auto s = lerch_dual(Dual{y, 0.0}, Dual{n, 0.0}, b);
  return {y, n, b, s.value.value, s.terms};
}

LerchEval lerch_phi_log(double y, double b) {
  if (!(b >= 0.0)) throw ValidationError("Lerch parameter b must be non-negative");
  require_series_argument(y);
  const double ay = std::abs(y);
  LerchEval out{y, -1.0, b, 0.0, 0};
  double ypow = 1.0;
  detail::CompensatedSum sum;
  for (long long k = 0;; ++k) {
    const double kb = static_cast<double>(k) + b;
    const double term = -xlogx(kb) * ypow;
    sum.add(term);
    out.terms = k + 1;
    if (y == 0.0) break;
    if (kb >= 3.0) {
      const double rho = ay * ((kb + 1.0) / kb) * (std::log(kb + 1.0) / std::log(kb));
      if (rho < 1.0 && std::abs(term) * rho / (1.0 - rho) < lerch_tol) break;
      if (k + 1 >= lerch_term_cap) throw_term_cap(y, k, std::abs(term), rho);
    }
    ypow *= y;
  }
  out.value = sum.value();
  return out;
}

void validate(const Case1Params& p) {
  require_prob("p1", p.p1);
  require_prob("p2", p.p2);
  require_prob("q1", p.q1);
  require_prob("q2", p.q2);
  detail::require_nonnegative_sum_complement("p1+p2", p.p1 + p.p2);
  detail::require_nonnegative_sum_complement("q1+q2", p.q1 + p.q2);
}

void validate(const Case2Params& p) {
  require_prob("p1", p.p1);
  require_prob("p2", p.p2);
  require_prob("q", p.q);
  require_prob("r", p.r);
  detail::require_nonnegative_sum_complement("p1+p2", p.p1 + p.p2);
}

namespace {

struct Case1Consts {
  double stay1, stay2, spread, mixed, chain, b;
  bool has_series;
};

Case1Consts case1_consts(const Case1Params& p) {
  Case1Consts c{};
  c.stay1 = std::max(0.0, 1.0 - p.p1 - p.p2);
  c.spread = p.q1 + p.q2;
  c.stay2 = std::max(0.0, 1.0 - c.spread);
  c.mixed = p.p1 * p.q1 + p.p2 * c.spread;
  c.chain = p.p1 * p.q2 * c.spread;
  c.has_series = c.chain > 0.0;
  c.b = c.has_series ? c.stay2 * (p.p2 * c.spread + p.p1 * p.q1) / c.chain : 0.0;
  return c;
}

Dual case1_eval(const Case1Params& p, const Dual& z, const Dual& n, long long* terms) {
  const auto c = case1_consts(p);
  const Dual a1 = pow_base(c.stay1, n);
  const Dual a2 = pow_base(c.stay2, n);
  const Dual phi1 = -(a1 + a2);
  const Dual phi2 = a1 * a2 - pow_base(c.mixed, n);
  Dual phi3{0.0, 0.0};
  long long used = 0;
  const Dual y = a2 * z;
  if (std::abs(y.value) >= 1.0)
    throw DomainError("case-1 zeta: |z (1-q1-q2)^n| = " + fmt(std::abs(y.value)) + " lies outside the unit disk");
  if (c.has_series) {
    const auto s0 = lerch_dual(y, n, c.b);
    const auto s1 = lerch_dual(y, n, c.b + 1.0);
    phi3 = pow_base(c.chain, n) * (s0.value - s1.value);
    used = std::max(s0.terms, s1.terms);
  }
  if (terms) *terms = used;
  return Dual{1.0, 0.0} + phi1 * z + phi2 * z * z + phi3 * z * z * z;
}

Dual case2_eval(const Case2Params& p, const Dual& z, const Dual& n) {
  const double stay1 = std::max(0.0, 1.0 - p.p1 - p.p2);
  const double alpha = p.p1 * p.q + p.p2 * p.r;
  const double beta = p.p1 * p.r * (1.0 - p.q) + p.p2 * p.q * (1.0 - p.r);
  const Dual a1 = pow_base(stay1, n);
  const Dual c = pow_base((1.0 - p.q) * (1.0 - p.r), n * Dual{0.5, 0.0});
  const Dual an = pow_base(alpha, n);
  const Dual bn = pow_base(beta, n);
  if (std::abs(z.value * c.value) >= 1.0)
    throw DomainError("case-2 zeta: |z| = " + fmt(std::abs(z.value)) + " outside the convergence region |z| < " +
                      fmt(1.0 / c.value));
  const Dual z2 = z * z;
  const Dual tail = z2 * z / (Dual{1.0, 0.0} + z * c) * (an * c - bn);
  return Dual{1.0, 0.0} - (a1 + c) * z + (a1 * c - an) * z2 + tail;
}

}  // namespace

long long exact_zeta_case1_terms(const Case1Params& p, double z, double n) {
  validate(p);
  long long terms = 0;
  case1_eval(p, Dual{z, 0.0}, Dual{n, 0.0}, &terms);
  return terms;
}

double exact_zeta_case1(const Case1Params& p, double z, double n) {
  validate(p);
  return case1_eval(p, Dual{z, 0.0}, Dual{n, 0.0}, nullptr).value;
}

ZetaJet exact_zeta_case1_jet(const Case1Params& p, double z, double n) {
  validate(p);
  const Dual along_z = case1_eval(p, Dual{z, 1.0}, Dual{n, 0.0}, nullptr);
  const Dual along_n = case1_eval(p, Dual{z, 0.0}, Dual{n, 1.0}, nullptr);
  return {along_z.value, along_z.deriv, along_n.deriv};
}

double exact_entropy_case1(const Case1Params& p) {
  validate(p);
  const auto c = case1_consts(p);
  if (!(c.spread > 0.0)) throw ValidationError("case-1 entropy needs q1+q2 > 0");
  const double pq = p.p1 * p.q2;
  const double denom = p.p1 + p.p2 + c.spread + pq / c.spread;
  if (!(denom > 0.0)) throw ValidationError("case-1 entropy: degenerate parameters");
  double t = c.spread * xlogx(c.stay1) + (p.p1 + p.p2 + pq / c.spread) * xlogx(c.stay2) + xlogx(c.mixed);
  if (c.has_series) {
    t += pq * std::log(c.chain);
    t += c.chain * (lerch_phi_log(c.stay2, c.b).value - lerch_phi_log(c.stay2, c.b + 1.0).value);
  }
  return -t / denom;
}

double exact_zeta_case2(const Case2Params& p, double z, double n) {
  validate(p);
  return case2_eval(p, Dual{z, 0.0}, Dual{n, 0.0}).value;
}

ZetaJet exact_zeta_case2_jet(const Case2Params& p, double z, double n) {
  validate(p);
  const Dual along_z = case2_eval(p, Dual{z, 1.0}, Dual{n, 0.0});
  const Dual along_n = case2_eval(p, Dual{z, 0.0}, Dual{n, 1.0});
  return {along_z.value, along_z.deriv, along_n.deriv};
}

double exact_entropy_case2(const Case2Params& p) {
  validate(p);
  const double stay1 = 1.0 - p.p1 - p.p2;
  const double alpha = p.p1 * p.q + p.p2 * p.r;
  const double beta = p.p1 * p.r * (1.0 - p.q) + p.p2 * p.q * (1.0 - p.r);
  const double denom = 2.0 * (p.p1 + p.p2) + p.q * (1.0 - p.p1) + p.r * (1.0 - p.p2) - p.q * p.r;
  if (!(denom > 0.0)) throw ValidationError("case-2 entropy: degenerate parameters");
  const double t = (p.q * (1.0 - p.r) + p.r) * xlogx(stay1) + (p.p1 + p.p2) * xlogx((1.0 - p.q) * (1.0 - p.r)) +
                   xlogx(alpha) + xlogx(beta);
  return -t / denom;
}

double markov_entropy_case2(const Case2Params& p) {
  validate(p);
  const double denom = 2.0 * (p.p1 + p.p2) + p.q * (1.0 - p.p1) + p.r * (1.0 - p.p2) - p.q * p.r;
  if (!(denom > 0.0)) throw ValidationError("case-2 Markov entropy: degenerate parameters");
  const double t = (p.q * (1.0 - p.r) + p.r) * (xlogx(1.0 - p.p1 - p.p2) + xlogx(p.p1) + xlogx(p.p2)) +
                   ((1.0 - p.r) * (p.p1 + p.p2) + p.p1 * p.r) * (xlogx(p.q) + xlogx(1.0 - p.q)) +
                   (p.p2 + p.p1 * (1.0 - p.q)) * (xlogx(p.r) + xlogx(1.0 - p.r));
  return -t / denom;
}

namespace {

void require_small_noise_args(double q, double eps) {
  if (!(q > 0.0 && q <= 0.5))
    throw DomainError("small-noise expansion needs q in (0, 1/2]; use h(q, eps) = h(1-q, eps) for q > 1/2");
  if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in [0,1]");
}

}  // namespace

double small_noise_entropy(double q, double eps) {
  require_small_noise_args(q, eps);
  const double d = 1.0 - 2.0 * q;
  const double lr = std::log((1.0 - q) / q);
  const double markov = -xlogx(1.0 - q) - xlogx(q);
  const double first = 2.0 * eps * d * lr;
  const double second = -2.0 * eps * eps * d * (lr + d / (4.0 * (1.0 - q) * (1.0 - q) * q * q));
  return markov + first + second;
}

double small_noise_phi(double q, double eps, double n, int k) {
  require_small_noise_args(q, eps);
  const double d = 1.0 - 2.0 * q;
  const double e2 = eps * eps;
  const double u = 1.0 - q;
  switch (k) {
    case 1:
      return -2.0 * std::pow(u, n) + 2.0 * eps * n * std::pow(u, n - 2.0) * d -
             e2 * n * std::pow(u, n - 4.0) * d * (d * (n - 1.0 - q) + q);
    case 2:
      return std::pow(u, 2.0 * n) - std::pow(q, 2.0 * n) -
             2.0 * eps * n * d * (std::pow(u, 2.0 * (n - 1.0)) + std::pow(q, 2.0 * (n - 1.0))) -
             e2 * n * d *
                 (std::pow(q, 2.0 * (n - 2.0)) * (d * (q + 2.0 * n - 3.0) - q) +
                  std::pow(u, 2.0 * (n - 2.0)) * (d * (q + 1.0 - 2.0 * n) - q));
    case 3: {
      const double poly = 5.0 - 3.0 * n + 4.0 * q * (3.0 * n - 5.0) + 2.0 * q * q * (16.0 - 7.0 * n) +
                          4.0 * q * q * q * (n - 6.0) + 10.0 * q * q * q * q;
      return 2.0 * eps * n * d * d * std::pow(u, n - 2.0) * std::pow(q, 2.0 * (n - 1.0)) -
             e2 * n * d * d * std::pow(u, n - 4.0) * std::pow(q, 2.0 * (n - 2.0)) * poly;
    }
    case 4:
      return e2 * n * d * d * d * std::pow(u, 2.0 * (n - 2.0)) * std::pow(q, 2.0 * (n - 2.0)) *
             (2.0 - 4.0 * q * u - n * d);
    default:
      throw ValidationError("small-noise coefficient index must be 1..4");
  }
}

double small_noise_lambda(double q, double eps, double n) {
  require_small_noise_args(q, eps);
  const double u = 1.0 - q;
  const double lead = std::pow(q, n) + std::pow(u, n);
  const double num = std::pow(u, 2.0 * n) * q * q - u * u * std::pow(q, 2.0 * n);
  return lead - eps * n * (1.0 - 2.0 * q) * num / (q * q * u * u * lead);
}

}  // namespace hmpz
