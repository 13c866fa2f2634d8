#include "hmpzeta/matrix.hpp"

#include "hmpzeta/error.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace hmpz {

namespace {

using cplx = std::complex<double>;

bool is_upper_triangular(const Matrix& m) {
  for (Eigen::Index i = 1; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (m(i, j) != 0.0) return false;
  return true;
}

bool is_lower_triangular(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != 0.0) return false;
  return true;
}

std::vector<cplx> eigen2(const Matrix& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double half_tr = 0.5 * (a + d);
  const double det = a * d - b * c;
  // (a-d)^2/4 + bc avoids the cancellation in tr^2/4 - det
  const double disc = 0.25 * (a - d) * (a - d) + b * c;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    const double big = half_tr + std::copysign(root, half_tr);
    const double small = big != 0.0 ? det / big : half_tr - root;
    return {big, small};
  }
  const double im = std::sqrt(-disc);
  return {cplx(half_tr, im), cplx(half_tr, -im)};
}

double cubic_residual(double t, double p, double q) { return (t * t + p) * t + q; }

double polish_cubic_root(double t, double p, double q) {
  for (int it = 0; it < 3; ++it) {
    const double f = cubic_residual(t, p, q);
    const double df = 3.0 * t * t + p;
    if (f == 0.0 || df == 0.0) break;
    const double next = t - f / df;
    if (std::abs(cubic_residual(next, p, q)) >= std::abs(f)) break;
    t = next;
  }
  return t;
}

// Roots of the characteristic polynomial of the traceless shift B = A - tr(A)/3 I,
// i.e. t^3 + p t + q with p the principal 2x2 minor sum of B and q = -det(B).
std::vector<cplx> eigen3(const Matrix& m) {
  const double shift = m.trace() / 3.0;
  Matrix b = m;
  b.diagonal().array() -= shift;
  const double p = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0) + b(0, 0) * b(2, 2) - b(0, 2) * b(2, 0) +
                   b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1);
  const double q = -b.determinant();

  if (p == 0.0 && q == 0.0) return {shift, shift, shift};

  const double disc = 0.25 * q * q + p * p * p / 27.0;
  if (disc <= 0.0 && p < 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    std::vector<cplx> out;
    for (int k = 0; k < 3; ++k) {
      const double t = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
      out.emplace_back(polish_cubic_root(t, p, q) + shift);
    }
    return out;
  }

  // One real root by Cardano, taking the cube root of the larger-magnitude branch.
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double big = std::cbrt(-0.5 * q - std::copysign(sq, q));
  const double small = big != 0.0 ? -p / (3.0 * big) : 0.0;
  double t1 = polish_cubic_root(big + small, p, q);

  // Deflate: t^2 + t1 t + (p + t1^2).
  const double c0 = p + t1 * t1;
  const double qdisc = t1 * t1 - 4.0 * c0;
  std::vector<cplx> out{t1 + shift};
  if (qdisc < 0.0) {
    const double im = 0.5 * std::sqrt(-qdisc);
    out.emplace_back(-0.5 * t1 + shift, im);
    out.emplace_back(-0.5 * t1 + shift, -im);
  } else {
    const double root = std::sqrt(qdisc);
    const double r1 = -0.5 * t1 - std::copysign(0.5 * root, t1);
    const double r2 = r1 != 0.0 ? c0 / r1 : -0.5 * t1 + 0.5 * root;
    out.emplace_back(polish_cubic_root(r1, p, q) + shift);
    out.emplace_back(polish_cubic_root(r2, p, q) + shift);
  }
  return out;
}

std::vector<cplx> eigen_general(const Matrix& m) {
  Eigen::EigenSolver<Matrix> solver;
  solver.setMaxIterations(500);
  solver.compute(m, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration did not converge for matrix " + describe(m));
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

}  // namespace

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": matrix has non-finite entries");
}

std::string describe(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<cplx> eigenvalues(const Matrix& m) {
  require_square(m, "eigenvalues");
  require_finite(m, "eigenvalues");
  const auto n = m.rows();
  if (n == 1) return {m(0, 0)};
  if (is_upper_triangular(m) || is_lower_triangular(m)) {
    std::vector<cplx> out;
    for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(m(i, i));
    return out;
  }
  if (n == 2) return eigen2(m);
  if (n == 3) {
    // A clustered pair is only resolved to about sqrt(eps) through the cubic; QR does better.
    auto roots = eigen3(m);
    const double scale = m.cwiseAbs().maxCoeff();
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(roots[i] - roots[j]) <= 1e-4 * scale) return eigen_general(m);
    return roots;
  }
  return eigen_general(m);
}

std::vector<double> eigen_moduli(const Matrix& m) {
  std::vector<double> out;
  for (const auto& e : eigenvalues(m)) out.push_back(std::abs(e));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double spectral_radius(const Matrix& m) { return eigen_moduli(m).front(); }

std::vector<double> singular_values(const Matrix& m) {
  require_square(m, "singular_values");
  require_finite(m, "singular_values");
  Eigen::JacobiSVD<Matrix> svd(m);
  std::vector<double> out(svd.singularValues().data(),
                          svd.singularValues().data() + svd.singularValues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

SpectrumSummary spectrum_summary(const Matrix& m, double rel_tol) {
  const auto mod = eigen_moduli(m);
  SpectrumSummary s;
  s.radius = mod[0];
  s.second = mod.size() > 1 ? mod[1] : 0.0;
  s.third = mod.size() > 2 ? mod[2] : 0.0;
  s.degenerate = mod.size() > 1 && s.radius > 0.0 && s.radius - s.second <= rel_tol * s.radius;
  return s;
}

bool WeylReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const WeylItem& w) { return w.pass; });
}

WeylReport weyl_check(const Matrix& m, double rho, double rel_tol) {
  require_square(m, "weyl_check");
  if (!(rho > 0.0)) throw ValidationError("weyl_check: rho must be positive");
  const auto sigma = singular_values(m);
  const auto ell = eigen_moduli(m);
  const std::size_t n = sigma.size();
  const double top = sigma[0];

  WeylReport report;
  auto add = [&](std::string name, double lhs, double rhs, double scale) {
    // lhs >= rhs expected; the absolute floor covers rounding in near-singular factors
    const double slack = lhs - rhs;
    const double tol = rel_tol * std::max(std::abs(lhs), std::abs(rhs)) + 1e-12 * scale;
    report.items.push_back({std::move(name), lhs, rhs, slack, slack >= -tol});
  };

  double sp = 1.0, lp = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    sp *= sigma[k];
    lp *= ell[k];
    add("prefix_product_" + std::to_string(k + 1), sp, lp, std::pow(top, double(k + 1)));
  }
  double ss = 1.0, ls = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    ss *= sigma[n - 1 - k];
    ls *= ell[n - 1 - k];
    add("suffix_product_" + std::to_string(k + 1), ls, ss, std::pow(top, double(k + 1)));
  }
  const double det = std::abs(m.determinant());
  const double scale = std::pow(top, double(n));
  const double full_tol = rel_tol * std::max({sp, lp, det}) + 1e-12 * scale;
  const double gap = std::max(std::abs(sp - lp), std::abs(sp - det));
  report.items.push_back({"full_product_equality", sp, lp, -gap, gap <= full_tol});

  double sum_s = 0.0, sum_l = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum_s += std::pow(sigma[k], rho);
    sum_l += std::pow(ell[k], rho);
  }
  add("power_sum", sum_s, sum_l, std::pow(top, rho));
  return report;
}

}  // namespace hmpz
