#include "hmpzeta/markov.hpp"

#include "hmpzeta/error.hpp"

#include <algorithm>
#include <sstream>

namespace hmpz {

namespace {

Vector solve_fixed_vector(const Matrix& p) {
  const auto n = p.rows();
  Matrix a(n + 1, n);
  a.topRows(n) = p - Matrix::Identity(n, n);
  a.row(n).setOnes();
  Vector rhs = Vector::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < n) {
    throw MixingError("transition matrix has a degenerate unit eigenvalue (modulus 1); "
                      "the stationary distribution is not unique",
                      1.0);
  }
  Vector v = qr.solve(rhs);
  v = v.cwiseMax(0.0);
  v /= v.sum();
  return v;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> pattern_product(
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& b) {
  const auto n = a.rows();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      bool any = false;
      for (Eigen::Index k = 0; k < n && !any; ++k) any = a(i, k) && b(k, j);
      out(i, j) = any;
    }
  return out;
}

}  // namespace

void require_column_stochastic(const Matrix& p, double tol) {
  require_square(p, "transition matrix");
  require_finite(p, "transition matrix");
  if ((p.array() < 0.0).any()) throw ValidationError("transition matrix has negative entries");
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const double s = p.col(j).sum();
    if (std::abs(s - 1.0) > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "transition matrix column " << j + 1 << " sums to " << s << ", expected 1";
      throw ValidationError(os.str());
    }
  }
}

MixingReport mixing_check(const Matrix& p) {
  require_column_stochastic(p);
  const auto n = p.rows();
  MixingReport r;
  r.strictly_positive = (p.array() > 0.0).all();
  r.positive_diagonal = (p.diagonal().array() > 0.0).all();

  const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> base = (p.array() > 0.0).matrix();
  auto power = base;
  const long bound = n * n - 2 * n + 2;
  for (long k = 1; k <= std::max<long>(bound, 1); ++k) {
    if (power.all()) {
      r.primitive = true;
      r.primitive_power = static_cast<int>(k);
      break;
    }
    power = pattern_product(power, base);
  }

  // Drop the eigenvalue nearest to 1; the largest remaining modulus is the gap indicator.
  const auto ev = eigenvalues(p);
  std::size_t unit = 0;
  for (std::size_t i = 1; i < ev.size(); ++i)
    if (std::abs(ev[i] - 1.0) < std::abs(ev[unit] - 1.0)) unit = i;
  r.second_modulus = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i)
    if (i != unit) r.second_modulus = std::max(r.second_modulus, std::abs(ev[i]));
  r.mixing = r.second_modulus < 1.0 - 1e-10;
  return r;
}

Vector stationary_distribution(const Matrix& p) {
  const auto report = mixing_check(p);
  if (!report.mixing) {
    std::ostringstream os;
    os.precision(17);
    os << "chain is not mixing: second eigenvalue modulus " << report.second_modulus;
    throw MixingError(os.str(), report.second_modulus);
  }
  return solve_fixed_vector(p);
}

MarkovChain::MarkovChain(Matrix transition, Orientation orientation)
    : transition_(orientation == Orientation::row_stochastic ? Matrix(transition.transpose())
                                                             : std::move(transition)) {
  mixing_ = mixing_check(transition_);
  stationary_ = solve_fixed_vector(transition_);
}

std::vector<std::string> MarkovChain::warnings() const {
  std::vector<std::string> out;
  if (!mixing_.mixing) {
    std::ostringstream os;
    os.precision(6);
    os << "non_mixing: second eigenvalue modulus " << mixing_.second_modulus;
    out.push_back(os.str());
  }
  return out;
}

double markov_entropy(const MarkovChain& chain) {
  const auto& p = chain.transition();
  const auto& st = chain.stationary();
  double h = 0.0;
  for (Eigen::Index k = 0; k < p.cols(); ++k) {
    double col = 0.0;
    for (Eigen::Index l = 0; l < p.rows(); ++l) col += xlogx(p(l, k));
    h -= st(k) * col;
  }
  return std::max(h, 0.0);
}

}  // namespace hmpz
