#include "fdcat/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fdcat/errors.hpp"

namespace fdcat {
namespace {

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError(ErrorKind::kInvalidParameter, "eta must lie in (0, 1]");
  }
}

/// <n-k| Upsilon_k |n>, with binomials from log-gamma.
double kraus_weight(int k, int n, double log_eta, double log_one_minus_eta) {
  double log_w = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                        std::lgamma(n - k + 1.0));
  if (n > k) log_w += 0.5 * (n - k) * log_eta;
  if (k > 0) log_w += 0.5 * k * log_one_minus_eta;
  return std::exp(log_w);
}

/// Column k holds the k-th Kraus weights indexed by the *output* level i,
/// i.e. <i|Upsilon_k|i+k> at row i.
Eigen::MatrixXd kraus_weights(double eta, int dim, int k_max) {
  const double log_eta = std::log(eta);
  const double log_one_minus_eta = std::log1p(-eta);
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(dim, k_max);
  for (int k = 0; k < k_max; ++k) {
    for (int i = 0; i + k < dim; ++i) {
      weights(i, k) = kraus_weight(k, i + k, log_eta, log_one_minus_eta);
    }
  }
  return weights;
}

}  // namespace

ChannelParams::ChannelParams(double gamma, double t) : gamma_(gamma), t_(t) {
  if (!(std::isfinite(gamma) && gamma >= 0.0) || !(std::isfinite(t) && t >= 0.0)) {
    throw DomainError(ErrorKind::kInvalidParameter,
                      "gamma and t must be finite and non-negative");
  }
  eta_ = std::exp(-gamma_ * t_);
  if (!(eta_ > 0.0)) {
    throw DomainError(ErrorKind::kInvalidParameter, "gamma * t underflows eta");
  }
}

OperatorMatrix dyad(const FockState& a, const FockState& b) {
  const Eigen::Index dim = std::max(a.dim(), b.dim());
  return a.embedded(dim).amplitudes() * b.embedded(dim).amplitudes().adjoint();
}

OperatorMatrix kraus_operator(int k, double eta, int dim) {
  require_eta(eta);
  if (dim < 1 || k < 0 || k >= dim) {
    throw DomainError(ErrorKind::kInvalidParameter, "kraus_operator needs 0 <= k < dim");
  }
  const double log_eta = std::log(eta);
  const double log_one_minus_eta = std::log1p(-eta);
  OperatorMatrix upsilon = OperatorMatrix::Zero(dim, dim);
  for (int n = k; n < dim; ++n) {
    upsilon(n - k, n) = kraus_weight(k, n, log_eta, log_one_minus_eta);
  }
  return upsilon;
}

OperatorMatrix evolve(const OperatorMatrix& op, double eta, std::optional<int> k_max) {
  require_eta(eta);
  if (op.rows() != op.cols()) {
    throw DomainError(ErrorKind::kInvalidParameter, "evolve needs a square operator");
  }
  const int dim = static_cast<int>(op.rows());
  const int terms = std::clamp(k_max.value_or(dim), 0, dim);
  const Eigen::MatrixXd weights = kraus_weights(eta, dim, terms);

  // Upsilon_k shifts down by exactly k, so each term touches only the
  // (dim - k) square block: out_ij += w_k(i) op_{i+k, j+k} w_k(j).
  OperatorMatrix out = OperatorMatrix::Zero(dim, dim);
  for (int k = 0; k < terms; ++k) {
    const int m = dim - k;
    const Eigen::VectorXd w = weights.col(k).head(m);
    out.topLeftCorner(m, m) +=
        w.asDiagonal() * op.bottomRightCorner(m, m) * w.asDiagonal();
  }
  return out;
}

double completeness_defect(double eta, int dim, int guard_rows) {
  require_eta(eta);
  if (dim < 1) {
    throw DomainError(ErrorKind::kInvalidParameter, "dim must be positive");
  }
  OperatorMatrix total = OperatorMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const OperatorMatrix upsilon = kraus_operator(k, eta, dim);
    total.noalias() += upsilon.adjoint() * upsilon;
  }
  total -= OperatorMatrix::Identity(dim, dim);
  const int rows = std::max(0, dim - guard_rows);
  if (rows == 0) return 0.0;
  return total.topRows(rows).cwiseAbs().maxCoeff();
}

DensityCheck check_density(const OperatorMatrix& rho) {
  DensityCheck check;
  check.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  check.trace_error = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  const OperatorMatrix hermitian = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  check.min_eigenvalue = solver.eigenvalues().minCoeff();
  return check;
}

}  // namespace fdcat
