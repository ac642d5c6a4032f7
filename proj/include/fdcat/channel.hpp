#pragma once

#include <optional>

#include <Eigen/Dense>

#include "fdcat/fock.hpp"

namespace fdcat {

/// Operators on the truncated Fock space: density matrices and dyads alike.
using OperatorMatrix = Eigen::MatrixXcd;

/// Zero-temperature damping for a time t at rate gamma.
class ChannelParams {
 public:
  ChannelParams(double gamma, double t);

  /// Parameters for a given dimensionless time gamma * t (gamma = 1).
  static ChannelParams from_gamma_t(double gamma_t) { return {1.0, gamma_t}; }

  double gamma() const { return gamma_; }
  double t() const { return t_; }
  double gamma_t() const { return gamma_ * t_; }
  /// Survival factor e^(-gamma t), in (0, 1].
  double eta() const { return eta_; }

 private:
  double gamma_;
  double t_;
  double eta_;
};

/// |a><b| on max(a.dim(), b.dim()) levels.
OperatorMatrix dyad(const FockState& a, const FockState& b);

/// Upsilon_k = sum_{n>=k} sqrt(C(n,k)) eta^((n-k)/2) (1-eta)^(k/2) |n-k><n|.
OperatorMatrix kraus_operator(int k, double eta, int dim);

/// sum_{k < k_max} Upsilon_k op Upsilon_k^dagger. With the default
/// k_max = dim the map is exact on the truncated space. Linear in `op`;
/// dyads need not be Hermitian.
OperatorMatrix evolve(const OperatorMatrix& op, double eta,
                      std::optional<int> k_max = std::nullopt);

/// max |(sum_k Upsilon_k^dagger Upsilon_k - I)_{ij}| over rows i < dim - guard_rows.
double completeness_defect(double eta, int dim, int guard_rows = 0);

struct DensityCheck {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;

  bool valid(double hermitian_tol = 1e-10, double trace_tol = 1e-9,
             double eigen_tol = 1e-9) const {
    return hermiticity_error <= hermitian_tol && trace_error <= trace_tol &&
           min_eigenvalue >= -eigen_tol;
  }
};

DensityCheck check_density(const OperatorMatrix& rho);

}  // namespace fdcat
