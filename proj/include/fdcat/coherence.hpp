#pragma once

#include <complex>
#include <vector>

#include "fdcat/channel.hpp"
#include "fdcat/deformation.hpp"
#include "fdcat/fock.hpp"

namespace fdcat {

/// One visibility evaluation at photon number n.
struct VisibilitySample {
  int n = 0;
  double gamma_t = 0.0;
  double value = 0.0;
  double p_plus = 0.0;   // P_+(n, t) from the evolved |zeta><zeta|
  double p_minus = 0.0;  // P_-(n, t) from the evolved |-zeta><-zeta|
  double c_abs = 0.0;    // |C(n, t)| from the evolved |zeta><-zeta|
};

/// exp(-2 alpha^2 (1 - eta)): the undeformed cat, independent of n.
double visibility_undeformed(double alpha, double eta);

/// Closed-form deformed visibility
///   |sum_k (n+k)!/k! (-s)^k / [n+k]_f!| / sum_k (n+k)!/k! s^k / [n+k]_f!
/// with s = zeta^2 (1 - eta).
double visibility_deformed(const DeformationSpec& spec, double zeta, int n, double eta,
                           const SeriesOptions& options = {});

/// The three evolved dyads of a two-component cat.
struct EvolvedCat {
  OperatorMatrix plus;   // |zeta,f><zeta,f| after damping
  OperatorMatrix minus;  // |-zeta,f><-zeta,f| after damping
  OperatorMatrix cross;  // |zeta,f><-zeta,f| after damping
  double eta = 1.0;
};

/// Builds the f-coherent pair on `dim` levels and damps each dyad through
/// the Kraus map. Throws TruncationTooSmall if the state needs more levels.
EvolvedCat evolve_cat(const DeformationSpec& spec, double zeta, double eta, int dim,
                      const TruncationOptions& truncation = {});

/// C(n, t) = <n| rho_cross(t) |n>.
std::complex<double> coherence_function(const OperatorMatrix& evolved_cross_dyad, int n);

/// Visibility read off an already evolved cat.
VisibilitySample visibility_sample(const EvolvedCat& cat, int n);

/// Numeric visibility from Kraus evolution of the cat's dyads.
VisibilitySample visibility_numeric(const DeformationSpec& spec, double zeta, int n,
                                    double eta, int dim,
                                    const TruncationOptions& truncation = {});

}  // namespace fdcat
