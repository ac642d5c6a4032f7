#pragma once

#include <complex>

#include <Eigen/Dense>

#include "fdcat/deformation.hpp"

namespace fdcat {

/// A normalized state truncated to the first dim() Fock levels.
class FockState {
 public:
  /// Takes amplitudes as given; constructors below normalize before calling.
  explicit FockState(Eigen::VectorXcd amplitudes, double tail_mass = 0.0);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::complex<double> operator[](Eigen::Index n) const { return amplitudes_[n]; }
  Eigen::Index dim() const { return amplitudes_.size(); }

  /// Estimated probability beyond the truncation.
  double tail_mass() const { return tail_mass_; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }

  /// Zero-padded copy with `dim` levels. Shrinking is refused.
  FockState embedded(Eigen::Index dim) const;

  /// The state with amplitudes (-1)^n c_n, i.e. the image under the
  /// parity operator. For the families built here this is the zeta -> -zeta
  /// mirror.
  FockState mirrored() const;

 private:
  Eigen::VectorXcd amplitudes_;
  double tail_mass_;
};

struct TruncationOptions {
  /// Number of Fock levels examined before giving up.
  int max_dim = 256;
  /// Levels whose probability is below floor * total are dropped off the end.
  double floor = 1e-12;
};

/// Accepted states must have tail mass below this.
inline constexpr double kMaxTailMass = 1e-9;

FockState vacuum(int dim = 1);

/// Glauber coherent state with real alpha on `dim` levels. Throws
/// TruncationTooSmall (with the needed dim) if the Poisson tail beyond
/// `dim` is >= 1e-9.
FockState coherent(double alpha, int dim);

/// f-coherent state c_n ~ zeta^n / sqrt([n]_f!). The truncation is chosen by
/// scanning all max_dim levels and keeping up to the last significant one.
FockState f_coherent(const DeformationSpec& spec, double zeta,
                     const TruncationOptions& options = {});

/// <a|b>. The shorter state is zero-padded.
std::complex<double> overlap(const FockState& a, const FockState& b);

/// (plus + minus) / sqrt(2 + 2 Re<plus|minus>).
FockState even_cat(const FockState& plus, const FockState& minus);

/// <a + a^dagger> = 2 Re sum_n sqrt(n + 1) conj(c_n) c_{n+1}.
double separation(const FockState& state);

/// Separation of the f-coherent state at (spec, zeta).
double separation(const DeformationSpec& spec, double zeta,
                  const TruncationOptions& options = {});

/// P(n) = |c_n|^2.
Eigen::VectorXd number_distribution(const FockState& state);

}  // namespace fdcat
