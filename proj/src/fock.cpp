#include "fdcat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fdcat/errors.hpp"
#include "fdcat/summation.hpp"

namespace fdcat {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void require_dim(int dim) {
  if (dim < 1) {
    throw DomainError(ErrorKind::kInvalidParameter, "dim must be positive");
  }
}

Eigen::VectorXcd normalized(Eigen::VectorXcd v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError(ErrorKind::kNonNormalizable, "state has zero or non-finite norm");
  }
  v /= norm;
  return v;
}

}  // namespace

FockState::FockState(Eigen::VectorXcd amplitudes, double tail_mass)
    : amplitudes_(std::move(amplitudes)), tail_mass_(tail_mass) {
  if (amplitudes_.size() == 0) {
    throw DomainError(ErrorKind::kInvalidParameter, "empty Fock state");
  }
}

FockState FockState::embedded(Eigen::Index dim) const {
  if (dim < this->dim()) {
    throw DomainError(ErrorKind::kTruncationTooSmall,
                      "cannot embed a " + std::to_string(this->dim()) +
                          "-level state in " + std::to_string(dim) + " levels",
                      static_cast<int>(this->dim()));
  }
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(dim);
  padded.head(this->dim()) = amplitudes_;
  return FockState(std::move(padded), tail_mass_);
}

FockState FockState::mirrored() const {
  Eigen::VectorXcd flipped = amplitudes_;
  for (Eigen::Index n = 1; n < flipped.size(); n += 2) flipped[n] = -flipped[n];
  return FockState(std::move(flipped), tail_mass_);
}

FockState vacuum(int dim) {
  require_dim(dim);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v[0] = 1.0;
  return FockState(std::move(v));
}

FockState coherent(double alpha, int dim) {
  require_dim(dim);
  if (!std::isfinite(alpha)) {
    throw DomainError(ErrorKind::kInvalidParameter, "alpha must be finite");
  }
  if (alpha == 0.0) return vacuum(dim);

  const double mean = alpha * alpha;
  const double log_mean = std::log(mean);
  auto log_pmf = [&](int n) { return -mean + n * log_mean - std::lgamma(n + 1.0); };

  // Poisson tail beyond the window, summed directly.
  CompensatedSum<double> tail;
  for (int n = dim;; ++n) {
    const double p = std::exp(log_pmf(n));
    tail += p;
    if (n > mean && p < 1e-30 * tail.value()) break;
    if (n > dim + 100000) break;
  }
  if (tail.value() >= kMaxTailMass) {
    int needed = dim;
    CompensatedSum<double> cdf;
    for (int n = 0;; ++n) {
      cdf += std::exp(log_pmf(n));
      if (1.0 - cdf.value() < 0.5 * kMaxTailMass) {
        needed = n + 1;
        break;
      }
    }
    throw DomainError(ErrorKind::kTruncationTooSmall,
                      "coherent state with alpha^2 = " + std::to_string(mean) +
                          " needs about " + std::to_string(needed) + " levels",
                      needed);
  }

  Eigen::VectorXcd v(dim);
  for (int n = 0; n < dim; ++n) {
    const double magnitude = std::exp(0.5 * log_pmf(n));
    v[n] = (alpha < 0.0 && n % 2 == 1) ? -magnitude : magnitude;
  }
  return FockState(normalized(std::move(v)), tail.value());
}

FockState f_coherent(const DeformationSpec& spec, double zeta,
                     const TruncationOptions& options) {
  require_dim(options.max_dim);
  if (!std::isfinite(zeta)) {
    throw DomainError(ErrorKind::kInvalidParameter, "zeta must be finite");
  }
  if (!(options.floor > 0.0 && options.floor < 1.0)) {
    throw DomainError(ErrorKind::kInvalidParameter, "floor must lie in (0, 1)");
  }

  const DeformedFactorials factorials(spec, options.max_dim - 1);
  const double log_floor = std::log(options.floor);
  const double log_zeta2 = zeta == 0.0 ? kNegInf : 2.0 * std::log(std::abs(zeta));

  // log of zeta^(2n) / [n]_f!, the unnormalized level probabilities.
  std::vector<double> log_p;
  log_p.reserve(static_cast<std::size_t>(options.max_dim));
  double log_total = kNegInf;
  bool stopped_early = false;

  for (int n = 0; n < options.max_dim; ++n) {
    const bool pole = n >= factorials.size();
    if (pole || factorials[n].is_zero()) {
      if (n == 0 || log_p.back() >= log_floor + log_total) {
        throw DomainError(ErrorKind::kSingularDeformation,
                          spec.describe() + ": deformed factorial singular at n = " +
                              std::to_string(n));
      }
      stopped_early = true;
      break;
    }
    const double lp = (n == 0 ? 0.0 : n * log_zeta2) - factorials[n].log_magnitude;
    if (factorials[n].sign < 0) {
      if (lp >= log_floor + log_total) {
        throw DomainError(ErrorKind::kNegativeDeformedFactorial,
                          spec.describe() + ": [n]_f! < 0 at n = " + std::to_string(n) +
                              " where the level is not negligible");
      }
      stopped_early = true;
      break;
    }
    log_p.push_back(lp);
    log_total = log_add_exp(log_total, lp);
  }

  if (!std::isfinite(log_total)) {
    throw DomainError(ErrorKind::kNonNormalizable,
                      spec.describe() + ": exp_f(zeta^2) is not positive and finite");
  }
  const double cut = log_floor + log_total;
  const int examined = static_cast<int>(log_p.size());
  if (!stopped_early) {
    for (int n = std::max(0, examined - 3); n < examined; ++n) {
      if (log_p[static_cast<std::size_t>(n)] >= cut) {
        throw DomainError(ErrorKind::kTruncationTooSmall,
                          spec.describe() + ": levels still significant at max_dim = " +
                              std::to_string(options.max_dim));
      }
    }
  }

  int last = 0;
  for (int n = 0; n < examined; ++n) {
    if (log_p[static_cast<std::size_t>(n)] >= cut) last = n;
  }
  CompensatedSum<double> tail;
  for (int n = last + 1; n < examined; ++n) {
    tail += std::exp(log_p[static_cast<std::size_t>(n)] - log_total);
  }

  Eigen::VectorXcd v(last + 1);
  for (int n = 0; n <= last; ++n) {
    const double magnitude = std::exp(0.5 * (log_p[static_cast<std::size_t>(n)] - log_total));
    v[n] = (zeta < 0.0 && n % 2 == 1) ? -magnitude : magnitude;
  }
  FockState state(normalized(std::move(v)), tail.value());
  if (state.tail_mass() >= kMaxTailMass) {
    throw DomainError(ErrorKind::kTruncationTooSmall,
                      spec.describe() + ": truncated tail mass too large");
  }
  return state;
}

std::complex<double> overlap(const FockState& a, const FockState& b) {
  const Eigen::Index m = std::min(a.dim(), b.dim());
  return a.amplitudes().head(m).dot(b.amplitudes().head(m));
}

FockState even_cat(const FockState& plus, const FockState& minus) {
  const Eigen::Index dim = std::max(plus.dim(), minus.dim());
  const double scale = 2.0 + 2.0 * overlap(plus, minus).real();
  if (scale < 1e-12) {
    throw DomainError(ErrorKind::kDegenerateSuperposition,
                      "components cancel: 2 + 2 Re<plus|minus> < 1e-12");
  }
  Eigen::VectorXcd sum =
      (plus.embedded(dim).amplitudes() + minus.embedded(dim).amplitudes()) /
      std::sqrt(scale);
  return FockState(std::move(sum), std::max(plus.tail_mass(), minus.tail_mass()));
}

double separation(const FockState& state) {
  const auto& c = state.amplitudes();
  CompensatedSum<double> sum;
  for (Eigen::Index n = 0; n + 1 < c.size(); ++n) {
    sum += std::sqrt(static_cast<double>(n + 1)) * (std::conj(c[n]) * c[n + 1]).real();
  }
  return 2.0 * sum.value();
}

double separation(const DeformationSpec& spec, double zeta,
                  const TruncationOptions& options) {
  return separation(f_coherent(spec, zeta, options));
}

Eigen::VectorXd number_distribution(const FockState& state) {
  return state.amplitudes().cwiseAbs2();
}

}  // namespace fdcat
