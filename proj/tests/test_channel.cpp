#include <cmath>
#include <random>

#include <doctest.h>

#include "fdcat/channel.hpp"
#include "fdcat/errors.hpp"

using namespace fdcat;

namespace {

OperatorMatrix random_density(std::mt19937_64& rng, int dim, int rank) {
  std::normal_distribution<double> gauss;
  OperatorMatrix g(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  }
  OperatorMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

OperatorMatrix kraus_sum(const OperatorMatrix& op, double eta) {
  const int dim = static_cast<int>(op.rows());
  OperatorMatrix out = OperatorMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const OperatorMatrix u = kraus_operator(k, eta, dim);
    out += u * op * u.adjoint();
  }
  return out;
}

}  // namespace

TEST_CASE("channel parameters") {
  const ChannelParams p(2.0, 0.5);
  CHECK(p.gamma_t() == 1.0);
  CHECK(p.eta() == doctest::Approx(std::exp(-1.0)));
  CHECK(ChannelParams::from_gamma_t(0.0).eta() == 1.0);
  CHECK_THROWS_AS(ChannelParams(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ChannelParams(1.0, 1e6), DomainError);
}

TEST_CASE("kraus operator entries") {
  const double eta = 0.6;
  const OperatorMatrix u1 = kraus_operator(1, eta, 5);
  // <n-1| U_1 |n> = sqrt(n) eta^((n-1)/2) sqrt(1-eta)
  for (int n = 1; n < 5; ++n) {
    CHECK(u1(n - 1, n).real() ==
          doctest::Approx(std::sqrt(n * std::pow(eta, n - 1) * (1 - eta))));
  }
  CHECK(u1(0, 0) == std::complex<double>(0.0));
  const OperatorMatrix u0 = kraus_operator(0, eta, 5);
  for (int n = 0; n < 5; ++n) CHECK(u0(n, n).real() == doctest::Approx(std::pow(eta, n / 2.0)));
  CHECK_THROWS_AS(kraus_operator(5, eta, 5), DomainError);
}

TEST_CASE("evolve matches the dense Kraus sum") {
  std::mt19937_64 rng(7);
  for (double eta : {1.0, 0.9, std::exp(-1.0), 0.05}) {
    const OperatorMatrix rho = random_density(rng, 12, 3);
    CHECK((evolve(rho, eta) - kraus_sum(rho, eta)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("identity channel at eta = 1") {
  std::mt19937_64 rng(3);
  const OperatorMatrix rho = random_density(rng, 10, 10);
  CHECK((evolve(rho, 1.0) - rho).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("trace preservation and positivity on random states") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 8 + trial;
    const OperatorMatrix rho = random_density(rng, dim, 1 + trial % 4);
    for (double eta : {0.95, 0.5, 0.1}) {
      const OperatorMatrix out = evolve(rho, eta);
      const DensityCheck check = check_density(out);
      CHECK(check.trace_error < 1e-10);
      CHECK(check.hermiticity_error < 1e-12);
      CHECK(check.min_eigenvalue > -1e-12);
      CHECK(check.valid());
    }
  }
}

TEST_CASE("linearity: dyads of a cat") {
  const FockState a = coherent(1.0, 32);
  const FockState b = coherent(-1.0, 32);
  const double eta = 0.4;
  const OperatorMatrix sum = dyad(a, a) + dyad(b, b) + dyad(a, b) + dyad(b, a);
  const OperatorMatrix parts =
      evolve(dyad(a, a), eta) + evolve(dyad(b, b), eta) + evolve(dyad(a, b), eta) +
      evolve(dyad(b, a), eta);
  CHECK((evolve(sum, eta) - parts).cwiseAbs().maxCoeff() < 1e-14);
  // A damped coherent state stays coherent with amplitude sqrt(eta) alpha.
  const OperatorMatrix damped = evolve(dyad(a, a), eta);
  const FockState expected = coherent(std::sqrt(eta), 32);
  CHECK((damped - dyad(expected, expected)).cwiseAbs().maxCoeff() < 1e-12);
  // Cross term shrinks by exp(-2 alpha^2 (1 - eta)).
  const OperatorMatrix cross = evolve(dyad(a, b), eta);
  const FockState minus_damped = coherent(-std::sqrt(eta), 32);
  const OperatorMatrix expected_cross =
      std::exp(-2.0 * (1.0 - eta)) * dyad(expected, minus_damped);
  CHECK((cross - expected_cross).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("semigroup") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const OperatorMatrix rho = random_density(rng, 16, 2);
    const double e1 = std::exp(-0.3), e2 = std::exp(-0.7);
    const OperatorMatrix twice = evolve(evolve(rho, e1), e2);
    CHECK((twice - evolve(rho, e1 * e2)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("completeness") {
  for (double eta : {0.99, 0.5, std::exp(-2.0)}) {
    CHECK(completeness_defect(eta, 40) < 1e-12);
    CHECK(completeness_defect(eta, 40, 5) < 1e-12);
  }
  // With fewer Kraus operators the truncated sum is incomplete.
  const int dim = 20;
  OperatorMatrix identity = OperatorMatrix::Identity(dim, dim);
  const OperatorMatrix partial = evolve(identity, 0.5, 3);
  CHECK(partial.trace().real() < dim - 1e-3);
}

TEST_CASE("non-square operators are refused") {
  CHECK_THROWS_AS(evolve(OperatorMatrix::Zero(3, 4), 0.5), DomainError);
  CHECK_THROWS_AS(evolve(OperatorMatrix::Zero(3, 3), 0.0), DomainError);
}
