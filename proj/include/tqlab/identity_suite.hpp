#ifndef TQLAB_IDENTITY_SUITE_HPP
#define TQLAB_IDENTITY_SUITE_HPP

#include <string>
#include <vector>

#include "tqlab/chain_spec.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

// Pointwise residuals of the R-matrix and transfer-matrix identities.
double ybe_residual(Cplx u, Cplx v, double fault = 0.0);
double initial_condition_residual(double fault = 0.0);
// R(u) R(-u) = (1 - u^2) Id.
double unitarity_residual(Cplx u, double fault = 0.0);
// R(u) = -sigma_y^1 R^{t1}(-u-1) sigma_y^1.
double crossing_residual(Cplx u, double fault = 0.0);
// [t(u), t(v)] = 0, relative to |t(u)| |t(v)|.
double commutator_residual(const ChainSpec& spec, Cplx u, Cplx v);
// t(theta_j) t(theta_j - 1) = a(theta_j) d(theta_j - 1) Id.
double operator_identity_residual(const ChainSpec& spec, int j);
// l-th derivative of t(u) t(u-1) - a(u) d(u-1) at u=0 for the homogeneous
// chain, via the interpolated operator family; l = 0..N-1.
std::vector<double> homogeneous_derivative_residuals(const ChainSpec& spec);
// d/du ln t(u)|_0 - N/2 against the directly built Hamiltonian.
double hamiltonian_logderiv_residual(const ChainSpec& spec);

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
  const IdentityCheck* first_failure() const;
};

struct IdentitySuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  int random_points = 100;     // R-matrix identity sweep
  int commutator_pairs = 20;
  double r_identity_tol = 1e-12;
  double commutator_tol = 1e-10;
  double operator_identity_tol = 1e-9;
  double derivative_tol = 1e-9;
  double hamiltonian_tol = 1e-9;
  bool inject_fault = false;  // corrupts the R-matrix used by the R checks
};

// Runs the full identity suite for one chain (R-matrix identities, commuting
// family, operator product identity, homogeneous derivative analogue and the
// Hamiltonian relation when theta = 0).
IdentityReport run_identity_suite(const ChainSpec& spec, const IdentitySuiteOptions& opts = {});

}  // namespace tqlab

#endif
