#ifndef TQLAB_TQ_ENGINE_HPP
#define TQLAB_TQ_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tqlab/chain_spec.hpp"
#include "tqlab/complex_poly.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

// Unordered multiset of N Bethe roots plus solver metadata. Roots are kept
// in canonical order (by real part, then imaginary part, 1e-8 fuzz) so set
// equality is testable; the order is never used by the solver itself.
struct BetheRootSet {
  std::vector<Cplx> mu;
  bool converged = false;
  int newton_iterations = 0;
  double defect = 0.0;  // max scaled BAE residual

  void canonicalize();
};

void canonical_root_sort(std::vector<Cplx>& roots);

// Greedy nearest-pair multiset distance between two root sets; +inf on size
// mismatch. Robust against the ordering instability of canonical sorting
// when real parts nearly coincide (conjugate pairs).
double root_set_distance(std::span<const Cplx> a, std::span<const Cplx> b);

struct TQSolution {
  BetheRootSet roots;
  ComplexPoly q;       // monic, degree N
  ComplexPoly lambda;  // degree N
  Cplx phi{};
  double bae_residual = 0.0;
  std::optional<int> matched_record;
};

// Selection rules: mu_j != mu_l (j != l), mu_j not in {theta_l, theta_l - 1}.
// Returns a description of the first violation within `margin`, or nullopt.
std::optional<std::string> selection_rule_violation(const ChainSpec& spec,
                                                    std::span<const Cplx> mu,
                                                    double margin);

// Pointwise inhomogeneous T-Q value
//   e^{i phi} a(u) Q(u-1)/Q(u) + e^{-i phi} d(u) Q(u+1)/Q(u)
//     + 2(1 - cos phi) a(u) d(u)/Q(u).
// Throws if |Q(u)| is below 1e-12 * scale (u at a Bethe root).
Cplx lambda_from_tq(const ChainSpec& spec, const ComplexPoly& q, Cplx u);

// Degree-N polynomial Lambda recovered by interpolating lambda_from_tq at
// N+1 nodes avoiding the Bethe roots. Division by Q is exact only when the
// BAEs hold; the remainder of [e^{i phi} a Q_- + e^{-i phi} d Q_+ +
// 2(1-cos phi) a d] modulo Q is checked and must stay below 1e-8 (relative),
// else throws ("Q does not satisfy BAEs; Lambda is not polynomial").
ComplexPoly lambda_poly_from_tq(const ChainSpec& spec, const ComplexPoly& q);

// Scaled BAE residuals, one per root:
//   [e^{i phi} a(mu_j) Q(mu_j - 1) + e^{-i phi} d(mu_j) Q(mu_j + 1)
//      - 2(cos phi - 1) a(mu_j) d(mu_j)] / (1 + |a(mu_j) d(mu_j)|).
// Selection rules are checked first; a violation throws with the offending
// pair named.
std::vector<Cplx> bae_residuals(const ChainSpec& spec, std::span<const Cplx> mu);

double bae_defect(const ChainSpec& spec, std::span<const Cplx> mu);

// E = Lambda'(0)/Lambda(0) - N/2 from polynomial coefficients.
Cplx energy_from_lambda(const ComplexPoly& lambda, int num_sites);

struct FunctionalRelationReport {
  // residuals of Lambda(theta_j) Lambda(theta_j - 1) = a(theta_j) d(theta_j - 1)
  // (point form), or of the derivative family at coincident theta values
  std::vector<double> identity_residuals;
  bool used_derivative_family = false;
  int degree = 0;
  bool degree_ok = false;
  double leading_residual = 0.0;

  double max_identity_residual() const;
  bool passes(double tol) const;
};

FunctionalRelationReport verify_functional_relations(const ComplexPoly& lambda,
                                                     const ChainSpec& spec);

}  // namespace tqlab

#endif
