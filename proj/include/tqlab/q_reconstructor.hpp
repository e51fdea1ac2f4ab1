#ifndef TQLAB_Q_RECONSTRUCTOR_HPP
#define TQLAB_Q_RECONSTRUCTOR_HPP

#include <string>
#include <vector>

#include "tqlab/chain_spec.hpp"
#include "tqlab/complex_poly.hpp"
#include "tqlab/tq_engine.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

struct Reconstruction {
  ComplexPoly q;  // monic, degree N
  double condition = 0.0;
  double verification_residual = 0.0;  // 2N+1-point functional-equation check
};

// Solves the N x N linear system Q(theta_j) Lambda(theta_j) =
// e^{i phi} a(theta_j) Q(theta_j - 1) for the coefficients of the monic
// degree-N Q, then post-verifies the full functional equation
//   Q(u) Lambda(u) = e^{i phi} a(u) Q(u-1) + e^{-i phi} d(u) Q(u+1)
//                    + 2(1-cos phi) a(u) d(u)
// at 2N+1 random points. Requires pairwise distinct theta with
// theta_j != theta_l - 1.
Reconstruction reconstruct_q(const ComplexPoly& lambda, const ChainSpec& spec,
                             std::uint64_t verify_seed = kDefaultSeed);

// Homogeneous variant (theta_j = 0): the point conditions coincide, so the
// l-th derivative of [Q(u) Lambda(u) - e^{i phi} a(u) Q(u-1)] at u = 0 is
// imposed to vanish for l = 0..N-1. Same post-verification.
Reconstruction reconstruct_q_homogeneous(const ComplexPoly& lambda, const ChainSpec& spec,
                                         std::uint64_t verify_seed = kDefaultSeed);

struct RootExtraction {
  BetheRootSet roots;
  std::vector<std::string> selection_violations;  // reported, not fatal
};

// Companion-matrix roots of a monic degree-N Q, canonically ordered, with
// selection rules checked and reported.
RootExtraction roots_from_q(const ComplexPoly& q, const ChainSpec& spec);

}  // namespace tqlab

#endif
