#ifndef TQLAB_EIGENSTATE_BUILDER_HPP
#define TQLAB_EIGENSTATE_BUILDER_HPP

#include <optional>
#include <stdexcept>

#include "tqlab/chain_spec.hpp"
#include "tqlab/complex_poly.hpp"
#include "tqlab/lattice_algebra.hpp"
#include "tqlab/tq_engine.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

// All-spin-up reference state |0...0> (basis index 0).
Vec reference_state(int num_sites);

struct NullStateError : std::runtime_error {
  explicit NullStateError(const std::string& what) : std::runtime_error(what) {}
};

struct BuiltState {
  Vec psi;  // unnormalized
  double norm = 0.0;
  RotationConvention convention = RotationConvention::kSameBothSides;
};

// Applies B_phi(mu_j) from the rotated monodromy for j = 1..N in listed order
// to the reference state. Precondition: roots converged with defect < 1e-8.
// Throws NullStateError when the resulting norm is below 1e-12.
BuiltState build_state(const ChainSpec& spec, const BetheRootSet& roots,
                       RotationConvention conv = RotationConvention::kSameBothSides);

struct CertifyReport {
  double max_residual = 0.0;  // max over probe points of |t(u)psi - L(u)psi| / (|psi| |t(u)|)
  std::vector<double> per_point;
  std::optional<Cplx> rayleigh_energy;  // homogeneous chains
};

CertifyReport certify_eigenstate(const Vec& psi, const ComplexPoly& lambda,
                                 const ChainSpec& spec, std::uint64_t seed = kDefaultSeed);

}  // namespace tqlab

#endif
