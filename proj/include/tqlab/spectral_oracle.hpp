#ifndef TQLAB_SPECTRAL_ORACLE_HPP
#define TQLAB_SPECTRAL_ORACLE_HPP

#include <optional>
#include <vector>

#include "tqlab/chain_spec.hpp"
#include "tqlab/complex_poly.hpp"
#include "tqlab/lattice_algebra.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

// One distinct eigenvalue branch of the transfer-matrix family.
struct SpectrumRecord {
  ComplexPoly lambda;          // degree N, leading coefficient 2
  std::optional<Cplx> energy;  // set for homogeneous chains
  int degeneracy = 0;
  Mat eigenvectors;       // dim x degeneracy, orthonormal basis of the eigenspace
  Cplx momentum_marker{};  // lambda(0)
};

struct OracleOptions {
  std::uint64_t seed = kDefaultSeed;
  double grouping_tol = 1e-7;
  double crossval_tol = 1e-8;
  int max_probe_retries = 5;
};

// Exact diagonalization of t(u*) at a generic probe point, degeneracy
// grouping, per-branch Lambda(u) fit at N+1 nodes, and cross-validation at a
// second probe. The transfer matrix does not contain phi and this routine
// never reads spec.phi.
std::vector<SpectrumRecord> diagonalize(const ChainSpec& spec,
                                        const OracleOptions& opts = {});

// E = Lambda'(0)/Lambda(0) - N/2 per record, homogeneous chains only.
std::vector<std::pair<Cplx, int>> energies(const std::vector<SpectrumRecord>& records,
                                           const ChainSpec& spec);

}  // namespace tqlab

#endif
