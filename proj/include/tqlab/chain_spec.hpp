#ifndef TQLAB_CHAIN_SPEC_HPP
#define TQLAB_CHAIN_SPEC_HPP

#include <vector>

#include "tqlab/complex_poly.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

// Model parameters of the periodic XXX spin-1/2 chain: N sites, crossing
// parameter eta fixed to 1, site inhomogeneities theta_j, and the twist-like
// parameter phi entering the T-Q parameterization (not the transfer matrix).
struct ChainSpec {
  int num_sites = 0;
  std::vector<Cplx> theta;
  Cplx phi{0.0};

  static constexpr int kMaxSites = 12;
  static constexpr double kEta = 1.0;

  static ChainSpec homogeneous(int n, Cplx phi = Cplx(0.0));

  void validate() const;  // throws std::invalid_argument
  int dim() const { return 1 << num_sites; }
  bool is_homogeneous(double tol = 1e-12) const;
  // pairwise distinct theta with theta_j != theta_l - 1 (reconstruction paths)
  bool has_generic_theta(double tol = 1e-9) const;
  double max_abs_theta() const;

  // a(u) = prod_j (u - theta_j + 1), d(u) = prod_j (u - theta_j)
  Cplx a_at(Cplx u) const;
  Cplx d_at(Cplx u) const;
  ComplexPoly a_poly() const;
  ComplexPoly d_poly() const;
};

}  // namespace tqlab

#endif
