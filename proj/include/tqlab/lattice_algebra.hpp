#ifndef TQLAB_LATTICE_ALGEBRA_HPP
#define TQLAB_LATTICE_ALGEBRA_HPP

#include <vector>

#include "tqlab/chain_spec.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
Mat2 id();
}  // namespace pauli

// 4x4 permutation operator on C^2 (x) C^2.
Mat4 permutation();

// R(u) = u*Id + P with eta = 1; spin-up is basis index 0.
Mat4 r_matrix(Cplx u);

// op acting on the given site (1-based, site 1 = leftmost tensor factor),
// identity elsewhere.
Mat site_operator(const Mat2& op, int site, int num_sites);

// The four auxiliary-space blocks of the monodromy matrix at fixed u.
struct MonodromyBlocks {
  Mat a, b, c, d;
};

// T_0(u) = R_{0,N}(u - theta_N) ... R_{0,1}(u - theta_1), accumulated as an
// explicit 2x2 auxiliary-space array of operators.
MonodromyBlocks monodromy(const ChainSpec& spec, Cplx u);

// t(u) = A(u) + D(u).
Mat transfer(const ChainSpec& spec, Cplx u);

enum class RotationConvention {
  kSameBothSides,  // M T M, exactly as printed
  kInverseRight,   // M T M^{-1}
};

// Conjugates the auxiliary 2x2 structure by the rotation
// [[cos phi/2, -sin phi/2], [sin phi/2, cos phi/2]]; trig is evaluated at
// complex argument. kSameBothSides applies the same matrix on both sides.
MonodromyBlocks rotated_monodromy(const ChainSpec& spec, Cplx u,
                                  RotationConvention conv = RotationConvention::kSameBothSides);

// Frobenius norm of (A_phi + D_phi) - t(u), for diagnostics.
double rotated_trace_defect(const ChainSpec& spec, Cplx u,
                            RotationConvention conv = RotationConvention::kSameBothSides);

// H = 1/2 sum_j sigma_j . sigma_{j+1}, periodic, built directly from Pauli
// tensor products (independent of the transfer-matrix route).
Mat hamiltonian(const ChainSpec& spec);

// Fits an operator-valued polynomial through matrix samples at the nodes.
std::vector<Mat> operator_poly_from_samples(const std::vector<Cplx>& nodes,
                                            const std::vector<Mat>& samples);

// t(u) materialized as a degree-N operator-valued polynomial, interpolated
// once per ChainSpec at N+1 circle nodes, then evaluated anywhere.
class TransferFamily {
 public:
  explicit TransferFamily(const ChainSpec& spec);
  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  const Mat& coeff(int k) const { return coeff_[static_cast<size_t>(k)]; }
  Mat operator()(Cplx u) const;

 private:
  std::vector<Mat> coeff_;
};

}  // namespace tqlab

#endif
