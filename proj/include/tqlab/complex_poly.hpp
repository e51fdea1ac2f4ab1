#ifndef TQLAB_COMPLEX_POLY_HPP
#define TQLAB_COMPLEX_POLY_HPP

#include <span>
#include <utility>
#include <vector>

#include "tqlab/types.hpp"

namespace tqlab {

// Complex polynomial in one variable, coefficients stored ascending:
// coeffs[n] multiplies u^n. Normalized so the leading coefficient is
// nonzero unless the polynomial is identically zero (then coeffs = {0}).
class ComplexPoly {
 public:
  ComplexPoly() : coeffs_{Cplx(0.0)} {}
  explicit ComplexPoly(std::vector<Cplx> coeffs);

  static ComplexPoly constant(Cplx c);
  static ComplexPoly monomial(int n, Cplx c = Cplx(1.0));
  // Monic polynomial prod_j (u - roots[j]); empty list gives the constant 1.
  static ComplexPoly from_roots(std::span<const Cplx> roots);
  // Unique polynomial of the stated degree through degree+1 points with
  // pairwise-distinct abscissae. Throws std::invalid_argument on duplicates
  // or a point-count mismatch.
  static ComplexPoly interpolate(std::span<const std::pair<Cplx, Cplx>> points,
                                 int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;
  const std::vector<Cplx>& coeffs() const { return coeffs_; }
  Cplx coeff(int n) const;
  Cplx leading() const { return coeffs_.back(); }
  double max_abs_coeff() const;

  Cplx operator()(Cplx u) const;  // Horner evaluation

  ComplexPoly derivative() const;
  ComplexPoly shifted(Cplx s) const;  // p(u + s)
  ComplexPoly operator+(const ComplexPoly& rhs) const;
  ComplexPoly operator-(const ComplexPoly& rhs) const;
  ComplexPoly operator*(const ComplexPoly& rhs) const;
  ComplexPoly operator*(Cplx s) const;

  // All complex roots with multiplicity, via eigenvalues of the companion
  // matrix of the monic normalization. Throws std::invalid_argument
  // ("degenerate input") for the zero polynomial.
  std::vector<Cplx> roots() const;

  // Quotient and remainder of num / den, den not identically zero.
  static std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& num,
                                                    const ComplexPoly& den);

 private:
  std::vector<Cplx> coeffs_;
  void normalize();
};

// count nodes on the circle |u| = radius, phase-offset by phase0.
std::vector<Cplx> circle_nodes(double radius, int count, double phase0 = 0.0);

}  // namespace tqlab

#endif
