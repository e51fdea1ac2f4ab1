#include "tqlab/chain_spec.hpp"

#include <cmath>
#include <stdexcept>

namespace tqlab {

ChainSpec ChainSpec::homogeneous(int n, Cplx phi) {
  ChainSpec s;
  s.num_sites = n;
  s.theta.assign(static_cast<size_t>(n), Cplx(0.0));
  s.phi = phi;
  return s;
}

void ChainSpec::validate() const {
  if (num_sites < 2) throw std::invalid_argument("ChainSpec: N must be >= 2");
  if (num_sites > kMaxSites)
    throw std::invalid_argument("ChainSpec: N exceeds configured cap");
  if (static_cast<int>(theta.size()) != num_sites)
    throw std::invalid_argument("ChainSpec: theta must have exactly N entries");
}

bool ChainSpec::is_homogeneous(double tol) const {
  for (const Cplx& t : theta)
    if (std::abs(t) > tol) return false;
  return true;
}

bool ChainSpec::has_generic_theta(double tol) const {
  const int n = num_sites;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      if (j != l && std::abs(theta[j] - theta[l]) < tol) return false;
      if (std::abs(theta[j] - theta[l] + 1.0) < tol) return false;
    }
  return true;
}

double ChainSpec::max_abs_theta() const {
  double m = 0.0;
  for (const Cplx& t : theta) m = std::max(m, std::abs(t));
  return m;
}

Cplx ChainSpec::a_at(Cplx u) const {
  Cplx p(1.0);
  for (const Cplx& t : theta) p *= u - t + 1.0;
  return p;
}

Cplx ChainSpec::d_at(Cplx u) const {
  Cplx p(1.0);
  for (const Cplx& t : theta) p *= u - t;
  return p;
}

ComplexPoly ChainSpec::a_poly() const {
  std::vector<Cplx> roots;
  roots.reserve(theta.size());
  for (const Cplx& t : theta) roots.push_back(t - 1.0);
  return ComplexPoly::from_roots(roots);
}

ComplexPoly ChainSpec::d_poly() const { return ComplexPoly::from_roots(theta); }

}  // namespace tqlab
