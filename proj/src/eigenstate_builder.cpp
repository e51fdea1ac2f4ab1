#include "tqlab/eigenstate_builder.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace tqlab {

Vec reference_state(int num_sites) {
  Vec v = Vec::Zero(1 << num_sites);
  v(0) = 1.0;
  return v;
}

BuiltState build_state(const ChainSpec& spec, const BetheRootSet& roots,
                       RotationConvention conv) {
  spec.validate();
  if (static_cast<int>(roots.mu.size()) != spec.num_sites)
    throw std::invalid_argument("build_state: need exactly N roots");
  if (!roots.converged || roots.defect >= 1e-8)
    throw std::invalid_argument("build_state: roots must be converged with defect < 1e-8");

  BuiltState out;
  out.convention = conv;
  out.psi = reference_state(spec.num_sites);
  for (const Cplx& mu : roots.mu) {
    const MonodromyBlocks blocks = rotated_monodromy(spec, mu, conv);
    out.psi = blocks.b * out.psi;
  }
  out.norm = out.psi.norm();
  if (out.norm < 1e-12) {
    std::ostringstream os;
    os << "build_state: null state (norm " << out.norm << ", N=" << spec.num_sites
       << ", phi=" << spec.phi << ")";
    throw NullStateError(os.str());
  }
  return out;
}

CertifyReport certify_eigenstate(const Vec& psi, const ComplexPoly& lambda,
                                 const ChainSpec& spec, std::uint64_t seed) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("certify_eigenstate: zero state");
  CertifyReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.4, 1.6);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  const TransferFamily family(spec);
  for (int k = 0; k < 5; ++k) {
    const double r = rad(rng), a = ang(rng);
    const Cplx u = r * Cplx(std::cos(a), std::sin(a));
    const Mat tu = family(u);
    const double resid = (tu * psi - lambda(u) * psi).norm() / (norm * tu.norm());
    rep.per_point.push_back(resid);
    rep.max_residual = std::max(rep.max_residual, resid);
  }
  if (spec.is_homogeneous()) {
    const Mat h = hamiltonian(spec);
    rep.rayleigh_energy = psi.dot(h * psi) / Cplx(norm * norm);
  }
  return rep;
}

}  // namespace tqlab
