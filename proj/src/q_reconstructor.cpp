#include "tqlab/q_reconstructor.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace tqlab {

namespace {

double verify_functional_equation(const ComplexPoly& q, const ComplexPoly& lambda,
                                  const ChainSpec& spec, std::uint64_t seed) {
  const int n = spec.num_sites;
  const Cplx eip = std::exp(Cplx(0, 1) * spec.phi);
  const Cplx eim = std::exp(Cplx(0, -1) * spec.phi);
  const Cplx inhom = 2.0 * (1.0 - std::cos(spec.phi));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 2 * n + 1; ++k) {
    const Cplx u(gauss(rng), gauss(rng));
    const Cplx lhs = q(u) * lambda(u);
    const Cplx rhs = eip * spec.a_at(u) * q(u - 1.0) + eim * spec.d_at(u) * q(u + 1.0) +
                     inhom * spec.a_at(u) * spec.d_at(u);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)));
  }
  return worst;
}

Reconstruction solve_linear_system(const Mat& a, const Vec& b, const ComplexPoly& lambda,
                                   const ChainSpec& spec, std::uint64_t verify_seed) {
  const int n = spec.num_sites;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  Reconstruction rec;
  rec.condition = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(smin > smax * 1e-15))
    throw std::runtime_error("reconstruct_q: singular system (condition " +
                             std::to_string(rec.condition) + ")");
  const Vec x = svd.solve(b);

  std::vector<Cplx> coeffs(static_cast<size_t>(n) + 1);
  for (int k = 0; k < n; ++k) coeffs[static_cast<size_t>(k)] = x(k);
  coeffs[static_cast<size_t>(n)] = Cplx(1.0);
  rec.q = ComplexPoly(std::move(coeffs));

  rec.verification_residual = verify_functional_equation(rec.q, lambda, spec, verify_seed);
  if (rec.verification_residual > 1e-7)
    throw std::runtime_error("reconstruct_q: reconstruction inconsistent (residual " +
                             std::to_string(rec.verification_residual) + ")");
  return rec;
}

}  // namespace

Reconstruction reconstruct_q(const ComplexPoly& lambda, const ChainSpec& spec,
                             std::uint64_t verify_seed) {
  spec.validate();
  const int n = spec.num_sites;
  if (!spec.has_generic_theta())
    throw std::invalid_argument(
        "reconstruct_q: theta must be pairwise distinct with theta_j != theta_l - 1; "
        "use reconstruct_q_homogeneous for the homogeneous chain");
  const Cplx eip = std::exp(Cplx(0, 1) * spec.phi);

  // unknowns: coefficients I_0..I_{N-1} of Q, monic degree N
  Mat a(n, n);
  Vec b(n);
  for (int j = 0; j < n; ++j) {
    const Cplx t = spec.theta[static_cast<size_t>(j)];
    const Cplx lam = lambda(t);
    const Cplx av = spec.a_at(t);
    Cplx pow_t(1.0), pow_tm(1.0);
    for (int k = 0; k <= n; ++k) {
      const Cplx coef = pow_t * lam - eip * av * pow_tm;
      if (k < n)
        a(j, k) = coef;
      else
        b(j) = -coef;
      pow_t *= t;
      pow_tm *= t - 1.0;
    }
  }
  return solve_linear_system(a, b, lambda, spec, verify_seed);
}

Reconstruction reconstruct_q_homogeneous(const ComplexPoly& lambda, const ChainSpec& spec,
                                         std::uint64_t verify_seed) {
  spec.validate();
  const int n = spec.num_sites;
  if (!spec.is_homogeneous())
    throw std::invalid_argument("reconstruct_q_homogeneous: theta_j = 0 required");
  const Cplx eip = std::exp(Cplx(0, 1) * spec.phi);
  const ComplexPoly ap = spec.a_poly();

  // coefficient of u^l in [u^k Lambda(u) - e^{i phi} a(u) (u-1)^k] for l < N;
  // the l-th derivative at 0 is l! times that coefficient
  Mat a(n, n);
  Vec b(n);
  for (int k = 0; k <= n; ++k) {
    const ComplexPoly uk = ComplexPoly::monomial(k);
    const ComplexPoly col = uk * lambda - ap * uk.shifted(-1.0) * eip;
    for (int l = 0; l < n; ++l) {
      if (k < n)
        a(l, k) = col.coeff(l);
      else
        b(l) = -col.coeff(l);
    }
  }
  return solve_linear_system(a, b, lambda, spec, verify_seed);
}

RootExtraction roots_from_q(const ComplexPoly& q, const ChainSpec& spec) {
  if (q.degree() != spec.num_sites || std::abs(q.leading() - 1.0) > 1e-9)
    throw std::invalid_argument("roots_from_q: monic degree-N Q required");
  RootExtraction out;
  out.roots.mu = q.roots();
  out.roots.canonicalize();
  // report every violation, not just the first
  const auto& mu = out.roots.mu;
  for (size_t j = 0; j < mu.size(); ++j) {
    for (size_t l = j + 1; l < mu.size(); ++l)
      if (std::abs(mu[j] - mu[l]) < 1e-8)
        out.selection_violations.push_back("mu_" + std::to_string(j + 1) + " == mu_" +
                                           std::to_string(l + 1));
    for (size_t l = 0; l < spec.theta.size(); ++l) {
      if (std::abs(mu[j] - spec.theta[l]) < 1e-8)
        out.selection_violations.push_back("mu_" + std::to_string(j + 1) + " == theta_" +
                                           std::to_string(l + 1));
      if (std::abs(mu[j] - (spec.theta[l] - 1.0)) < 1e-8)
        out.selection_violations.push_back("mu_" + std::to_string(j + 1) + " == theta_" +
                                           std::to_string(l + 1) + " - 1");
    }
  }
  return out;
}

}  // namespace tqlab
