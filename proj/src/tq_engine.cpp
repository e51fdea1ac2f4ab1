#include "tqlab/tq_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tqlab {

void canonical_root_sort(std::vector<Cplx>& roots) {
  std::stable_sort(roots.begin(), roots.end(), [](const Cplx& a, const Cplx& b) {
    if (std::abs(a.real() - b.real()) > 1e-8) return a.real() < b.real();
    if (std::abs(a.imag() - b.imag()) > 1e-8) return a.imag() < b.imag();
    return false;
  });
}

void BetheRootSet::canonicalize() { canonical_root_sort(mu); }

double root_set_distance(std::span<const Cplx> a, std::span<const Cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Cplx& x : a) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(x - b[k]);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(k);
      }
    }
    used[static_cast<size_t>(best)] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

std::optional<std::string> selection_rule_violation(const ChainSpec& spec,
                                                    std::span<const Cplx> mu,
                                                    double margin) {
  const int n = static_cast<int>(mu.size());
  std::ostringstream os;
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l)
      if (std::abs(mu[j] - mu[l]) < margin) {
        os << "mu_" << j + 1 << " == mu_" << l + 1;
        return os.str();
      }
    for (size_t l = 0; l < spec.theta.size(); ++l) {
      if (std::abs(mu[j] - spec.theta[l]) < margin) {
        os << "mu_" << j + 1 << " == theta_" << l + 1;
        return os.str();
      }
      if (std::abs(mu[j] - (spec.theta[l] - 1.0)) < margin) {
        os << "mu_" << j + 1 << " == theta_" << l + 1 << " - 1";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

Cplx lambda_from_tq(const ChainSpec& spec, const ComplexPoly& q, Cplx u) {
  const Cplx qu = q(u);
  const double scale = std::pow(1.0 + std::abs(u), q.degree()) * (1.0 + q.max_abs_coeff());
  if (std::abs(qu) < 1e-12 * scale)
    throw std::invalid_argument("lambda_from_tq: evaluation at Bethe root; use polynomial form");
  const Cplx eip = std::exp(Cplx(0, 1) * spec.phi);
  const Cplx eim = std::exp(Cplx(0, -1) * spec.phi);
  const Cplx inhom = 2.0 * (1.0 - std::cos(spec.phi));
  return (eip * spec.a_at(u) * q(u - 1.0) + eim * spec.d_at(u) * q(u + 1.0) +
          inhom * spec.a_at(u) * spec.d_at(u)) /
         qu;
}

ComplexPoly lambda_poly_from_tq(const ChainSpec& spec, const ComplexPoly& q) {
  const int n = spec.num_sites;
  if (q.degree() != n)
    throw std::invalid_argument("lambda_poly_from_tq: Q must have degree N");

  // remainder check certifies that the BAEs hold and Lambda is polynomial
  const Cplx eip = std::exp(Cplx(0, 1) * spec.phi);
  const Cplx eim = std::exp(Cplx(0, -1) * spec.phi);
  const Cplx inhom = 2.0 * (1.0 - std::cos(spec.phi));
  const ComplexPoly ap = spec.a_poly();
  const ComplexPoly dp = spec.d_poly();
  const ComplexPoly numerator = ap * q.shifted(-1.0) * eip + dp * q.shifted(1.0) * eim +
                                ap * dp * inhom;
  const auto [quot, rem] = ComplexPoly::divmod(numerator, q);
  const double rel = rem.max_abs_coeff() / (1.0 + numerator.max_abs_coeff());
  if (rel > 1e-8)
    throw std::runtime_error("lambda_poly_from_tq: Q does not satisfy BAEs; Lambda is not polynomial");

  // Interpolation at nodes kept clear of the Bethe roots (the stated route;
  // the polynomial quotient above serves as the cross-check). The node
  // radius scales with the root magnitudes: the rational contamination of
  // the samples by the division remainder falls off with the radius, which
  // matters near multiple zeros of the residual map.
  const std::vector<Cplx> roots = q.roots();
  double max_root = 0.0;
  for (const Cplx& r : roots) max_root = std::max(max_root, std::abs(r));
  const double radius = std::max({1.0, 2.0 * spec.max_abs_theta(), 1.5 * max_root});
  std::vector<Cplx> nodes;
  for (int attempt = 0; attempt < 32; ++attempt) {
    nodes = circle_nodes(radius, n + 1, 0.1 + 0.61803398875 * attempt);
    double dmin = 1e9;
    for (const Cplx& nd : nodes)
      for (const Cplx& r : roots) dmin = std::min(dmin, std::abs(nd - r));
    if (dmin > 1e-3 * radius) break;
  }
  std::vector<std::pair<Cplx, Cplx>> pts;
  pts.reserve(nodes.size());
  for (const Cplx& nd : nodes) pts.emplace_back(nd, lambda_from_tq(spec, q, nd));
  return ComplexPoly::interpolate(pts, n);
}

std::vector<Cplx> bae_residuals(const ChainSpec& spec, std::span<const Cplx> mu) {
  if (auto v = selection_rule_violation(spec, mu, 1e-10))
    throw std::invalid_argument("bae_residuals: selection rule violated: " + *v);
  const Cplx eip = std::exp(Cplx(0, 1) * spec.phi);
  const Cplx eim = std::exp(Cplx(0, -1) * spec.phi);
  const Cplx rhs = 2.0 * (std::cos(spec.phi) - 1.0);
  const ComplexPoly q = ComplexPoly::from_roots(mu);
  std::vector<Cplx> out;
  out.reserve(mu.size());
  for (const Cplx& m : mu) {
    const Cplx ad = spec.a_at(m) * spec.d_at(m);
    const Cplx raw =
        eip * spec.a_at(m) * q(m - 1.0) + eim * spec.d_at(m) * q(m + 1.0) - rhs * ad;
    out.push_back(raw / (1.0 + std::abs(ad)));
  }
  return out;
}

double bae_defect(const ChainSpec& spec, std::span<const Cplx> mu) {
  double d = 0.0;
  for (const Cplx& r : bae_residuals(spec, mu)) d = std::max(d, std::abs(r));
  return d;
}

Cplx energy_from_lambda(const ComplexPoly& lambda, int num_sites) {
  const Cplx l0 = lambda.coeff(0);
  if (std::abs(l0) < 1e-12 * (1.0 + lambda.max_abs_coeff()))
    throw std::invalid_argument("energy_from_lambda: Lambda(0) = 0");
  return lambda.coeff(1) / l0 - 0.5 * double(num_sites);
}

double FunctionalRelationReport::max_identity_residual() const {
  double m = 0.0;
  for (double r : identity_residuals) m = std::max(m, r);
  return m;
}

bool FunctionalRelationReport::passes(double tol) const {
  return degree_ok && leading_residual < tol && max_identity_residual() < tol;
}

FunctionalRelationReport verify_functional_relations(const ComplexPoly& lambda,
                                                     const ChainSpec& spec) {
  FunctionalRelationReport rep;
  rep.degree = lambda.degree();
  rep.degree_ok = (lambda.degree() == spec.num_sites);
  rep.leading_residual = std::abs(lambda.coeff(spec.num_sites) - 2.0) / 2.0;

  // group coincident theta values; coincidences are handled through the
  // derivative family of the identity instead of repeated point conditions
  std::vector<std::pair<Cplx, int>> groups;
  for (const Cplx& t : spec.theta) {
    bool found = false;
    for (auto& [v, m] : groups)
      if (std::abs(v - t) < 1e-8) {
        ++m;
        found = true;
        break;
      }
    if (!found) groups.emplace_back(t, 1);
  }

  const ComplexPoly prod =
      lambda * lambda.shifted(-1.0) - spec.a_poly() * spec.d_poly().shifted(-1.0);
  const double scale =
      1.0 + lambda.max_abs_coeff() * lambda.max_abs_coeff() +
      spec.a_poly().max_abs_coeff() * spec.d_poly().max_abs_coeff();
  for (const auto& [v, m] : groups) {
    if (m == 1) {
      const Cplx lhs = lambda(v) * lambda(v - 1.0);
      const Cplx rhs = spec.a_at(v) * spec.d_at(v - 1.0);
      rep.identity_residuals.push_back(std::abs(lhs - rhs) /
                                       (1.0 + std::abs(lhs) + std::abs(rhs)));
    } else {
      rep.used_derivative_family = true;
      ComplexPoly g = prod.shifted(v);  // derivatives at u=v are l! * coeff_l
      double fact = 1.0;
      for (int l = 0; l < m; ++l) {
        rep.identity_residuals.push_back(std::abs(g.coeff(l)) * fact / scale);
        fact *= double(l + 1);
      }
    }
  }
  return rep;
}

}  // namespace tqlab
