#include "tqlab/identity_suite.hpp"

#include <cmath>
#include <random>

#include "tqlab/lattice_algebra.hpp"

namespace tqlab {

namespace {

Mat4 faulted_r(Cplx u, double fault) {
  Mat4 r = r_matrix(u);
  r(1, 1) += fault;
  return r;
}

// embed a 4x4 two-site operator into C^2 x C^2 x C^2
Mat embed3(const Mat4& m, int s1, int s2) {
  Mat out = Mat::Zero(8, 8);
  const int shift1 = 2 - s1, shift2 = 2 - s2;
  for (int c = 0; c < 8; ++c) {
    const int b1 = (c >> shift1) & 1, b2 = (c >> shift2) & 1;
    for (int r1 = 0; r1 < 2; ++r1)
      for (int r2 = 0; r2 < 2; ++r2) {
        const Cplx v = m(r1 * 2 + r2, b1 * 2 + b2);
        if (v == Cplx(0.0)) continue;
        int row = c & ~((1 << shift1) | (1 << shift2));
        row |= (r1 << shift1) | (r2 << shift2);
        out(row, c) += v;
      }
  }
  return out;
}

}  // namespace

double ybe_residual(Cplx u, Cplx v, double fault) {
  const Mat r12 = embed3(faulted_r(u - v, fault), 0, 1);
  const Mat r13 = embed3(faulted_r(u, fault), 0, 2);
  const Mat r23 = embed3(faulted_r(v, fault), 1, 2);
  const Mat lhs = r12 * r13 * r23;
  const Mat rhs = r23 * r13 * r12;
  return (lhs - rhs).norm() / (1.0 + lhs.norm());
}

double initial_condition_residual(double fault) {
  return (faulted_r(0.0, fault) - permutation()).norm();
}

double unitarity_residual(Cplx u, double fault) {
  const Cplx c = 1.0 - u * u;
  const Mat4 prod = faulted_r(u, fault) * faulted_r(-u, fault);
  return (prod - c * Mat4::Identity()).norm() / (1.0 + std::abs(c));
}

double crossing_residual(Cplx u, double fault) {
  const Mat4 r = faulted_r(-u - 1.0, fault);
  Mat4 rt1;  // partial transpose in the first space
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) rt1(a * 2 + b, ap * 2 + bp) = r(ap * 2 + b, a * 2 + bp);
  Mat4 sy1 = Mat4::Zero();
  const Mat2 sy = pauli::y();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b) sy1(a * 2 + b, ap * 2 + b) = sy(a, ap);
  const Mat4 rhs = -sy1 * rt1 * sy1;
  return (faulted_r(u, fault) - rhs).norm() / (1.0 + faulted_r(u, fault).norm());
}

double commutator_residual(const ChainSpec& spec, Cplx u, Cplx v) {
  const Mat tu = transfer(spec, u);
  const Mat tv = transfer(spec, v);
  return (tu * tv - tv * tu).norm() / (tu.norm() * tv.norm());
}

double operator_identity_residual(const ChainSpec& spec, int j) {
  const Cplx tj = spec.theta[static_cast<size_t>(j)];
  const Mat lhs = transfer(spec, tj) * transfer(spec, tj - 1.0);
  const Cplx val = spec.a_at(tj) * spec.d_at(tj - 1.0);
  const int dim = spec.dim();
  return (lhs - val * Mat::Identity(dim, dim)).norm() /
         (std::abs(val) * std::sqrt(double(dim)) + lhs.norm());
}

std::vector<double> homogeneous_derivative_residuals(const ChainSpec& spec) {
  const int n = spec.num_sites;
  const int deg = 2 * n;
  const std::vector<Cplx> nodes = circle_nodes(1.3, deg + 1, 0.21);
  std::vector<Mat> samples;
  samples.reserve(nodes.size());
  double scale = 0.0;
  for (const Cplx& u : nodes) {
    Mat s = transfer(spec, u) * transfer(spec, u - 1.0) -
            spec.a_at(u) * spec.d_at(u - 1.0) * Mat::Identity(spec.dim(), spec.dim());
    scale = std::max(scale, s.norm());
    samples.push_back(std::move(s));
  }
  const std::vector<Mat> coeff = operator_poly_from_samples(nodes, samples);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l)
    out.push_back(coeff[static_cast<size_t>(l)].norm() / (1.0 + scale));
  return out;
}

double hamiltonian_logderiv_residual(const ChainSpec& spec) {
  const TransferFamily family(spec);
  const Mat t0 = family.coeff(0);
  const Mat t1 = family.coeff(1);
  const int dim = spec.dim();
  const Mat lhs = t0.partialPivLu().solve(t1) -
                  0.5 * double(spec.num_sites) * Mat::Identity(dim, dim);
  const Mat h = hamiltonian(spec);
  return (lhs - h).norm() / (1.0 + h.norm());
}

bool IdentityReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const IdentityCheck* IdentityReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

IdentityReport run_identity_suite(const ChainSpec& spec, const IdentitySuiteOptions& opts) {
  spec.validate();
  IdentityReport rep;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double fault = opts.inject_fault ? 1e-2 : 0.0;

  auto add = [&rep](std::string name, double resid, double tol) {
    rep.checks.push_back({std::move(name), resid, tol, resid < tol});
  };

  double worst = 0.0;
  for (int k = 0; k < opts.random_points; ++k)
    worst = std::max(worst, ybe_residual(Cplx(gauss(rng), gauss(rng)),
                                         Cplx(gauss(rng), gauss(rng)), fault));
  add("yang-baxter", worst, opts.r_identity_tol);

  add("initial-condition", initial_condition_residual(fault), opts.r_identity_tol);

  worst = 0.0;
  for (int k = 0; k < opts.random_points; ++k)
    worst = std::max(worst, unitarity_residual(Cplx(gauss(rng), gauss(rng)), fault));
  add("unitarity", worst, opts.r_identity_tol);

  worst = 0.0;
  for (int k = 0; k < opts.random_points; ++k)
    worst = std::max(worst, crossing_residual(Cplx(gauss(rng), gauss(rng)), fault));
  add("crossing", worst, opts.r_identity_tol);

  worst = 0.0;
  for (int k = 0; k < opts.commutator_pairs; ++k)
    worst = std::max(worst, commutator_residual(spec, Cplx(gauss(rng), gauss(rng)),
                                                Cplx(gauss(rng), gauss(rng))));
  add("commuting-family", worst, opts.commutator_tol);

  worst = 0.0;
  for (int j = 0; j < spec.num_sites; ++j)
    worst = std::max(worst, operator_identity_residual(spec, j));
  add("operator-product-identity", worst, opts.operator_identity_tol);

  if (spec.is_homogeneous()) {
    worst = 0.0;
    for (double r : homogeneous_derivative_residuals(spec)) worst = std::max(worst, r);
    add("homogeneous-derivative-analogue", worst, opts.derivative_tol);
    add("hamiltonian-log-derivative", hamiltonian_logderiv_residual(spec),
        opts.hamiltonian_tol);
  }
  return rep;
}

}  // namespace tqlab
