#include "tqlab/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace tqlab {

namespace {

Cplx draw_probe(std::mt19937_64& rng, const ChainSpec& spec) {
  std::uniform_real_distribution<double> rad(0.5, 1.5);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int tries = 0; tries < 256; ++tries) {
    const double r = rad(rng);
    const double a = ang(rng);
    const Cplx u = r * Cplx(std::cos(a), std::sin(a));
    double dist = 1e9;
    for (const Cplx& t : spec.theta) {
      dist = std::min(dist, std::abs(u - t));
      dist = std::min(dist, std::abs(u - (t - 1.0)));
    }
    if (dist >= 0.1) return u;
  }
  throw std::runtime_error("oracle: could not place a probe point away from theta");
}

bool lambda_coeff_less(const ComplexPoly& x, const ComplexPoly& y) {
  const int n = std::max(x.degree(), y.degree());
  for (int k = 0; k <= n; ++k) {
    const Cplx a = x.coeff(k), b = y.coeff(k);
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    if (std::abs(a.imag() - b.imag()) > 1e-9) return a.imag() < b.imag();
  }
  return false;
}

}  // namespace

std::vector<SpectrumRecord> diagonalize(const ChainSpec& spec, const OracleOptions& opts) {
  spec.validate();
  const int n = spec.num_sites;
  const int dim = spec.dim();
  std::mt19937_64 rng(opts.seed);
  const TransferFamily family(spec);

  std::string last_error;
  for (int attempt = 0; attempt < opts.max_probe_retries; ++attempt) {
    const Cplx probe = draw_probe(rng, spec);
    const Cplx probe2 = draw_probe(rng, spec);
    if (std::abs(probe - probe2) < 1e-3) continue;

    const Mat tp = family(probe);
    Eigen::ComplexEigenSolver<Mat> es(tp, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) {
      last_error = "eigensolver failed at probe point";
      continue;
    }

    std::vector<int> order(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      const Cplx a = es.eigenvalues()(i), b = es.eigenvalues()(j);
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });

    std::vector<std::vector<int>> groups;
    for (int idx : order) {
      const Cplx lam = es.eigenvalues()(idx);
      bool placed = false;
      for (auto& g : groups) {
        const Cplx rep = es.eigenvalues()(g.front());
        if (std::abs(lam - rep) < opts.grouping_tol * (1.0 + std::abs(rep))) {
          g.push_back(idx);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({idx});
    }

    const Mat t2 = family(probe2);
    const double t2norm = t2.norm();
    std::vector<SpectrumRecord> records;
    records.reserve(groups.size());
    bool ok = true;
    for (const auto& g : groups) {
      const int deg = static_cast<int>(g.size());
      Mat basis(dim, deg);
      for (int k = 0; k < deg; ++k) basis.col(k) = es.eigenvectors().col(g[static_cast<size_t>(k)]);
      Eigen::HouseholderQR<Mat> qr(basis);
      Mat q = qr.householderQ() * Mat::Identity(dim, deg);

      const Vec v = q.col(0);
      const std::vector<Cplx> nodes =
          circle_nodes(std::max(1.0, 2.0 * spec.max_abs_theta()), n + 1, 0.37);
      std::vector<std::pair<Cplx, Cplx>> pts;
      pts.reserve(nodes.size());
      for (const Cplx& un : nodes) pts.emplace_back(un, v.dot(family(un) * v));
      ComplexPoly lambda = ComplexPoly::interpolate(pts, n);

      const Cplx lam2 = lambda(probe2);
      for (int k = 0; k < deg; ++k) {
        const double resid = (t2 * q.col(k) - lam2 * q.col(k)).norm();
        if (resid > opts.crossval_tol * (1.0 + t2norm)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;

      SpectrumRecord rec;
      rec.momentum_marker = lambda(0.0);
      rec.degeneracy = deg;
      rec.eigenvectors = std::move(q);
      if (spec.is_homogeneous()) {
        const Cplx l0 = lambda(0.0);
        rec.energy = lambda.derivative()(0.0) / l0 - 0.5 * double(n);
      }
      rec.lambda = std::move(lambda);
      records.push_back(std::move(rec));
    }
    if (!ok) {
      last_error = "accidental degeneracy at probe point; retry with new u*";
      continue;
    }

    int total = 0;
    for (const auto& r : records) total += r.degeneracy;
    if (total != dim) {
      last_error = "degeneracy grouping did not partition the spectrum";
      continue;
    }

    std::sort(records.begin(), records.end(),
              [](const SpectrumRecord& x, const SpectrumRecord& y) {
                return lambda_coeff_less(x.lambda, y.lambda);
              });
    return records;
  }
  throw std::runtime_error("oracle: " + (last_error.empty()
                                             ? std::string("no valid probe point found")
                                             : last_error));
}

std::vector<std::pair<Cplx, int>> energies(const std::vector<SpectrumRecord>& records,
                                           const ChainSpec& spec) {
  if (!spec.is_homogeneous())
    throw std::invalid_argument("energies: homogeneous spec required");
  std::vector<std::pair<Cplx, int>> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const Cplx l0 = r.lambda(0.0);
    // t(0) is the invertible shift operator for the homogeneous chain
    if (std::abs(l0) < 1e-12)
      throw std::runtime_error("energies: vanishing transfer eigenvalue at origin");
    out.emplace_back(r.lambda.derivative()(0.0) / l0 - 0.5 * double(spec.num_sites),
                     r.degeneracy);
  }
  return out;
}

}  // namespace tqlab
