#include "tqlab/complex_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tqlab {

namespace {
constexpr double kTrimTol = 0.0;  // exact-zero trim only; callers decide rounding
}

ComplexPoly::ComplexPoly(std::vector<Cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_ = {Cplx(0.0)};
  normalize();
}

void ComplexPoly::normalize() {
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= kTrimTol) {
    coeffs_.pop_back();
  }
}

bool ComplexPoly::is_zero() const {
  return coeffs_.size() == 1 && coeffs_[0] == Cplx(0.0);
}

ComplexPoly ComplexPoly::constant(Cplx c) { return ComplexPoly({c}); }

ComplexPoly ComplexPoly::monomial(int n, Cplx c) {
  std::vector<Cplx> v(static_cast<size_t>(n) + 1, Cplx(0.0));
  v.back() = c;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::from_roots(std::span<const Cplx> roots) {
  std::vector<Cplx> c{Cplx(1.0)};
  for (Cplx r : roots) {
    c.push_back(Cplx(0.0));
    for (size_t n = c.size() - 1; n >= 1; --n) c[n] = c[n - 1] - r * c[n];
    c[0] *= -r;
  }
  return ComplexPoly(std::move(c));
}

Cplx ComplexPoly::coeff(int n) const {
  if (n < 0 || n >= static_cast<int>(coeffs_.size())) return Cplx(0.0);
  return coeffs_[static_cast<size_t>(n)];
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const Cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Cplx ComplexPoly::operator()(Cplx u) const {
  Cplx acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs_.size() == 1) return ComplexPoly();
  std::vector<Cplx> d(coeffs_.size() - 1);
  for (size_t n = 1; n < coeffs_.size(); ++n) d[n - 1] = coeffs_[n] * Cplx(double(n));
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::shifted(Cplx s) const {
  // p(u+s) by repeated synthetic division (Taylor shift)
  std::vector<Cplx> c = coeffs_;
  const size_t n = c.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    for (size_t k = n - 1; k > i; --k) c[k - 1] += s * c[k];
  }
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& rhs) const {
  std::vector<Cplx> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Cplx(0.0));
  for (size_t n = 0; n < coeffs_.size(); ++n) c[n] += coeffs_[n];
  for (size_t n = 0; n < rhs.coeffs_.size(); ++n) c[n] += rhs.coeffs_[n];
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator-(const ComplexPoly& rhs) const {
  return *this + rhs * Cplx(-1.0);
}

ComplexPoly ComplexPoly::operator*(const ComplexPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return ComplexPoly();
  std::vector<Cplx> c(coeffs_.size() + rhs.coeffs_.size() - 1, Cplx(0.0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator*(Cplx s) const {
  std::vector<Cplx> c = coeffs_;
  for (Cplx& x : c) x *= s;
  return ComplexPoly(std::move(c));
}

std::vector<Cplx> ComplexPoly::roots() const {
  if (is_zero()) throw std::invalid_argument("roots_of: degenerate input");
  if (degree() == 0) return {};
  const int n = degree();
  Mat companion = Mat::Zero(n, n);
  const Cplx lead = coeffs_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Cplx(1.0);
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[static_cast<size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Mat> es(companion, /*computeEigenvectors=*/false);
  std::vector<Cplx> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return out;
}

ComplexPoly ComplexPoly::interpolate(std::span<const std::pair<Cplx, Cplx>> points,
                                     int degree) {
  const int m = degree + 1;
  if (static_cast<int>(points.size()) != m)
    throw std::invalid_argument("interpolate: need exactly degree+1 points");
  double scale = 0.0;
  for (const auto& [x, y] : points) scale = std::max(scale, std::abs(x));
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (std::abs(points[i].first - points[j].first) <= 1e-14 * (1.0 + scale))
        throw std::invalid_argument("interpolate: duplicate abscissae");
  Mat V(m, m);
  Vec y(m);
  for (int i = 0; i < m; ++i) {
    Cplx p(1.0);
    for (int j = 0; j < m; ++j) {
      V(i, j) = p;
      p *= points[static_cast<size_t>(i)].first;
    }
    y(i) = points[static_cast<size_t>(i)].second;
  }
  Vec c = V.colPivHouseholderQr().solve(y);
  std::vector<Cplx> out(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) out[static_cast<size_t>(i)] = c(i);
  return ComplexPoly(std::move(out));
}

std::pair<ComplexPoly, ComplexPoly> ComplexPoly::divmod(const ComplexPoly& num,
                                                        const ComplexPoly& den) {
  if (den.is_zero()) throw std::invalid_argument("divmod: zero divisor");
  if (num.degree() < den.degree()) return {ComplexPoly(), num};
  std::vector<Cplx> rem = num.coeffs_;
  const int dq = num.degree() - den.degree();
  std::vector<Cplx> quo(static_cast<size_t>(dq) + 1, Cplx(0.0));
  const Cplx lead = den.coeffs_.back();
  for (int k = dq; k >= 0; --k) {
    const Cplx f = rem[static_cast<size_t>(k + den.degree())] / lead;
    quo[static_cast<size_t>(k)] = f;
    for (int j = 0; j <= den.degree(); ++j)
      rem[static_cast<size_t>(k + j)] -= f * den.coeffs_[static_cast<size_t>(j)];
  }
  rem.resize(std::max<size_t>(1, static_cast<size_t>(den.degree())));
  return {ComplexPoly(std::move(quo)), ComplexPoly(std::move(rem))};
}

std::vector<Cplx> circle_nodes(double radius, int count, double phase0) {
  std::vector<Cplx> nodes(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double ph = phase0 + 2.0 * std::numbers::pi * k / count;
    nodes[static_cast<size_t>(k)] = radius * Cplx(std::cos(ph), std::sin(ph));
  }
  return nodes;
}

}  // namespace tqlab
