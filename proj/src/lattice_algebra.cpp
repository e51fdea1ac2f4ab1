#include "tqlab/lattice_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace tqlab {

namespace pauli {
Mat2 x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
Mat2 y() {
  Mat2 m;
  m << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
  return m;
}
Mat2 z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
Mat2 id() { return Mat2::Identity(); }
}  // namespace pauli

Mat4 permutation() {
  Mat4 p = Mat4::Zero();
  p(0, 0) = p(3, 3) = 1.0;
  p(1, 2) = p(2, 1) = 1.0;
  return p;
}

Mat4 r_matrix(Cplx u) { return u * Mat4::Identity() + permutation(); }

Mat site_operator(const Mat2& op, int site, int num_sites) {
  const int dim = 1 << num_sites;
  const int mask = 1 << (num_sites - site);  // site 1 = most significant bit
  Mat out = Mat::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    const int bc = (c & mask) ? 1 : 0;
    for (int br = 0; br < 2; ++br) {
      const Cplx v = op(br, bc);
      if (v != Cplx(0.0)) out((c & ~mask) | (br ? mask : 0), c) += v;
    }
  }
  return out;
}

namespace {

// M * (E_{b,x} acting on `site`): column c (whose site-bit equals x) picks up
// M.col(c with site-bit set to b); all other columns vanish.
void accumulate_right_unit(const Mat& m, int b, int x, int mask, Mat& out) {
  const int dim = static_cast<int>(m.cols());
  for (int c = 0; c < dim; ++c) {
    if (((c & mask) ? 1 : 0) != x) continue;
    out.col(c) += m.col((c & ~mask) | (b ? mask : 0));
  }
}

}  // namespace

MonodromyBlocks monodromy(const ChainSpec& spec, Cplx u) {
  spec.validate();
  const int n = spec.num_sites;
  const int dim = spec.dim();

  // aux entry (x,y) of R_{0,j}(v) is v*delta_{xy} + E_{yx} at site j
  Mat t[2][2];
  {
    const int site = n;
    const int mask = 1 << (n - site);
    const Cplx v = u - spec.theta[static_cast<size_t>(site - 1)];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        t[a][b] = Mat::Zero(dim, dim);
        if (a == b) t[a][b].diagonal().setConstant(v);
        // identity * E_{b,a} at the site
        accumulate_right_unit(Mat::Identity(dim, dim), b, a, mask, t[a][b]);
      }
  }
  for (int site = n - 1; site >= 1; --site) {
    const int mask = 1 << (n - site);
    const Cplx v = u - spec.theta[static_cast<size_t>(site - 1)];
    Mat nt[2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        nt[a][b] = v * t[a][b];
        for (int x = 0; x < 2; ++x) accumulate_right_unit(t[a][x], b, x, mask, nt[a][b]);
      }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) t[a][b] = std::move(nt[a][b]);
  }
  return {std::move(t[0][0]), std::move(t[0][1]), std::move(t[1][0]), std::move(t[1][1])};
}

Mat transfer(const ChainSpec& spec, Cplx u) {
  MonodromyBlocks m = monodromy(spec, u);
  return m.a + m.d;
}

MonodromyBlocks rotated_monodromy(const ChainSpec& spec, Cplx u, RotationConvention conv) {
  const MonodromyBlocks m = monodromy(spec, u);
  const Cplx c = std::cos(spec.phi / 2.0);
  const Cplx s = std::sin(spec.phi / 2.0);
  MonodromyBlocks r;
  if (conv == RotationConvention::kSameBothSides) {
    r.a = c * c * m.a + c * s * m.b - c * s * m.c - s * s * m.d;
    r.b = -c * s * m.a + c * c * m.b + s * s * m.c - c * s * m.d;
    r.c = c * s * m.a + s * s * m.b + c * c * m.c + c * s * m.d;
    r.d = -s * s * m.a + c * s * m.b - c * s * m.c + c * c * m.d;
  } else {
    r.a = c * c * m.a - c * s * m.b - c * s * m.c + s * s * m.d;
    r.b = c * s * m.a + c * c * m.b - s * s * m.c - c * s * m.d;
    r.c = c * s * m.a - s * s * m.b + c * c * m.c - c * s * m.d;
    r.d = s * s * m.a + c * s * m.b + c * s * m.c + c * c * m.d;
  }
  return r;
}

double rotated_trace_defect(const ChainSpec& spec, Cplx u, RotationConvention conv) {
  const MonodromyBlocks r = rotated_monodromy(spec, u, conv);
  return (r.a + r.d - transfer(spec, u)).norm();
}

Mat hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.num_sites;
  const int dim = spec.dim();
  Mat h = Mat::Zero(dim, dim);
  for (int j = 1; j <= n; ++j) {
    const int k = (j % n) + 1;
    const int mj = 1 << (n - j);
    const int mk = 1 << (n - k);
    for (int c = 0; c < dim; ++c) {
      const double zj = (c & mj) ? -1.0 : 1.0;
      const double zk = (c & mk) ? -1.0 : 1.0;
      h(c, c) += 0.5 * zj * zk;
      if (zj * zk < 0.0) h(c ^ mj ^ mk, c) += 1.0;  // flip-flop from xx+yy
    }
  }
  return h;
}

std::vector<Mat> operator_poly_from_samples(const std::vector<Cplx>& nodes,
                                            const std::vector<Mat>& samples) {
  const int m = static_cast<int>(nodes.size());
  if (samples.size() != nodes.size() || m == 0)
    throw std::invalid_argument("operator_poly_from_samples: node/sample mismatch");
  Mat v(m, m);
  for (int i = 0; i < m; ++i) {
    Cplx p(1.0);
    for (int j = 0; j < m; ++j) {
      v(i, j) = p;
      p *= nodes[static_cast<size_t>(i)];
    }
  }
  const Mat w = v.inverse();
  std::vector<Mat> coeff(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    Mat acc = Mat::Zero(samples[0].rows(), samples[0].cols());
    for (int i = 0; i < m; ++i) acc += w(k, i) * samples[static_cast<size_t>(i)];
    coeff[static_cast<size_t>(k)] = std::move(acc);
  }
  return coeff;
}

TransferFamily::TransferFamily(const ChainSpec& spec) {
  const int n = spec.num_sites;
  const double radius = std::max(1.0, 2.0 * spec.max_abs_theta());
  const std::vector<Cplx> nodes = circle_nodes(radius, n + 1);
  std::vector<Mat> samples;
  samples.reserve(nodes.size());
  for (const Cplx& u : nodes) samples.push_back(transfer(spec, u));
  coeff_ = operator_poly_from_samples(nodes, samples);
}

Mat TransferFamily::operator()(Cplx u) const {
  Mat acc = coeff_.back();
  for (auto it = coeff_.rbegin() + 1; it != coeff_.rend(); ++it) acc = u * acc + *it;
  return acc;
}

}  // namespace tqlab
