#ifndef TQLAB_TYPES_HPP
#define TQLAB_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace tqlab {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr std::uint64_t kDefaultSeed = 20140317;

}  // namespace tqlab

#endif
