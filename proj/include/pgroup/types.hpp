#pragma once

#include <Eigen/Core>

namespace pgroup {

/// Upper bound on every vector-space dimension handled by the library.
/// Vectors use Eigen's fixed-capacity storage so hot loops never allocate.
inline constexpr int kMaxDim = 64;

using Vec = Eigen::Matrix<int, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::MatrixXi;

}  // namespace pgroup
