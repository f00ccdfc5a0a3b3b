#pragma once

#include <Eigen/Dense>

namespace qkt {

/// Collective-spin moments of a symmetric state.
///   first(a)         = <J_a>
///   second_sym(a, b) = <J_a J_b + J_b J_a>
/// with a, b in {x, y, z} -> {0, 1, 2}.
struct MomentSet {
  Eigen::Vector3d first = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second_sym = Eigen::Matrix3d::Zero();
};

}  // namespace qkt
