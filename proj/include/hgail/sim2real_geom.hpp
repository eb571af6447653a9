#pragma once

#include <Eigen/Dense>

#include "hgail/config.hpp"

namespace hgail {

// Pinhole calibration mapping camera coordinates into the robot frame.
struct CameraModel {
  Eigen::Matrix3d intrinsics = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();   // camera -> robot
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

// throws std::invalid_argument if the intrinsics are near-singular
// (condition number > 1e12) or the rotation is not orthonormal with unit
// determinant within 1e-9
void validate(const CameraModel& cam);

// Back-projects a pixel with its depth into the robot frame:
//   p = R * z * M_in^{-1} * [u v 1]^T + T
// Depth must be positive.
Eigen::Vector3d pixel_to_robot(double u, double v, double z, const CameraModel& cam);

// config keys: camera_intrinsics (9, row-major), camera_rotation (9,
// row-major), camera_translation (3)
CameraModel load_camera_model(ConfigMap& map);

}  // namespace hgail
