#include "hgail/sim2real_geom.hpp"

#include <stdexcept>

namespace hgail {

void validate(const CameraModel& cam) {
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(cam.intrinsics);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || smax / smin > 1e12)
    throw std::invalid_argument("camera: intrinsics are singular or near-singular");
  const Eigen::Matrix3d should_be_identity = cam.rotation.transpose() * cam.rotation;
  if ((should_be_identity - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("camera: rotation is not orthonormal");
  if (std::abs(cam.rotation.determinant() - 1.0) > 1e-9)
    throw std::invalid_argument("camera: rotation determinant is not 1");
}

Eigen::Vector3d pixel_to_robot(double u, double v, double z, const CameraModel& cam) {
  validate(cam);
  if (!(z > 0.0)) throw std::invalid_argument("pixel_to_robot: depth must be positive");
  const Eigen::Vector3d pixel_h(u, v, 1.0);
  return cam.rotation * (z * (cam.intrinsics.inverse() * pixel_h)) + cam.translation;
}

CameraModel load_camera_model(ConfigMap& map) {
  CameraModel cam;
  const auto in = map.get_doubles("camera_intrinsics", {});
  const auto rot = map.get_doubles("camera_rotation", {});
  const auto tr = map.get_doubles("camera_translation", {});
  if (in.size() != 9) throw std::runtime_error("config: camera_intrinsics expects 9 numbers");
  if (rot.size() != 9) throw std::runtime_error("config: camera_rotation expects 9 numbers");
  if (tr.size() != 3) throw std::runtime_error("config: camera_translation expects 3 numbers");
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      cam.intrinsics(r, c) = in[3 * r + c];
      cam.rotation(r, c) = rot[3 * r + c];
    }
  cam.translation = Eigen::Vector3d(tr[0], tr[1], tr[2]);
  validate(cam);
  return cam;
}

}  // namespace hgail
