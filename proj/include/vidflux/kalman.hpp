#pragma once

#include <Eigen/Dense>

#include "vidflux/types.hpp"

namespace vidflux {

// Constant-velocity box filter in the SORT state convention:
// (cx, cy, s, r, vcx, vcy, vs) with s = area, r = aspect ratio (held
// constant, no vr). The measurement is (cx, cy, s, r) of a detection box.
struct KalmanConfig {
  double measure_std = 1.0;        // measurement sigma, px; R = diag(1,1,10,10)*sigma^2
  double process_pos = 1.0;        // Q diagonal, position/scale/aspect terms
  double process_vel = 0.01;       // Q diagonal, velocity terms
  double process_scale_vel = 1e-4; // Q diagonal, area-velocity term
  double init_pos_var = 10.0;      // P0 diagonal, observed components
  double init_vel_var = 1e3;       // P0 diagonal, unobserved velocities
};

struct KalmanState {
  Eigen::Matrix<double, 7, 1> mean = Eigen::Matrix<double, 7, 1>::Zero();
  Eigen::Matrix<double, 7, 7> cov = Eigen::Matrix<double, 7, 7>::Zero();
};

KalmanState kalman_init(const BBox& z, const KalmanConfig& cfg);
KalmanState kalman_predict(const KalmanState& st, const KalmanConfig& cfg);
KalmanState kalman_update(const KalmanState& st, const BBox& z, const KalmanConfig& cfg);

BBox state_to_bbox(const KalmanState& st);

Eigen::Vector4d bbox_to_measurement(const BBox& b);

}  // namespace vidflux
