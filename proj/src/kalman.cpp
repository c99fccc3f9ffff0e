#include "vidflux/kalman.hpp"

#include <algorithm>
#include <cmath>

namespace vidflux {

namespace {

using Mat7 = Eigen::Matrix<double, 7, 7>;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat4x7 = Eigen::Matrix<double, 4, 7>;

Mat7 transition_matrix() {
  Mat7 f = Mat7::Identity();
  f(0, 4) = 1.0;  // cx += vcx
  f(1, 5) = 1.0;  // cy += vcy
  f(2, 6) = 1.0;  // s  += vs
  return f;
}

Mat4x7 measurement_matrix() {
  Mat4x7 h = Mat4x7::Zero();
  h(0, 0) = h(1, 1) = h(2, 2) = h(3, 3) = 1.0;
  return h;
}

Mat7 process_noise(const KalmanConfig& cfg) {
  Vec7 q;
  q << cfg.process_pos, cfg.process_pos, cfg.process_pos, cfg.process_pos,
      cfg.process_vel, cfg.process_vel, cfg.process_scale_vel;
  return q.asDiagonal();
}

Eigen::Matrix4d measurement_noise(const KalmanConfig& cfg) {
  const double v = cfg.measure_std * cfg.measure_std;
  Eigen::Vector4d r;
  r << v, v, 10.0 * v, 10.0 * v;
  return r.asDiagonal();
}

void clamp_shape(Vec7& mean) {
  constexpr double kMin = 1e-6;
  mean(2) = std::max(mean(2), kMin);  // area
  mean(3) = std::max(mean(3), kMin);  // aspect ratio
}

void symmetrize(Mat7& p) { p = 0.5 * (p + p.transpose()).eval(); }

}  // namespace

Eigen::Vector4d bbox_to_measurement(const BBox& b) {
  Eigen::Vector4d z;
  z << b.x + 0.5 * b.w, b.y + 0.5 * b.h, b.w * b.h, b.w / b.h;
  return z;
}

BBox state_to_bbox(const KalmanState& st) {
  const double s = std::max(st.mean(2), 1e-12);
  const double r = std::max(st.mean(3), 1e-12);
  const double w = std::sqrt(s * r);
  const double h = s / w;
  return BBox{st.mean(0) - 0.5 * w, st.mean(1) - 0.5 * h, w, h};
}

KalmanState kalman_init(const BBox& z, const KalmanConfig& cfg) {
  KalmanState st;
  st.mean.head<4>() = bbox_to_measurement(z);
  Vec7 p0;
  p0 << cfg.init_pos_var, cfg.init_pos_var, cfg.init_pos_var, cfg.init_pos_var,
      cfg.init_vel_var, cfg.init_vel_var, cfg.init_vel_var;
  st.cov = p0.asDiagonal();
  return st;
}

KalmanState kalman_predict(const KalmanState& st, const KalmanConfig& cfg) {
  static const Mat7 f = transition_matrix();
  KalmanState out;
  out.mean = f * st.mean;
  clamp_shape(out.mean);
  out.cov = f * st.cov * f.transpose() + process_noise(cfg);
  symmetrize(out.cov);
  return out;
}

KalmanState kalman_update(const KalmanState& st, const BBox& z, const KalmanConfig& cfg) {
  static const Mat4x7 h = measurement_matrix();
  const Eigen::Matrix4d r = measurement_noise(cfg);

  const Eigen::Vector4d innovation = bbox_to_measurement(z) - h * st.mean;
  const Eigen::Matrix4d s = h * st.cov * h.transpose() + r;
  const Eigen::Matrix<double, 7, 4> k = st.cov * h.transpose() * s.inverse();

  KalmanState out;
  out.mean = st.mean + k * innovation;
  clamp_shape(out.mean);
  // Joseph form keeps the posterior covariance PSD under roundoff.
  const Mat7 ikh = Mat7::Identity() - k * h;
  out.cov = ikh * st.cov * ikh.transpose() + k * r * k.transpose();
  symmetrize(out.cov);
  return out;
}

}  // namespace vidflux
