#include "lgtrack/kalman.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

#include "lgtrack/errors.hpp"

namespace lgtrack {

namespace {

constexpr double kMinSize = 1.0;

StateCovariance transition_matrix() {
  StateCovariance f = StateCovariance::Identity();
  for (int i = 0; i < 4; ++i) f(i, i + 4) = 1.0;
  return f;
}

void symmetrize(StateCovariance& p) { p = 0.5 * (p + p.transpose()).eval(); }

}  // namespace

BBox KalmanState::box() const {
  return BBox::from_center(mean(0), mean(1), mean(2), mean(3));
}

bool NoiseConfig::valid() const {
  return sigma_pos > 0.0 && sigma_vel > 0.0 && sigma_meas > 0.0 && th_det > 0.0 && th_det < 1.0 &&
         n_max >= 1;
}

double adaptive_factor(double s_det, int n_lost, int n_max, double th_det) {
  if (s_det > th_det) return th_det / s_det;
  const double ratio = static_cast<double>(n_lost) / static_cast<double>(n_max);
  const double n = ratio > 0.5 ? ratio : 0.5;
  return std::pow(std::exp(1.0 - s_det), 1.5 - n);
}

MeasurementVector to_measurement(const BBox& box) {
  return MeasurementVector(box.center_x(), box.center_y(), box.w, box.h);
}

MeasurementCovariance measurement_noise(double h, const NoiseConfig& cfg) {
  const double sd = cfg.sigma_meas * h;
  return MeasurementCovariance::Identity() * (sd * sd);
}

StateCovariance process_noise(double h, const NoiseConfig& cfg) {
  const double pos = cfg.sigma_pos * h;
  const double vel = cfg.sigma_vel * h;
  StateVector var;
  var << pos * pos, pos * pos, pos * pos, pos * pos, vel * vel, vel * vel, vel * vel, vel * vel;
  return var.asDiagonal();
}

KalmanState initiate(const BBox& box, const NoiseConfig& cfg) {
  KalmanState s;
  s.mean.head<4>() = to_measurement(box);
  s.mean.tail<4>().setZero();
  const double pos = 2.0 * cfg.sigma_pos * box.h;
  const double vel = 10.0 * pos;
  StateVector var;
  var << pos * pos, pos * pos, pos * pos, pos * pos, vel * vel, vel * vel, vel * vel, vel * vel;
  s.covariance = var.asDiagonal();
  return s;
}

KalmanState predict(const KalmanState& state, const NoiseConfig& cfg) {
  static const StateCovariance f = transition_matrix();
  KalmanState out;
  out.mean = f * state.mean;
  out.covariance = f * state.covariance * f.transpose() + process_noise(state.mean(3), cfg);
  symmetrize(out.covariance);
  return out;
}

KalmanState update(const KalmanState& state, const BBox& measurement, double alpha,
                   const NoiseConfig& cfg) {
  // H selects the first four state components, so H P H' and P H' are blocks of P.
  const MeasurementCovariance r = alpha * measurement_noise(state.mean(3), cfg);
  const MeasurementCovariance s = state.covariance.topLeftCorner<4, 4>() + r;
  const Eigen::Matrix<double, 8, 4> ph = state.covariance.leftCols<4>();

  Eigen::LLT<MeasurementCovariance> llt(s);
  if (llt.info() != Eigen::Success) {
    throw DegenerateFilter("innovation covariance is not positive-definite");
  }
  const Eigen::Matrix<double, 8, 4> gain = llt.solve(ph.transpose()).transpose();
  const MeasurementVector innovation = to_measurement(measurement) - state.mean.head<4>();

  KalmanState out;
  out.mean = state.mean + gain * innovation;
  out.covariance = state.covariance - gain * s * gain.transpose();
  symmetrize(out.covariance);
  out.mean(2) = std::max(out.mean(2), kMinSize);
  out.mean(3) = std::max(out.mean(3), kMinSize);
  return out;
}

}  // namespace lgtrack
