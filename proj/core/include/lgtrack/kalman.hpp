#pragma once

#include <Eigen/Core>

#include "lgtrack/geometry.hpp"

namespace lgtrack {

using StateVector = Eigen::Matrix<double, 8, 1>;
using StateCovariance = Eigen::Matrix<double, 8, 8>;
using MeasurementVector = Eigen::Matrix<double, 4, 1>;
using MeasurementCovariance = Eigen::Matrix<double, 4, 4>;

/// Constant-velocity state: (cx, cy, w, h) followed by their per-frame velocities.
struct KalmanState {
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();

  BBox box() const;
};

struct NoiseConfig {
  double sigma_pos = 1.0 / 20.0;
  double sigma_vel = 1.0 / 160.0;
  double sigma_meas = 1.0 / 20.0;
  double th_det = 0.6;
  int n_max = 30;

  bool valid() const;
};

/// Weight applied to the preset measurement covariance. Confident detections
/// shrink it (th_det / s_det); otherwise it grows as exp(1 - s_det), raised
/// to a power that falls as a lost track stays unmatched longer.
double adaptive_factor(double s_det, int n_lost, int n_max, double th_det);

/// Measurement vector (cx, cy, w, h) of a box.
MeasurementVector to_measurement(const BBox& box);

/// Preset measurement covariance R for a track of height `h`.
MeasurementCovariance measurement_noise(double h, const NoiseConfig& cfg);

/// Process noise Q for a track of height `h`.
StateCovariance process_noise(double h, const NoiseConfig& cfg);

/// Fresh state for a new track: zero velocity, velocity std 10x the position std.
KalmanState initiate(const BBox& box, const NoiseConfig& cfg);

KalmanState predict(const KalmanState& state, const NoiseConfig& cfg);

/// Kalman measurement update with covariance alpha * R. Width and height of
/// the posterior are clamped to at least one pixel. Throws DegenerateFilter if
/// the innovation covariance is not positive-definite.
KalmanState update(const KalmanState& state, const BBox& measurement, double alpha,
                   const NoiseConfig& cfg);

}  // namespace lgtrack
