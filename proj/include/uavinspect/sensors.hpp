#pragma once

#include "uavinspect/geometry.hpp"
#include "uavinspect/vehicle.hpp"

#include <cstdint>
#include <random>

namespace uavinspect {

enum class ImuId : int { first = 1, second = 2 };

struct ImuSample {
  ImuId imu_id{ImuId::first};
  Vec3 gyro{Vec3::Zero()};   ///< rad/s, body
  Vec3 accel{Vec3::Zero()};  ///< m/s^2 specific force, body
  Vec3 mag{Vec3::UnitX()};   ///< unit vector, body
  double time{0.0};
};

/// Gaussian white noise plus a constant per-run bias on each channel.
struct ImuNoiseSpec {
  double gyro_noise_std{0.005};  ///< rad/s
  Vec3 gyro_bias{Vec3::Zero()};  ///< rad/s
  double accel_noise_std{0.05};  ///< m/s^2
  Vec3 accel_bias{Vec3::Zero()}; ///< m/s^2
  double mag_noise_std{0.01};
  std::uint64_t seed{0};

  void validate() const;

  /// Consumer-grade defaults; the two units carry differently oriented biases.
  static ImuNoiseSpec defaults(ImuId which);
  /// No noise and no bias.
  static ImuNoiseSpec noiseless();
};

/// Magnetic north in the world frame (no declination or dip).
inline Vec3 magnetic_north() { return Vec3::UnitX(); }

/// One IMU with its own random stream.
class ImuSensor {
 public:
  ImuSensor(ImuId which, const ImuNoiseSpec& spec);

  ImuSample sample(const TrueState& state);

  [[nodiscard]] ImuId id() const { return which_; }
  [[nodiscard]] const ImuNoiseSpec& spec() const { return spec_; }

 private:
  ImuId which_;
  ImuNoiseSpec spec_;
  std::mt19937_64 rng_;
};

/// Single noiseless-or-noisy reading; draws from `rng`.
ImuSample sample_imu(const TrueState& state, const ImuNoiseSpec& spec, ImuId which, std::mt19937_64& rng);

}  // namespace uavinspect
