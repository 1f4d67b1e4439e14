#include "uavinspect/sensors.hpp"

#include "uavinspect/errors.hpp"

namespace uavinspect {

namespace {

std::mt19937_64 make_stream(std::uint64_t seed, ImuId which) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(which), 0x1c0ffeeu};
  return std::mt19937_64(seq);
}

Vec3 draw(std::mt19937_64& rng, std::normal_distribution<double>& n, double std) {
  if (std <= 0.0) return Vec3::Zero();
  const double x = n(rng);
  const double y = n(rng);
  const double z = n(rng);
  return Vec3{x, y, z} * std;
}

}  // namespace

void ImuNoiseSpec::validate() const {
  if (!(gyro_noise_std >= 0.0) || !(accel_noise_std >= 0.0) || !(mag_noise_std >= 0.0)) {
    throw ConfigError("imu noise standard deviations must be >= 0");
  }
}

ImuNoiseSpec ImuNoiseSpec::defaults(ImuId which) {
  ImuNoiseSpec s;
  const double inv = 1.0 / std::sqrt(3.0);
  if (which == ImuId::first) {
    s.gyro_bias = Vec3{1.0, -1.0, 1.0} * (0.01 * inv);
    s.accel_bias = Vec3{1.0, -1.0, 1.0} * (0.02 * inv);
  } else {
    s.gyro_bias = Vec3{-1.0, 1.0, 1.0} * (0.01 * inv);
    s.accel_bias = Vec3{-1.0, 1.0, 1.0} * (0.02 * inv);
  }
  return s;
}

ImuNoiseSpec ImuNoiseSpec::noiseless() {
  ImuNoiseSpec s;
  s.gyro_noise_std = 0.0;
  s.accel_noise_std = 0.0;
  s.mag_noise_std = 0.0;
  return s;
}

ImuSample sample_imu(const TrueState& state, const ImuNoiseSpec& spec, ImuId which,
                     std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const Quat to_body = state.attitude.conjugate();
  ImuSample s;
  s.imu_id = which;
  s.time = state.time;
  s.gyro = state.angular_rate + spec.gyro_bias + draw(rng, n, spec.gyro_noise_std);
  s.accel = to_body * (state.acceleration - gravity_world()) + spec.accel_bias +
            draw(rng, n, spec.accel_noise_std);
  Vec3 m = to_body * magnetic_north() + draw(rng, n, spec.mag_noise_std);
  s.mag = m.normalized();
  return s;
}

ImuSensor::ImuSensor(ImuId which, const ImuNoiseSpec& spec)
    : which_(which), spec_(spec), rng_(make_stream(spec.seed, which)) {
  spec_.validate();
}

ImuSample ImuSensor::sample(const TrueState& state) {
  return sample_imu(state, spec_, which_, rng_);
}

}  // namespace uavinspect
