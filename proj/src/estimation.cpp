#include "uavinspect/estimation.hpp"

#include "uavinspect/errors.hpp"

namespace uavinspect {

namespace {

bool symmetric_psd(const Eigen::MatrixXd& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  return es.eigenvalues().minCoeff() >= -1e-12;
}

}  // namespace

KalmanConfig KalmanConfig::for_sensors(double s1, double s2) {
  KalmanConfig c;
  c.R = Eigen::Vector2d(s1 * s1, s2 * s2).asDiagonal();
  return c;
}

void KalmanConfig::validate() const {
  if (!symmetric_psd(Q)) throw ConfigError("kalman Q must be symmetric positive semi-definite");
  if (!symmetric_psd(P0)) throw ConfigError("kalman P0 must be symmetric positive semi-definite");
  if (!symmetric_psd(R)) throw ConfigError("kalman R must be symmetric positive semi-definite");
  if (std::abs(R.determinant()) < 1e-300) throw ConfigError("kalman R must be invertible");
}

Eigen::Matrix<double, 2, 3> measurement_matrix() {
  Eigen::Matrix<double, 2, 3> H;
  H << 0, 0, 1,
       0, 0, 1;
  return H;
}

Mat3 transition(double dt) {
  Mat3 F;
  F << 1, dt, 0.5 * dt * dt,
       0, 1, dt,
       0, 0, 1;
  return F;
}

KalmanState make_kalman_state(const Vec3& position, const Vec3& velocity, const KalmanConfig& cfg,
                              double time) {
  KalmanState s;
  for (int i = 0; i < 3; ++i) {
    s.axes[i].x = Vec3(position[i], velocity[i], 0.0);
    s.axes[i].P = cfg.P0;
  }
  s.time = time;
  return s;
}

Vec3 world_accel(const ImuSample& imu, const AttitudeEstimate& att) {
  return att.quat * imu.accel + gravity_world();
}

KalmanAxis kalman_predict(const KalmanAxis& axis, const KalmanConfig& cfg, double dt) {
  const Mat3 F = transition(dt);
  KalmanAxis out;
  out.x = F * axis.x;
  out.P = F * axis.P * F.transpose() + cfg.Q;
  return out;
}

KalmanState kalman_predict(const KalmanState& state, const KalmanConfig& cfg, double dt) {
  KalmanState out = state;
  for (auto& a : out.axes) a = kalman_predict(a, cfg, dt);
  out.time = state.time + dt;
  return out;
}

KalmanAxis kalman_update(const KalmanAxis& axis, const Eigen::Vector2d& z, const KalmanConfig& cfg) {
  const auto H = measurement_matrix();
  const Mat2 S = H * axis.P * H.transpose() + cfg.R;
  Eigen::FullPivLU<Mat2> lu(S);
  if (!lu.isInvertible()) throw ConfigError("innovation covariance is singular; R must be invertible");
  const Eigen::Matrix<double, 3, 2> K = axis.P * H.transpose() * lu.inverse();
  KalmanAxis out;
  out.x = axis.x + K * (z - H * axis.x);
  const Mat3 P = (Mat3::Identity() - K * H) * axis.P;
  out.P = 0.5 * (P + P.transpose());
  return out;
}

KalmanState kalman_update(const KalmanState& state, const Vec3& a1, const Vec3& a2,
                          const KalmanConfig& cfg) {
  KalmanState out = state;
  for (int i = 0; i < 3; ++i) out.axes[i] = kalman_update(state.axes[i], {a1[i], a2[i]}, cfg);
  return out;
}

void DeadReckoner::push(const Vec3& a, double dt) {
  // The sample is the acceleration held over the step it closes.
  const Vec3 v_next = v_ + a * dt;
  p_ += 0.5 * (v_ + v_next) * dt;
  v_ = v_next;
}

std::vector<Vec3> dead_reckon(std::span<const Vec3> accel, double dt) {
  std::vector<Vec3> trace;
  trace.reserve(accel.size());
  DeadReckoner dr;
  for (const auto& a : accel) {
    dr.push(a, dt);
    trace.push_back(dr.position());
  }
  return trace;
}

PoseEstimator::PoseEstimator(const Vec3& position, const Quat& attitude, const ComplementaryGain& gain,
                             const KalmanConfig& cfg, double time, double tilt_gate)
    : gain_(gain),
      cfg_(cfg),
      tilt_gate_(tilt_gate),
      attitude_(AttitudeEstimate::from_quat(attitude, time)),
      dr_attitude_(attitude_),
      kf_(make_kalman_state(position, Vec3::Zero(), cfg, time)),
      dr_(position, Vec3::Zero()) {
  cfg_.validate();
  if (!(tilt_gate_ >= 0.0)) throw ConfigError("tilt_gate must be >= 0");
}

void PoseEstimator::step(const ImuSample& imu1, const ImuSample& imu2, double dt) {
  attitude_ = complementary_step(attitude_, imu1, gain_, dt, tilt_gate_);
  dr_attitude_ = complementary_step(dr_attitude_, imu1, ComplementaryGain(1.0), dt);

  kf_ = kalman_update(kf_, world_accel(imu1, attitude_), world_accel(imu2, attitude_), cfg_);
  kf_ = kalman_predict(kf_, cfg_, dt);

  dr_.push(world_accel(imu1, dr_attitude_), dt);
}

EstimatedState PoseEstimator::estimate() const {
  return {kf_.position(), kf_.velocity(), attitude_.quat, kf_.time};
}

}  // namespace uavinspect
