#pragma once

#include "uavinspect/geometry.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavinspect {

enum class Label { crack, not_crack };

std::string_view to_string(Label l);
Label label_from_string(std::string_view s);

/// One image event. `visible_decals` is simulator ground truth and never leaves the process.
struct CaptureRecord {
  std::string image_id;
  double time{0.0};
  Vec3 est_position{Vec3::Zero()};
  Quat est_quat{Quat::Identity()};
  std::vector<int> visible_decals;
  Label label{Label::not_crack};

  [[nodiscard]] double yaw() const { return yaw_of(est_quat); }
};

/// "img_000042" style names.
std::string image_id_for(int index);

enum class ClassifierKind { oracle, noisy };

std::string_view to_string(ClassifierKind k);
ClassifierKind classifier_kind_from_string(std::string_view s);

struct ClassifierSpec {
  ClassifierKind kind{ClassifierKind::oracle};
  double accuracy{0.95};
  std::uint64_t seed{0};

  void validate() const;
};

/// True once `interval` has elapsed since the last capture. A nanosecond of
/// slack absorbs clock round-off so captures land on the nominal step.
bool capture_tick(double clock, double last_capture, double interval = 10.0);

/// Stateful classifier; the noisy variant owns a seeded stream so label
/// sequences are reproducible.
class Classifier {
 public:
  explicit Classifier(const ClassifierSpec& spec);
  Label classify(std::span<const int> visible_decals);
  [[nodiscard]] const ClassifierSpec& spec() const { return spec_; }

 private:
  ClassifierSpec spec_;
  std::mt19937_64 rng_;
};

Label oracle_label(std::span<const int> visible_decals);

struct FaultCoordinate {
  std::string image_id;
  double time{0.0};
  Vec3 position{Vec3::Zero()};
  double yaw{0.0};
};

/// Crack-labelled capture poses in capture order, with later records that fall
/// within `merge_radius` of an already kept pose dropped.
std::vector<FaultCoordinate> filter_fault_coordinates(std::span<const CaptureRecord> records,
                                                      double merge_radius = 2.0);

}  // namespace uavinspect
