#include "uavinspect/perception.hpp"

#include "uavinspect/errors.hpp"

#include <cstdio>

namespace uavinspect {

std::string_view to_string(Label l) { return l == Label::crack ? "crack" : "not_crack"; }

Label label_from_string(std::string_view s) {
  if (s == "crack") return Label::crack;
  if (s == "not_crack") return Label::not_crack;
  throw ConfigError("unknown label '" + std::string(s) + "'");
}

std::string image_id_for(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img_%06d", index);
  return buf;
}

std::string_view to_string(ClassifierKind k) { return k == ClassifierKind::oracle ? "oracle" : "noisy"; }

ClassifierKind classifier_kind_from_string(std::string_view s) {
  if (s == "oracle") return ClassifierKind::oracle;
  if (s == "noisy") return ClassifierKind::noisy;
  throw ConfigError("classifier.kind must be 'oracle' or 'noisy', got '" + std::string(s) + "'");
}

void ClassifierSpec::validate() const {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw ConfigError("classifier.accuracy must be in [0, 1]");
}

bool capture_tick(double clock, double last_capture, double interval) {
  return clock - last_capture >= interval - 1e-9;
}

Classifier::Classifier(const ClassifierSpec& spec) : spec_(spec) {
  spec_.validate();
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    0xC1A55u};
  rng_.seed(seq);
}

Label oracle_label(std::span<const int> visible_decals) {
  return visible_decals.empty() ? Label::not_crack : Label::crack;
}

Label Classifier::classify(std::span<const int> visible_decals) {
  const Label truth = oracle_label(visible_decals);
  if (spec_.kind == ClassifierKind::oracle) return truth;
  std::bernoulli_distribution correct(spec_.accuracy);
  if (correct(rng_)) return truth;
  return truth == Label::crack ? Label::not_crack : Label::crack;
}

std::vector<FaultCoordinate> filter_fault_coordinates(std::span<const CaptureRecord> records,
                                                      double merge_radius) {
  std::vector<FaultCoordinate> out;
  for (const auto& r : records) {
    if (r.label != Label::crack) continue;
    bool merged = false;
    for (const auto& f : out) {
      if ((f.position - r.est_position).norm() <= merge_radius) {
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({r.image_id, r.time, r.est_position, r.yaw()});
  }
  return out;
}

}  // namespace uavinspect
