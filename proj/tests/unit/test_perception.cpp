#include "uavinspect/perception.hpp"

#include "uavinspect/errors.hpp"

#include <doctest.h>

using namespace uavinspect;

namespace {

CaptureRecord rec(int i, const Vec3& p, Label l, double yaw = 0.0) {
  CaptureRecord r;
  r.image_id = image_id_for(i);
  r.time = 10.0 * i;
  r.est_position = p;
  r.est_quat = yaw_quat(yaw);
  r.label = l;
  return r;
}

}  // namespace

TEST_CASE("capture tick") {
  CHECK_FALSE(capture_tick(9.99, 0.0));
  CHECK(capture_tick(10.0, 0.0));
  // Step through the loop clock as the mission does (t = n * dt).
  std::vector<double> at;
  double last = 0.0;
  at.push_back(0.0);
  for (long n = 1; n <= 6000; ++n) {
    const double t = n * 0.01;
    if (capture_tick(t, last)) {
      at.push_back(t);
      last = t;
    }
  }
  REQUIRE(at.size() == 7);
  for (std::size_t k = 0; k < at.size(); ++k) CHECK(std::abs(at[k] - 10.0 * k) <= 0.01);
}

TEST_CASE("image ids") {
  CHECK(image_id_for(0) == "img_000000");
  CHECK(image_id_for(42) == "img_000042");
}

TEST_CASE("oracle classifier") {
  Classifier c(ClassifierSpec{});
  const std::vector<int> one{3};
  CHECK(c.classify(one) == Label::crack);
  CHECK(c.classify(std::vector<int>{}) == Label::not_crack);
  CHECK(oracle_label(one) == Label::crack);
}

TEST_CASE("noisy classifier hits its accuracy and is reproducible") {
  ClassifierSpec spec;
  spec.kind = ClassifierKind::noisy;
  spec.accuracy = 0.95;
  spec.seed = 5;
  Classifier a(spec);
  Classifier b(spec);
  const std::vector<int> crack{1};
  const std::vector<int> none{};
  int right = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto& vis = (i % 3 == 0) ? crack : none;
    const Label la = a.classify(vis);
    CHECK(la == b.classify(vis));
    if (la == oracle_label(vis)) ++right;
  }
  const double acc = static_cast<double>(right) / n;
  CHECK(acc >= 0.94);
  CHECK(acc <= 0.96);
}

TEST_CASE("classifier spec validation and names") {
  ClassifierSpec s;
  s.accuracy = 1.2;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  CHECK(classifier_kind_from_string("noisy") == ClassifierKind::noisy);
  CHECK_THROWS_AS(classifier_kind_from_string("cnn"), ConfigError);
  CHECK(label_from_string(to_string(Label::crack)) == Label::crack);
  CHECK(to_string(Label::not_crack) == "not_crack");
}

TEST_CASE("fault coordinate filtering") {
  SUBCASE("no cracks") {
    const std::vector<CaptureRecord> r{rec(0, {0, 0, 0}, Label::not_crack), rec(1, {5, 0, 0}, Label::not_crack)};
    CHECK(filter_fault_coordinates(r).empty());
  }
  SUBCASE("single crack passes through") {
    const std::vector<CaptureRecord> r{rec(0, {0, 0, 0}, Label::not_crack), rec(1, {13, 0, 4.5}, Label::crack, kPi)};
    const auto f = filter_fault_coordinates(r);
    REQUIRE(f.size() == 1);
    CHECK(f[0].position.isApprox(Vec3(13, 0, 4.5)));
    CHECK(f[0].yaw == doctest::Approx(kPi));
    CHECK(f[0].image_id == "img_000001");
  }
  SUBCASE("two cracks 0.5 m apart merge into the earliest") {
    const std::vector<CaptureRecord> r{rec(2, {13, 0, 4.5}, Label::crack), rec(3, {13, 0.5, 4.5}, Label::crack)};
    const auto f = filter_fault_coordinates(r);
    REQUIRE(f.size() == 1);
    CHECK(f[0].image_id == "img_000002");
  }
  SUBCASE("matches a pairwise-distance oracle") {
    std::vector<CaptureRecord> r;
    const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {3, 0, 0}, {3.5, 0, 0}, {0, 1.9, 0}, {6, 0, 0}, {4.1, 0, 0}};
    for (std::size_t i = 0; i < pts.size(); ++i) r.push_back(rec(static_cast<int>(i), pts[i], Label::crack));
    // Greedy in capture order: keep a point unless it is within 2 m of one already kept.
    std::vector<Vec3> kept;
    for (const auto& p : pts) {
      bool near = false;
      for (const auto& k : kept) near = near || (p - k).norm() <= 2.0;
      if (!near) kept.push_back(p);
    }
    const auto f = filter_fault_coordinates(r);
    REQUIRE(f.size() == kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) CHECK(f[i].position.isApprox(kept[i]));
  }
}
