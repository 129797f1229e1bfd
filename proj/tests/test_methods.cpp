#include <doctest.h>

#include <cmath>

#include "crosstrainer/errors.hpp"
#include "crosstrainer/methods.hpp"
#include "crosstrainer/reweight.hpp"
#include "crosstrainer/rng.hpp"

using namespace crosstrainer;

namespace {

Dataset gaussian_rows(std::size_t n, std::size_t d, std::uint64_t seed, double shift = 0.0) {
  Rng rng(seed);
  Dataset ds;
  ds.n_cols = d;
  std::vector<double> x(d);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (auto& v : x) {
      v = rng.normal() + shift;
      sum += v;
    }
    ds.append_row(x.data(), sum + rng.normal() > 0.0 ? 1 : 0);
  }
  return ds;
}

TrainConfig desk_config(std::uint64_t seed) {
  TrainConfig cfg;
  cfg.seed = seed;
  cfg.tolerance = 1e-3;
  cfg.max_epochs = 60;
  return cfg;
}

}  // namespace

TEST_CASE("fit_baseline delegates to train_at_alpha at the three endpoints") {
  Dataset target = gaussian_rows(150, 5, 1);
  Dataset source = gaussian_rows(450, 5, 2);
  Dataset test = gaussian_rows(300, 5, 3);
  TrainConfig cfg = desk_config(4);

  struct Case {
    BaselineKind kind;
    double alpha;
    const char* name;
  };
  double beta = 150.0 / 600.0;
  for (auto c : {Case{BaselineKind::kTarget, 1.0, "target"},
                 Case{BaselineKind::kSource, 0.0, "source"},
                 Case{BaselineKind::kAll, beta, "all"}}) {
    MethodResult res = fit_baseline(c.kind, target, source, test, cfg);
    CHECK(res.method_name == c.name);
    TrainResult direct = train_at_alpha(make_alpha_problem(target, source, c.alpha), cfg);
    CHECK(res.model.coefficients == direct.model.coefficients);
    CHECK(predict(res.model, test) == predict(direct.model, test));
    CHECK(res.test_accuracy == accuracy(direct.model, test));
  }
}

TEST_CASE("balanced_domain_weights puts equal total mass on each class") {
  for (auto [nt, ns] : {std::pair<std::size_t, std::size_t>{10, 1000},
                        {333, 77},
                        {1, 999999}}) {
    DomainWeights w = balanced_domain_weights(nt, ns);
    double target_total = w.target_weight * static_cast<double>(nt);
    double source_total = w.source_weight * static_cast<double>(ns);
    CHECK(std::abs(target_total - source_total) <= 1e-9);
  }
  CHECK_THROWS_AS(balanced_domain_weights(0, 5), validation_error);
}

TEST_CASE("domain_classifier: indistinguishable domains score near chance") {
  Dataset target = gaussian_rows(600, 6, 10);
  Dataset source = gaussian_rows(600, 6, 11);
  TrainConfig cfg = desk_config(12);
  LinearModel dom = domain_classifier(target, source, cfg);

  // fresh draws from the same distribution, labeled by membership
  Dataset held_t = gaussian_rows(500, 6, 13);
  Dataset held_s = gaussian_rows(500, 6, 14);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < held_t.n_rows; ++i) correct += dom.predict_row(held_t.row(i)) == 1;
  for (std::size_t i = 0; i < held_s.n_rows; ++i) correct += dom.predict_row(held_s.row(i)) == 0;
  double acc = static_cast<double>(correct) / 1000.0;
  CHECK(acc >= 0.47);
  CHECK(acc <= 0.53);
}

TEST_CASE("domain_classifier: disjoint supports are separated") {
  Rng rng(20);
  Dataset target, source;
  target.n_cols = source.n_cols = 1;
  for (int i = 0; i < 300; ++i) {
    double xt = 0.5 + rng.uniform() * 2.0;   // target lives on x > 0
    double xs = -0.5 - rng.uniform() * 2.0;  // source on x < 0
    target.append_row(&xt, 1);
    source.append_row(&xs, 0);
  }
  TrainConfig cfg = desk_config(21);
  LinearModel dom = domain_classifier(target, source, cfg);
  std::size_t correct = 0;
  for (int i = 0; i < 200; ++i) {
    double xt = 0.5 + rng.uniform() * 2.0;
    double xs = -0.5 - rng.uniform() * 2.0;
    correct += dom.predict_row(&xt) == 1;
    correct += dom.predict_row(&xs) == 0;
  }
  CHECK(static_cast<double>(correct) / 400.0 >= 0.99);

  Dataset empty;
  empty.n_cols = 1;
  CHECK_THROWS_AS(domain_classifier(target, empty, cfg), validation_error);
}

TEST_CASE("pred: indistinguishable domains reduce to the All baseline") {
  Dataset target = gaussian_rows(300, 5, 30);
  Dataset source = gaussian_rows(900, 5, 31);
  Dataset test = gaussian_rows(800, 5, 32);
  TrainConfig cfg = desk_config(33);

  MethodResult pred = fit_pred(target, source, test, cfg);
  MethodResult all = fit_baseline(BaselineKind::kAll, target, source, test, cfg);
  auto pa = predict(pred.model, test);
  auto pb = predict(all.model, test);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) agree += pa[i] == pb[i];
  CHECK(static_cast<double>(agree) / static_cast<double>(pa.size()) >= 0.97);
}

TEST_CASE("pred weighting is the membership probability itself") {
  // p = 0.9 carries nine times the weight of p = 0.1
  LinearModel dom;
  dom.coefficients = {std::log(9.0)};
  double hi = 1.0, lo = -1.0;
  CHECK(dom.proba(&hi) / dom.proba(&lo) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("import_weight formula and clamping") {
  CHECK(import_weight(0.5, 3.7) == 3.7);           // 1/p - 1 = 1
  CHECK(import_weight(2.0 / 3.0, 1.0) == 2.0);     // exact in double arithmetic
  CHECK(import_weight(0.9999, 1.0) == import_weight(0.999, 1.0));  // clamped above
  CHECK(import_weight(1e-9, 1.0) == import_weight(0.001, 1.0));    // clamped below
  double capped = import_weight(1.0, 1.0);
  CHECK(capped >= 998.0);
  CHECK(capped <= 1000.0);
  CHECK(std::isfinite(capped));
  CHECK(import_weight(0.25, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("import weights are positive and finite on a real run") {
  Dataset target = gaussian_rows(120, 4, 40, 0.4);
  Dataset source = gaussian_rows(500, 4, 41);
  TrainConfig cfg = desk_config(42);
  LinearModel dom = domain_classifier(target, source, cfg);
  double c = 500.0 / 120.0;
  for (std::size_t i = 0; i < source.n_rows; ++i) {
    double w = import_weight(dom.proba(source.row(i)), c);
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
  }
}

TEST_CASE("feataug_transform lays out <x,x,0> and <x,0,x>") {
  Dataset ds;
  ds.n_cols = 2;
  double x[2] = {1.0, 2.0};
  ds.append_row(x, 1);

  Dataset s = feataug_transform(ds, Domain::kSource);
  REQUIRE(s.n_cols == 6);
  const double expect_s[6] = {1, 2, 1, 2, 0, 0};
  for (int j = 0; j < 6; ++j) CHECK(s.row(0)[j] == expect_s[j]);

  Dataset t = feataug_transform(ds, Domain::kTarget);
  const double expect_t[6] = {1, 2, 0, 0, 1, 2};
  for (int j = 0; j < 6; ++j) CHECK(t.row(0)[j] == expect_t[j]);
  CHECK(t.labels == ds.labels);

  Dataset zero;
  zero.n_cols = 3;
  double z[3] = {0, 0, 0};
  zero.append_row(z, 0);
  Dataset zt = feataug_transform(zero, Domain::kTarget);
  for (int j = 0; j < 9; ++j) CHECK(zt.row(0)[j] == 0.0);
}

TEST_CASE("feataug_transform keeps the original features recoverable") {
  Dataset ds = gaussian_rows(40, 7, 50);
  for (Domain dom : {Domain::kSource, Domain::kTarget}) {
    Dataset aug = feataug_transform(ds, dom);
    CHECK(aug.n_cols == 21);
    for (std::size_t i = 0; i < ds.n_rows; ++i)
      for (std::size_t j = 0; j < 7; ++j) CHECK(aug.row(i)[j] == ds.row(i)[j]);
  }
}

TEST_CASE("fit_feataug: 3d model; empty source reduces to augmented target training") {
  Dataset target = gaussian_rows(200, 4, 60);
  Dataset source = gaussian_rows(300, 4, 61);
  Dataset test = gaussian_rows(150, 4, 62);
  TrainConfig cfg = desk_config(63);

  MethodResult res = fit_feataug(target, source, test, cfg);
  CHECK(res.model.dim() == 12);
  CHECK(res.test_accuracy >= 0.0);
  CHECK(res.test_accuracy <= 1.0);

  Dataset empty;
  empty.n_cols = 4;
  MethodResult no_source = fit_feataug(target, empty, test, cfg);
  Dataset aug_target = feataug_transform(target, Domain::kTarget);
  std::vector<double> unit(aug_target.n_rows, 1.0);
  TrainResult direct = train_sgd(aug_target, unit, cfg);
  CHECK(no_source.model.coefficients == direct.model.coefficients);
  CHECK(no_source.test_accuracy == accuracy(direct.model, feataug_transform(test, Domain::kTarget)));
}
