#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "oracles.h"
#include "segcert/error.h"
#include "segcert/metrics.h"
#include "segcert/rng.h"

namespace segcert {
namespace {

constexpr ClassId A = kAbstain;
constexpr ClassId I = kIgnore;

LabelMap map(std::vector<ClassId> labels, std::size_t classes = 3) {
  return {std::move(labels), classes};
}

TEST(CertifiedAccuracy, Examples) {
  EXPECT_EQ(certified_accuracy(map({0, 1, 2}), map({0, 1, 2})), 1.0);
  EXPECT_EQ(certified_accuracy(map({A, A, A}), map({0, 1, 2})), 0.0);
  EXPECT_DOUBLE_EQ(certified_accuracy(map({0, A, 1, 2}), map({0, 0, 1, I})), 2.0 / 3.0);
}

TEST(AbstainRate, Examples) {
  EXPECT_EQ(abstain_rate(map({0, 1}), map({0, 0})), 0.0);
  EXPECT_EQ(abstain_rate(map({A, A}), map({0, 1})), 1.0);
  std::vector<ClassId> pred(100, 0), truth(100, 0);
  for (int i = 0; i < 7; ++i) pred[i * 13] = A;
  EXPECT_DOUBLE_EQ(abstain_rate(map(pred), map(truth)), 0.07);
  EXPECT_DOUBLE_EQ(abstain_rate(map({0, A, 1, 2}), map({0, 0, 1, I})), 1.0 / 3.0);
}

TEST(Metrics, Errors) {
  EXPECT_THROW(certified_accuracy(map({0, 1}), map({0})), DimensionMismatch);
  EXPECT_THROW(certified_accuracy(map({0}), map({I})), UndefinedMetric);
  EXPECT_THROW(abstain_rate(map({0}), map({I})), UndefinedMetric);
  EXPECT_THROW(certified_accuracy(map({5}), map({0})), InvalidArgument);
  EXPECT_THROW(certified_accuracy(map({0}), map({A})), InvalidArgument);
  EXPECT_THROW(certified_accuracy(map({0}, 2), map({0}, 3)), DimensionMismatch);
}

TEST(MeanIou, Examples) {
  const LabelMap t = map({0, 1, 2});
  EXPECT_EQ(mean_iou(std::span(&t, 1), std::span(&t, 1)), 1.0);

  const std::vector<LabelMap> truth{map({0, 0, 1, 1}, 2)};
  const std::vector<LabelMap> pred{map({0, 1, 1, 1}, 2)};
  EXPECT_DOUBLE_EQ(mean_iou(pred, truth), 7.0 / 12.0);

  const std::vector<LabelMap> abstained{map({A, A, A, A}, 2)};
  EXPECT_EQ(mean_iou(abstained, truth), 0.0);

  const std::vector<LabelMap> one_class{map({1, 1}, 2)};
  EXPECT_EQ(mean_iou(one_class, one_class), 1.0);
}

TEST(MeanIou, Errors) {
  const std::vector<LabelMap> a{map({0, 1})};
  const std::vector<LabelMap> b{map({0})};
  const std::vector<LabelMap> two{map({0, 1}), map({0, 1})};
  EXPECT_THROW(mean_iou(a, b), DimensionMismatch);
  EXPECT_THROW(mean_iou(a, two), DimensionMismatch);
}

struct RandomPair {
  std::vector<std::vector<int>> preds, truths;
  std::vector<LabelMap> pred_maps, truth_maps;
};

RandomPair random_pair(RandomStream& rng) {
  RandomPair r;
  const std::size_t inputs = 1 + rng.below(3);
  const int classes = 1 + static_cast<int>(rng.below(3));
  for (std::size_t i = 0; i < inputs; ++i) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<int> p(n), t(n);
    for (std::size_t j = 0; j < n; ++j) {
      p[j] = static_cast<int>(rng.below(classes + 1)) - 1;
      t[j] = rng.below(5) == 0 ? -2 : static_cast<int>(rng.below(classes));
    }
    t[0] = 0;
    r.preds.push_back(p);
    r.truths.push_back(t);
    r.pred_maps.push_back({std::vector<ClassId>(p.begin(), p.end()), std::size_t(classes)});
    r.truth_maps.push_back({std::vector<ClassId>(t.begin(), t.end()), std::size_t(classes)});
  }
  return r;
}

TEST(MeanIou, MatchesSetArithmetic) {
  RandomStream rng(44);
  for (int trial = 0; trial < 1000; ++trial) {
    const RandomPair r = random_pair(rng);
    const int classes = static_cast<int>(r.pred_maps[0].num_classes);
    ASSERT_NEAR(mean_iou(r.pred_maps, r.truth_maps), oracle::miou(r.preds, r.truths, classes),
                1e-14);
  }
}

TEST(MeanIou, PermutationInvariant) {
  RandomStream rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    RandomPair r = random_pair(rng);
    const double before = mean_iou(r.pred_maps, r.truth_maps);
    for (std::size_t i = 0; i < r.pred_maps.size(); ++i) {
      std::vector<std::size_t> perm(r.pred_maps[i].labels.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto p = r.pred_maps[i].labels, t = r.truth_maps[i].labels;
      for (std::size_t j = 0; j < perm.size(); ++j) {
        r.pred_maps[i].labels[j] = p[perm[j]];
        r.truth_maps[i].labels[j] = t[perm[j]];
      }
    }
    ASSERT_NEAR(mean_iou(r.pred_maps, r.truth_maps), before, 1e-14);
  }
}

TEST(Metrics, Bounds) {
  RandomStream rng(46);
  for (int trial = 0; trial < 500; ++trial) {
    const RandomPair r = random_pair(rng);
    const double acc = certified_accuracy(r.pred_maps[0], r.truth_maps[0]);
    const double abst = abstain_rate(r.pred_maps[0], r.truth_maps[0]);
    const double miou = mean_iou(r.pred_maps, r.truth_maps);
    ASSERT_GE(acc, 0.0);
    ASSERT_GE(abst, 0.0);
    ASSERT_GE(miou, 0.0);
    ASSERT_LE(miou, 1.0);
    ASSERT_LE(acc, 1.0 - abst + 1e-15);

    std::vector<LabelMap> clean;
    for (const auto& m : r.truth_maps) {
      LabelMap c = m;
      for (ClassId& v : c.labels) v = std::max(v, 0);
      clean.push_back(c);
    }
    ASSERT_EQ(mean_iou(clean, clean), 1.0);
  }
}

TEST(MeanIou, PerInputFirstAveraging) {
  const std::vector<LabelMap> truth{map({0, 0, 1, 1}, 2), map({1, 1}, 2)};
  const std::vector<LabelMap> pred{map({0, 1, 1, 1}, 2), map({1, 1}, 2)};
  // Pooled: (1/2 + 2/3 + 1) / 3; per input: ((1/2 + 2/3) / 2 + 1) / 2.
  EXPECT_DOUBLE_EQ(mean_iou(pred, truth), (0.5 + 2.0 / 3.0 + 1.0) / 3.0);
  EXPECT_DOUBLE_EQ(mean_iou(pred, truth, MiouAveraging::kPerInputFirst),
                   ((0.5 + 2.0 / 3.0) / 2.0 + 1.0) / 2.0);
}

}  // namespace
}  // namespace segcert
