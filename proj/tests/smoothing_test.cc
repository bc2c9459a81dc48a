#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.h"
#include "segcert/error.h"
#include "segcert/rng.h"
#include "segcert/smoothing.h"
#include "segcert/stats.h"

namespace segcert {
namespace {

using Row = std::vector<CountsMatrix::value_type>;

CountsMatrix unanimous(std::size_t num, std::uint64_t draws) {
  return CountsMatrix::from_rows(std::vector<Row>(num, Row{static_cast<std::uint32_t>(draws), 0}),
                                 draws);
}

CountsMatrix single(Row row) {
  std::uint64_t total = 0;
  for (auto v : row) total += v;
  return CountsMatrix::from_rows({row}, total);
}

// Random counts for N components with per-component success rates drawn
// from [lo, 1].
std::pair<CountsMatrix, CountsMatrix> random_counts(RandomStream& rng, std::size_t num,
                                                    std::uint64_t n0, std::uint64_t n,
                                                    double lo) {
  CountsMatrix c0(num, 3, n0), c(num, 3, n);
  for (std::size_t i = 0; i < num; ++i) {
    const double p = lo + (1.0 - lo) * rng.uniform();
    const auto top = static_cast<std::size_t>(rng.below(3));
    for (auto* m : {&c0, &c}) {
      const std::uint64_t d = m->draws();
      std::binomial_distribution<std::uint64_t> b(d, p);
      const auto hits = static_cast<std::uint32_t>(b(rng));
      auto r = m->mutable_row(i);
      r[top] = hits;
      r[(top + 1) % 3] = static_cast<std::uint32_t>(d - hits);
    }
  }
  return {std::move(c0), std::move(c)};
}

TEST(CountsMatrix, RowSumsChecked) {
  EXPECT_THROW(CountsMatrix::from_rows({{3, 1}, {2, 1}}, 4), InvariantViolation);
  try {
    CountsMatrix::from_rows({{3, 1}, {2, 1}}, 4);
  } catch (const InvariantViolation& e) {
    EXPECT_NE(std::string(e.what()).find("component 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(CountsMatrix::from_rows({{3, 1}, {4}}, 4), DimensionMismatch);
}

TEST(TopClass, TiesGoToLowerId) {
  EXPECT_EQ(top_class(Row{5, 5, 1}), 0);
  EXPECT_EQ(top_class(Row{1, 5, 5}), 1);
  EXPECT_EQ(top_class(Row{0, 0}), 0);
}

TEST(Predict, Examples) {
  EXPECT_EQ(predict(single({100, 0}), 0.001).label, 0);
  EXPECT_EQ(predict(single({50, 50}), 0.001).label, kAbstain);
  EXPECT_EQ(predict(single({60, 40}), 0.001).label, kAbstain);
  EXPECT_EQ(predict(single({0, 3, 100}), 0.001).label, 2);
  EXPECT_EQ(predict(single({100, 0}), 0.001).radius, 0.0);
  EXPECT_THROW(predict(unanimous(2, 10), 0.001), DimensionMismatch);
}

TEST(CertifySingle, Examples) {
  const SingleResult a = certify_single(Row{10, 0}, Row{100, 0}, 0.25, 0.001);
  EXPECT_EQ(a.label, 0);
  EXPECT_NEAR(a.radius, 0.25 * oracle::quantile(oracle::cp_lower(100, 100, 0.999)), 1e-8);
  EXPECT_NEAR(a.radius, 0.25 * norm_quantile(std::pow(0.001, 0.01)), 1e-8);
  EXPECT_NEAR(a.radius, 0.37511875603015911872, 1e-9);

  EXPECT_EQ(certify_single(Row{10, 0}, Row{50, 50}, 0.25, 0.001), (SingleResult{kAbstain, 0.0}));

  const SingleResult c = certify_single(Row{0, 10}, Row{0, 100}, 1.0, 0.5);
  EXPECT_EQ(c.label, 1);
  EXPECT_GT(c.radius, 0.0);

  EXPECT_THROW(certify_single(Row{10, 0}, Row{10, 0, 0}, 0.25, 0.001), DimensionMismatch);
}

TEST(CertifySingle, ClosedFormAtUnanimity) {
  for (std::uint32_t n : {10u, 100u, 1000u, 100000u}) {
    for (double alpha : {0.1, 0.001, 1e-6}) {
      for (double sigma : {0.12, 0.25, 1.0}) {
        const SingleResult r = certify_single(Row{1, 0}, Row{n, 0}, sigma, alpha);
        const double lower = std::pow(alpha, 1.0 / n);
        if (lower <= 0.5) {
          ASSERT_EQ(r, (SingleResult{kAbstain, 0.0})) << n << " " << alpha;
          continue;
        }
        ASSERT_EQ(r.label, 0);
        ASSERT_NEAR(r.radius, sigma * oracle::quantile(lower), 1e-8);
      }
    }
  }
}

TEST(SegCertify, UnanimousComponentsCertify) {
  CertConfig cfg;
  const CertificationResult r = seg_certify(unanimous(100, 100), unanimous(100, 100), cfg);
  ASSERT_EQ(r.decisions.size(), 100u);
  for (const auto& d : r.decisions) {
    EXPECT_EQ(d.label, 0);
    EXPECT_NEAR(d.p_value, std::pow(0.75, 100), 1e-25);
    EXPECT_EQ(d.hit_count, 100u);
  }
  EXPECT_NEAR(r.radius, 0.25 * 0.6744897501960817, 1e-12);
  EXPECT_NEAR(r.radius, 0.1686, 5e-5);
  EXPECT_EQ(r.certified_fraction, 1.0);
  EXPECT_FALSE(r.may_contain_errors);
}

TEST(SegCertify, BoundaryComponentAbstains) {
  auto rows = std::vector<Row>(10, Row{100, 0});
  rows[3] = Row{75, 25};
  const CountsMatrix counts = CountsMatrix::from_rows(rows, 100);
  const CertificationResult r = seg_certify(unanimous(10, 100), counts, CertConfig{});
  EXPECT_EQ(r.decisions[3].label, kAbstain);
  EXPECT_NEAR(r.decisions[3].p_value, 0.55347082384824821985, 1e-12);
  EXPECT_EQ(r.num_certified(), 9u);
  EXPECT_DOUBLE_EQ(r.certified_fraction, 0.9);
}

TEST(SegCertify, AllAbstainKeepsConfiguredRadius) {
  const CountsMatrix split = CountsMatrix::from_rows(std::vector<Row>(4, Row{50, 50}), 100);
  const CertificationResult r = seg_certify(split, split, CertConfig{});
  EXPECT_EQ(r.num_certified(), 0u);
  EXPECT_EQ(r.certified_fraction, 0.0);
  EXPECT_DOUBLE_EQ(r.radius, radius(0.25, 0.75));
}

TEST(SegCertify, RejectsBadInput) {
  CertConfig cfg;
  EXPECT_THROW(seg_certify(unanimous(3, 100), unanimous(4, 100), cfg), DimensionMismatch);
  EXPECT_THROW(seg_certify(unanimous(3, 50), unanimous(3, 100), cfg), DimensionMismatch);
  cfg.tau = 0.4;
  EXPECT_THROW(seg_certify(unanimous(3, 100), unanimous(3, 100), cfg), InvalidArgument);
  cfg = CertConfig{};
  cfg.budget = 2;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.correction = Correction::kKfwer;
  EXPECT_NO_THROW(cfg.validate());
  for (auto bad : {0.0, 1.0}) {
    CertConfig c;
    c.alpha = bad;
    EXPECT_THROW(c.validate(), InvalidArgument);
  }
  CertConfig c;
  c.sigma = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(SegCertify, BudgetFlagsPossibleErrors) {
  CertConfig cfg;
  cfg.correction = Correction::kKfwer;
  cfg.budget = 3;
  const auto r = seg_certify(unanimous(5, 100), unanimous(5, 100), cfg);
  EXPECT_TRUE(r.may_contain_errors);
  // k = budget + 1 larger than N is clamped rather than rejected.
  cfg.budget = 50;
  EXPECT_EQ(seg_certify(unanimous(5, 100), unanimous(5, 100), cfg).num_certified(), 5u);
}

TEST(SegCertify, KfwerBudgetZeroIsHolm) {
  RandomStream rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto [c0, c] = random_counts(rng, 200, 100, 100, 0.6);
    CertConfig holm_cfg;
    CertConfig k_cfg;
    k_cfg.correction = Correction::kKfwer;
    ASSERT_EQ(seg_certify(c0, c, holm_cfg).labels(), seg_certify(c0, c, k_cfg).labels());
  }
}

TEST(SegCertify, Properties) {
  RandomStream rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t num = 1 + rng.below(300);
    auto [c0, c] = random_counts(rng, num, 50, 200, 0.5);
    const double alpha = trial % 2 ? 0.01 : 0.2;

    CertConfig base;
    base.n0 = 50;
    base.n = 200;
    base.alpha = alpha;

    std::vector<std::vector<ClassId>> by_method;
    for (Correction m : {Correction::kBonferroni, Correction::kHolm, Correction::kKfwer}) {
      CertConfig cfg = base;
      cfg.correction = m;
      if (m == Correction::kKfwer) cfg.budget = rng.below(5);
      const auto r = seg_certify(c0, c, cfg);
      for (std::size_t i = 0; i < num; ++i) {
        const auto& d = r.decisions[i];
        ASSERT_GE(d.p_value, 0.0);
        ASSERT_LE(d.p_value, 1.0);
        ASSERT_EQ(d.guessed_class, top_class(c0.row(i)));
        ASSERT_EQ(d.hit_count, c.at(i, d.guessed_class));
        if (d.label != kAbstain) {
          ASSERT_LE(d.p_value, alpha);
          ASSERT_EQ(d.label, d.guessed_class);
        }
      }
      by_method.push_back(r.labels());
    }
    for (std::size_t i = 0; i < num; ++i) {
      if (by_method[0][i] != kAbstain) ASSERT_NE(by_method[1][i], kAbstain);
      if (by_method[1][i] != kAbstain) ASSERT_NE(by_method[2][i], kAbstain);
    }

    std::vector<ClassId> prev;
    for (double tau : {0.5, 0.6, 0.75, 0.9, 0.99}) {
      CertConfig cfg = base;
      cfg.tau = tau;
      const auto labels = seg_certify(c0, c, cfg).labels();
      if (!prev.empty()) {
        for (std::size_t i = 0; i < num; ++i) {
          if (labels[i] != kAbstain) ASSERT_NE(prev[i], kAbstain);
        }
      }
      prev = labels;
    }
  }
}

TEST(SegCertify, DeterministicAcrossThreads) {
  RandomStream rng(23);
  auto [c0, c] = random_counts(rng, 20000, 100, 100, 0.6);
  CertConfig cfg;
  const auto one = seg_certify(c0, c, cfg, 1);
  for (std::size_t threads : {2u, 3u, 8u}) {
    const auto many = seg_certify(c0, c, cfg, threads);
    ASSERT_EQ(one.labels(), many.labels());
    for (std::size_t i = 0; i < one.decisions.size(); ++i) {
      ASSERT_EQ(one.decisions[i].p_value, many.decisions[i].p_value);
    }
  }
  EXPECT_EQ(seg_certify(c0, c, cfg).labels(), one.labels());
}

// Estimation reads only `counts`: changing the runner-up mass in counts0
// without changing its argmax leaves the result untouched.
TEST(SegCertify, SelectionCountsOnlyPickTheClass) {
  const CountsMatrix c = CountsMatrix::from_rows({{90, 10}, {80, 20}}, 100);
  const CountsMatrix a = CountsMatrix::from_rows({{100, 0}, {60, 40}}, 100);
  const CountsMatrix b = CountsMatrix::from_rows({{51, 49}, {99, 1}}, 100);
  CertConfig cfg;
  cfg.alpha = 0.1;
  const auto ra = seg_certify(a, c, cfg);
  const auto rb = seg_certify(b, c, cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(ra.decisions[i].p_value, rb.decisions[i].p_value);
    EXPECT_EQ(ra.decisions[i].label, rb.decisions[i].label);
  }
}

// Proposition 1: when no component's true top-class probability exceeds
// tau, certifying anything is a type I error, which Holm bounds by alpha.
TEST(SegCertify, SoundnessMonteCarlo) {
  constexpr int reps = 10000;
  constexpr std::size_t num = 100;
  constexpr double alpha = 0.01;
  CertConfig cfg;
  cfg.alpha = alpha;
  int any = 0;
  for (int r = 0; r < reps; ++r) {
    RandomStream rng = RandomStream::keyed(31, {static_cast<std::uint64_t>(r)});
    CountsMatrix c0(num, 2, 100), c(num, 2, 100);
    for (std::size_t i = 0; i < num; ++i) {
      const double p = i % 2 ? 0.75 : 0.7;
      for (auto* m : {&c0, &c}) {
        std::binomial_distribution<std::uint64_t> b(100, p);
        const auto hits = static_cast<std::uint32_t>(b(rng));
        m->mutable_row(i)[0] = hits;
        m->mutable_row(i)[1] = 100 - hits;
      }
    }
    any += seg_certify(c0, c, cfg).num_certified() > 0;
  }
  EXPECT_LE(any / double(reps), alpha + 3.0 * std::sqrt(alpha / reps));
}

TEST(IndivClass, Examples) {
  const auto r = indiv_class_certify(unanimous(100, 100), unanimous(100, 100), 0.25, 0.001);
  EXPECT_EQ(r.num_certified(), 100u);
  EXPECT_NEAR(r.radius, 0.25 * oracle::quantile(std::pow(1e-5, 0.01)), 1e-8);
  EXPECT_NEAR(r.radius, 0.30830203196407975385, 1e-9);

  auto rows = std::vector<Row>(100, Row{100, 0});
  rows[42] = Row{50, 50};
  const auto bad = indiv_class_certify(unanimous(100, 100), CountsMatrix::from_rows(rows, 100),
                                       0.25, 0.001);
  EXPECT_EQ(bad.num_certified(), 0u);
  EXPECT_EQ(bad.radius, 0.0);
}

TEST(IndivClass, MinimumRadiusOverComponents) {
  const CountsMatrix c = CountsMatrix::from_rows({{100, 0}, {97, 3}, {99, 1}}, 100);
  const auto r = indiv_class_certify(unanimous(3, 100), c, 0.5, 0.003);
  ASSERT_EQ(r.num_certified(), 3u);
  EXPECT_NEAR(r.radius, 0.5 * oracle::quantile(oracle::cp_lower(97, 100, 0.999)), 1e-8);
}

TEST(IndivClass, SingleComponentMatchesCertifySingle) {
  RandomStream rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    auto [c0, c] = random_counts(rng, 1, 20, 100, 0.3);
    const double alpha = 0.001 + 0.2 * rng.uniform();
    const auto indiv = indiv_class_certify(c0, c, 0.25, alpha);
    const auto one = certify_single(c0.row(0), c.row(0), 0.25, alpha);
    ASSERT_EQ(indiv.decisions[0].label, one.label);
    ASSERT_EQ(indiv.radius, one.radius);
  }
}

TEST(JointClass, Examples) {
  const Labeling v{0, 1, 1, 0, 2};
  const std::vector<Labeling> same0(10, v), same(100, v);
  const JointResult a = joint_class_certify(same0, same, 0.25, 0.001);
  ASSERT_TRUE(a.certified);
  EXPECT_EQ(a.labeling, v);
  EXPECT_NEAR(a.radius, 0.25 * 1.5006, 1e-3);
  EXPECT_NEAR(a.radius, 0.37511875603015911872, 1e-9);

  const Labeling w{1, 1, 1, 0, 2};
  std::vector<Labeling> split;
  for (int i = 0; i < 50; ++i) {
    split.push_back(v);
    split.push_back(w);
  }
  const JointResult b = joint_class_certify(split, split, 0.25, 0.001);
  EXPECT_FALSE(b.certified);
  EXPECT_TRUE(b.labeling.empty());
  EXPECT_EQ(b.radius, 0.0);

  EXPECT_THROW(joint_class_certify(std::vector<Labeling>{{0, 1}}, std::vector<Labeling>{{0}},
                                   0.25, 0.001),
               DimensionMismatch);
}

TEST(JointClass, TiesGoToSmallestLabeling) {
  const std::vector<Labeling> sel{{1, 0}, {0, 1}, {0, 1}, {1, 0}};
  const std::vector<Labeling> est(100, Labeling{0, 1});
  const auto r = joint_class_certify(sel, est, 0.25, 0.01);
  ASSERT_TRUE(r.certified);
  EXPECT_EQ(r.labeling, (Labeling{0, 1}));
}

TEST(Radius, Helpers) {
  EXPECT_NEAR(radius(0.25, 0.75), 0.1686224375490204358, 1e-15);
  EXPECT_NEAR(cohen_radius(0.5, 0.9, 0.1), 0.5 * oracle::quantile(0.9), 1e-12);
  EXPECT_NEAR(sigma_for_target_radius(std::sqrt(3.0) * M_PI, 0.75), 8.06742888401310477, 1e-12);
  for (double tau : {0.6, 0.75, 0.95}) {
    EXPECT_NEAR(radius(sigma_for_target_radius(0.3, tau), tau), 0.3, 1e-14);
  }
  EXPECT_THROW(radius(0.0, 0.75), InvalidArgument);
  EXPECT_THROW(radius(0.25, 1.0), InvalidArgument);
  EXPECT_THROW(sigma_for_target_radius(0.3, 0.5), InvalidArgument);
}

}  // namespace
}  // namespace segcert
