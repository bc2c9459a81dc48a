#ifndef SEGCERT_SYNTHETIC_H_
#define SEGCERT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "segcert/rng.h"
#include "segcert/smoothing.h"

namespace segcert {

// Oracle base classifier for toy experiments: component i is labelled
// correctly with a fixed probability that ignores the input. The first
// `num_noisy` components err `noise_multiplier` times as often as the rest.
struct OracleSpec {
  std::size_t num_components = 100;
  std::size_t num_noisy = 1;
  double gamma = 0.0;
  double noise_multiplier = 5.0;
  std::size_t num_classes = 2;
  // Ground-truth labels; empty means every component belongs to class 0.
  std::vector<ClassId> true_labels;
  std::uint64_t seed = 0;

  void validate() const;
  ClassId true_label(std::size_t i) const {
    return true_labels.empty() ? 0 : true_labels[i];
  }
  // clamp(1 - multiplier * gamma, 0, 1) on noisy components, 1 - gamma elsewhere.
  double correctness(std::size_t i) const;
};

// Draws `draws` oracle outputs per component and tallies them. Wrong
// outputs are spread uniformly over the other classes.
CountsMatrix oracle_sample(const OracleSpec& spec, std::uint64_t draws, RandomStream& rng);

// Full labelings, one per draw, for joint (product-space) certification.
std::vector<Labeling> oracle_labelings(const OracleSpec& spec, std::uint64_t draws,
                                       RandomStream& rng);

enum class SweepAxis { kGamma, kComponents };

enum class Algorithm {
  kSegCertifyHolm,
  kSegCertifyBonferroni,
  kSegCertifyKfwer,
  kIndivClass,
  kJointClass,
};

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// RNG phases; together with (seed, grid index, rep index) they key every
// random stream used by a sweep.
enum class SamplePhase : std::uint64_t { kCounts0 = 0, kCounts = 1, kJoint0 = 2, kJoint = 3 };

struct SweepSpec {
  SweepAxis axis = SweepAxis::kGamma;
  std::vector<double> grid;
  std::size_t reps = 600;
  OracleSpec oracle;  // num_components or gamma is overridden per grid point
  CertConfig cert;    // correction/budget are overridden per algorithm
  std::vector<Algorithm> algorithms;
  // When set, the kfwer budget at each grid point is floor(fraction * N).
  std::optional<double> budget_fraction;
  std::size_t threads = 1;

  void validate() const;
};

struct SweepRow {
  double axis_value = 0.0;
  Algorithm algorithm = Algorithm::kSegCertifyHolm;
  std::uint64_t budget = 0;
  double alpha = 0.0;
  double mean_rate = 0.0;
  std::vector<double> rates;  // one per repetition
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (algorithm, grid index)

  // Rows for one algorithm in grid order.
  std::vector<const SweepRow*> series(Algorithm a, std::uint64_t budget = 0) const;
};

// Runs every requested algorithm on fresh oracle counts for each grid point
// and repetition, recording the certified-component rate. The output is
// independent of spec.threads.
SweepResult run_sweep(const SweepSpec& spec);

// Error budget b, either absolute or as a fraction of N.
struct ErrorBudget {
  double value = 0.0;
  bool relative = false;

  std::uint64_t resolve(std::size_t num_components) const;
};

// One kfwer sweep (k = b + 1) per budget, sharing random streams with
// run_sweep so that b = 0 reproduces the Holm rates exactly.
SweepResult run_budget_sweep(const SweepSpec& spec, const std::vector<ErrorBudget>& budgets);

}  // namespace segcert

#endif  // SEGCERT_SYNTHETIC_H_
