#include "segcert/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "segcert/error.h"
#include "segcert/parallel.h"

namespace segcert {
namespace {

std::uint64_t binomial(std::uint64_t trials, double p, RandomStream& rng) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::int64_t> dist(static_cast<std::int64_t>(trials), p);
  return static_cast<std::uint64_t>(dist(rng));
}

ClassId wrong_class(ClassId truth, std::size_t num_classes, RandomStream& rng) {
  if (num_classes == 2) return 1 - truth;
  auto c = static_cast<ClassId>(rng.below(num_classes - 1));
  return c >= truth ? c + 1 : c;
}

bool is_seg_certify(Algorithm a) {
  return a == Algorithm::kSegCertifyHolm || a == Algorithm::kSegCertifyBonferroni ||
         a == Algorithm::kSegCertifyKfwer;
}

Correction correction_of(Algorithm a) {
  switch (a) {
    case Algorithm::kSegCertifyBonferroni: return Correction::kBonferroni;
    case Algorithm::kSegCertifyKfwer: return Correction::kKfwer;
    default: return Correction::kHolm;
  }
}

OracleSpec oracle_at(const SweepSpec& spec, double axis_value) {
  OracleSpec o;
  o.num_components = spec.oracle.num_components;
  o.num_noisy = spec.oracle.num_noisy;
  o.gamma = spec.oracle.gamma;
  o.noise_multiplier = spec.oracle.noise_multiplier;
  o.num_classes = spec.oracle.num_classes;
  o.seed = spec.oracle.seed;
  if (spec.axis == SweepAxis::kGamma) {
    o.gamma = axis_value;
    o.true_labels = spec.oracle.true_labels;
  } else {
    o.num_components = static_cast<std::size_t>(std::llround(axis_value));
  }
  return o;
}

std::uint64_t budget_at(const SweepSpec& spec, std::size_t num_components) {
  if (spec.budget_fraction) {
    return ErrorBudget{*spec.budget_fraction, true}.resolve(num_components);
  }
  return spec.cert.budget;
}

CertConfig config_for(const SweepSpec& spec, Algorithm a, std::uint64_t budget) {
  CertConfig cfg = spec.cert;
  cfg.correction = correction_of(a);
  cfg.budget = a == Algorithm::kSegCertifyKfwer ? budget : 0;
  return cfg;
}

}  // namespace

void OracleSpec::validate() const {
  if (num_components == 0) throw InvalidArgument("oracle needs at least one component");
  if (num_noisy > num_components) {
    throw InvalidArgument("oracle has more noisy components than components");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in [0, 1]");
  if (!(noise_multiplier >= 0.0)) throw InvalidArgument("noise multiplier must be >= 0");
  if (num_classes < 2) throw InvalidArgument("oracle needs at least two classes");
  if (!true_labels.empty()) {
    if (true_labels.size() != num_components) {
      throw DimensionMismatch("true labels do not match the number of components");
    }
    for (ClassId c : true_labels) {
      if (c < 0 || static_cast<std::size_t>(c) >= num_classes) {
        throw InvalidArgument("true label out of range");
      }
    }
  }
}

double OracleSpec::correctness(std::size_t i) const {
  const double err = i < num_noisy ? noise_multiplier * gamma : gamma;
  return std::clamp(1.0 - err, 0.0, 1.0);
}

CountsMatrix oracle_sample(const OracleSpec& spec, std::uint64_t draws, RandomStream& rng) {
  spec.validate();
  if (draws < 1) throw InvalidArgument("oracle sampling needs at least one draw");
  const std::size_t classes = spec.num_classes;
  CountsMatrix counts(spec.num_components, classes, draws);
  for (std::size_t i = 0; i < spec.num_components; ++i) {
    auto row = counts.mutable_row(i);
    const ClassId truth = spec.true_label(i);
    const std::uint64_t correct = binomial(draws, spec.correctness(i), rng);
    row[static_cast<std::size_t>(truth)] = static_cast<CountsMatrix::value_type>(correct);
    std::uint64_t remaining = draws - correct;
    if (classes == 2) {
      row[static_cast<std::size_t>(1 - truth)] =
          static_cast<CountsMatrix::value_type>(remaining);
      continue;
    }
    // Uniform multinomial over the wrong classes via sequential binomials.
    std::size_t left = classes - 1;
    for (std::size_t c = 0; c < classes; ++c) {
      if (static_cast<ClassId>(c) == truth) continue;
      const std::uint64_t take =
          left == 1 ? remaining : binomial(remaining, 1.0 / static_cast<double>(left), rng);
      row[c] = static_cast<CountsMatrix::value_type>(take);
      remaining -= take;
      --left;
    }
  }
  return counts;
}

std::vector<Labeling> oracle_labelings(const OracleSpec& spec, std::uint64_t draws,
                                       RandomStream& rng) {
  spec.validate();
  const std::size_t num = spec.num_components;
  std::vector<double> q(num);
  for (std::size_t i = 0; i < num; ++i) q[i] = spec.correctness(i);

  std::vector<Labeling> out(draws, Labeling(num));
  for (Labeling& v : out) {
    for (std::size_t i = 0; i < num; ++i) {
      const ClassId truth = spec.true_label(i);
      v[i] = rng.uniform() < q[i] ? truth : wrong_class(truth, spec.num_classes, rng);
    }
  }
  return out;
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kSegCertifyHolm: return "segcertify_holm";
    case Algorithm::kSegCertifyBonferroni: return "segcertify_bonferroni";
    case Algorithm::kSegCertifyKfwer: return "segcertify_kfwer";
    case Algorithm::kIndivClass: return "indiv_class";
    case Algorithm::kJointClass: return "joint_class";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kSegCertifyHolm, Algorithm::kSegCertifyBonferroni,
                      Algorithm::kSegCertifyKfwer, Algorithm::kIndivClass,
                      Algorithm::kJointClass}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (grid.empty()) throw InvalidArgument("sweep grid is empty");
  if (reps < 1) throw InvalidArgument("sweep needs at least one repetition");
  if (algorithms.empty()) throw InvalidArgument("sweep needs at least one algorithm");
  if (budget_fraction && !(*budget_fraction >= 0.0)) {
    throw InvalidArgument("budget fraction must be nonnegative");
  }
  for (double v : grid) {
    if (axis == SweepAxis::kComponents) {
      if (!(v >= 1.0) || v != std::floor(v)) {
        throw InvalidArgument("component-count grid values must be positive integers");
      }
      if (!oracle.true_labels.empty()) {
        throw InvalidArgument("explicit true labels cannot be used on a component-count axis");
      }
    }
    const OracleSpec o = oracle_at(*this, v);
    o.validate();
    for (Algorithm a : algorithms) config_for(*this, a, budget_at(*this, o.num_components)).validate();
  }
}

std::vector<const SweepRow*> SweepResult::series(Algorithm a, std::uint64_t budget) const {
  std::vector<const SweepRow*> out;
  for (const SweepRow& row : rows) {
    if (row.algorithm == a && (a != Algorithm::kSegCertifyKfwer || row.budget == budget)) {
      out.push_back(&row);
    }
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t grid_size = spec.grid.size();
  const std::size_t reps = spec.reps;
  const std::size_t num_algs = spec.algorithms.size();

  std::vector<OracleSpec> oracles;
  std::vector<std::uint64_t> budgets;
  for (double v : spec.grid) {
    oracles.push_back(oracle_at(spec, v));
    budgets.push_back(budget_at(spec, oracles.back().num_components));
  }
  const bool need_counts = std::any_of(spec.algorithms.begin(), spec.algorithms.end(),
                                       [](Algorithm a) { return a != Algorithm::kJointClass; });
  const bool need_joint = std::any_of(spec.algorithms.begin(), spec.algorithms.end(),
                                      [](Algorithm a) { return a == Algorithm::kJointClass; });
  const std::uint64_t seed = spec.oracle.seed;

  std::vector<double> rates(grid_size * reps * num_algs);
  parallel_for(grid_size * reps, spec.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t task = begin; task < end; ++task) {
      const std::size_t g = task / reps;
      const std::size_t r = task % reps;
      const OracleSpec& oracle = oracles[g];
      auto stream = [&](SamplePhase phase) {
        return RandomStream::keyed(seed, {g, r, static_cast<std::uint64_t>(phase)});
      };

      CountsMatrix counts0;
      CountsMatrix counts;
      if (need_counts) {
        RandomStream rng0 = stream(SamplePhase::kCounts0);
        RandomStream rng1 = stream(SamplePhase::kCounts);
        counts0 = oracle_sample(oracle, spec.cert.n0, rng0);
        counts = oracle_sample(oracle, spec.cert.n, rng1);
      }
      std::vector<Labeling> joint0;
      std::vector<Labeling> joint;
      if (need_joint) {
        RandomStream rng0 = stream(SamplePhase::kJoint0);
        RandomStream rng1 = stream(SamplePhase::kJoint);
        joint0 = oracle_labelings(oracle, spec.cert.n0, rng0);
        joint = oracle_labelings(oracle, spec.cert.n, rng1);
      }

      double* out = &rates[task * num_algs];
      for (std::size_t a = 0; a < num_algs; ++a) {
        const Algorithm alg = spec.algorithms[a];
        if (is_seg_certify(alg)) {
          out[a] = seg_certify(counts0, counts, config_for(spec, alg, budgets[g]))
                       .certified_fraction;
        } else if (alg == Algorithm::kIndivClass) {
          out[a] = indiv_class_certify(counts0, counts, spec.cert.sigma, spec.cert.alpha)
                       .certified_fraction;
        } else {
          out[a] = joint_class_certify(joint0, joint, spec.cert.sigma, spec.cert.alpha)
                           .certified
                       ? 1.0
                       : 0.0;
        }
      }
    }
  });

  SweepResult result;
  for (std::size_t a = 0; a < num_algs; ++a) {
    for (std::size_t g = 0; g < grid_size; ++g) {
      SweepRow row;
      row.axis_value = spec.grid[g];
      row.algorithm = spec.algorithms[a];
      row.budget = spec.algorithms[a] == Algorithm::kSegCertifyKfwer ? budgets[g] : 0;
      row.alpha = spec.cert.alpha;
      row.rates.resize(reps);
      double sum = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        row.rates[r] = rates[((g * reps) + r) * num_algs + a];
        sum += row.rates[r];
      }
      row.mean_rate = sum / static_cast<double>(reps);
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::uint64_t ErrorBudget::resolve(std::size_t num_components) const {
  if (!(value >= 0.0)) throw InvalidArgument("error budget must be nonnegative");
  if (relative) {
    return static_cast<std::uint64_t>(std::floor(value * static_cast<double>(num_components)));
  }
  if (value != std::floor(value)) throw InvalidArgument("absolute error budget must be an integer");
  return static_cast<std::uint64_t>(value);
}

SweepResult run_budget_sweep(const SweepSpec& spec, const std::vector<ErrorBudget>& budgets) {
  if (budgets.empty()) throw InvalidArgument("at least one error budget is required");
  SweepResult result;
  for (const ErrorBudget& b : budgets) {
    SweepSpec s = spec;
    s.algorithms = {Algorithm::kSegCertifyKfwer};
    s.cert.correction = Correction::kKfwer;
    if (b.relative) {
      s.budget_fraction = b.value;
      s.cert.budget = 0;
    } else {
      s.budget_fraction.reset();
      s.cert.budget = b.resolve(0);
    }
    SweepResult part = run_sweep(s);
    for (SweepRow& row : part.rows) result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace segcert
