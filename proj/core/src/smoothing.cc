#include "segcert/smoothing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "segcert/error.h"
#include "segcert/parallel.h"
#include "segcert/stats.h"

namespace segcert {
namespace {

std::uint64_t row_sum(std::span<const CountsMatrix::value_type> row) {
  return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("sigma must be positive and finite");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
}

void check_pair(const CountsMatrix& counts0, const CountsMatrix& counts) {
  if (counts0.num_components() != counts.num_components() ||
      counts0.num_classes() != counts.num_classes()) {
    throw DimensionMismatch("selection and estimation counts differ in shape");
  }
  if (counts.num_components() == 0) throw InvalidArgument("counts have no components");
  if (counts.num_classes() < 2) throw InvalidArgument("counts need at least two classes");
}

// Lazily evaluated f(x) for x in [0, n]: a dense table when n is small
// relative to the number of lookups, otherwise a hash map.
template <typename Fn>
class HitCache {
 public:
  HitCache(std::uint64_t n, std::size_t expected_lookups, Fn fn) : fn_(std::move(fn)) {
    if (n + 1 <= 2 * static_cast<std::uint64_t>(expected_lookups) + 1024) {
      dense_.assign(n + 1, std::numeric_limits<double>::quiet_NaN());
    }
  }

  double operator()(std::uint64_t x) {
    if (!dense_.empty()) {
      double& slot = dense_[x];
      if (std::isnan(slot)) slot = fn_(x);
      return slot;
    }
    auto [it, inserted] = sparse_.try_emplace(x, 0.0);
    if (inserted) it->second = fn_(x);
    return it->second;
  }

 private:
  Fn fn_;
  std::vector<double> dense_;
  std::unordered_map<std::uint64_t, double> sparse_;
};

struct Selection {
  std::vector<ClassId> guess;
  std::vector<std::uint64_t> hits;
};

// Guessed class from the selection counts and its frequency among the
// estimation counts. Only `counts0` decides the class.
Selection select_components(const CountsMatrix& counts0, const CountsMatrix& counts,
                            std::size_t threads) {
  const std::size_t n = counts.num_components();
  Selection sel{std::vector<ClassId>(n), std::vector<std::uint64_t>(n)};
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ClassId c = top_class(counts0.row(i));
      sel.guess[i] = c;
      sel.hits[i] = counts.at(i, static_cast<std::size_t>(c));
    }
  });
  return sel;
}

struct LabelingHash {
  std::size_t operator()(const Labeling& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (ClassId c : v) {
      h ^= static_cast<std::uint32_t>(c);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

CountsMatrix::CountsMatrix(std::size_t num_components, std::size_t num_classes,
                           std::uint64_t draws)
    : num_components_(num_components),
      num_classes_(num_classes),
      draws_(draws),
      data_(num_components * num_classes, 0) {}

CountsMatrix CountsMatrix::from_rows(const std::vector<std::vector<value_type>>& rows,
                                     std::uint64_t draws) {
  if (rows.empty()) throw InvalidArgument("counts need at least one component");
  CountsMatrix m(rows.size(), rows.front().size(), draws);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.num_classes_) {
      throw DimensionMismatch("row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " classes, expected " +
                              std::to_string(m.num_classes_));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.mutable_row(i).begin());
  }
  m.check_row_sums();
  return m;
}

void CountsMatrix::check_row_sums() const {
  for (std::size_t i = 0; i < num_components_; ++i) {
    const std::uint64_t s = row_sum(row(i));
    if (s != draws_) {
      throw InvariantViolation("component " + std::to_string(i) + ": counts sum to " +
                               std::to_string(s) + ", expected " + std::to_string(draws_));
    }
  }
}

ClassId top_class(std::span<const CountsMatrix::value_type> row) {
  // max_element returns the first maximum, i.e. the lowest class id.
  return static_cast<ClassId>(std::max_element(row.begin(), row.end()) - row.begin());
}

void CertConfig::validate() const {
  check_sigma(sigma);
  if (!(tau >= 0.5 && tau < 1.0)) throw InvalidArgument("tau must lie in [0.5, 1)");
  check_alpha(alpha);
  if (n0 < 1) throw InvalidArgument("n0 must be at least 1");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (budget > 0 && correction != Correction::kKfwer) {
    throw InvalidArgument("an error budget requires the kfwer correction");
  }
}

std::size_t CertificationResult::num_certified() const {
  return static_cast<std::size_t>(std::count_if(
      decisions.begin(), decisions.end(),
      [](const ComponentDecision& d) { return d.label != kAbstain; }));
}

std::vector<ClassId> CertificationResult::labels() const {
  std::vector<ClassId> out(decisions.size());
  std::transform(decisions.begin(), decisions.end(), out.begin(),
                 [](const ComponentDecision& d) { return d.label; });
  return out;
}

SingleResult predict(const CountsMatrix& counts, double alpha) {
  if (counts.num_components() != 1) {
    throw DimensionMismatch("predict expects exactly one component");
  }
  check_alpha(alpha);
  const auto row = counts.row(0);
  if (row.size() < 2) throw InvalidArgument("predict needs at least two classes");
  const ClassId top = top_class(row);
  ClassId second = top == 0 ? 1 : 0;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (static_cast<ClassId>(c) != top && row[c] > row[static_cast<std::size_t>(second)]) {
      second = static_cast<ClassId>(c);
    }
  }
  const std::uint64_t n_a = row[static_cast<std::size_t>(top)];
  const std::uint64_t n_b = row[static_cast<std::size_t>(second)];
  if (n_a + n_b == 0) return {};
  if (binom_p_value_two_sided(n_a, n_a + n_b, 0.5) <= alpha) return {top, 0.0};
  return {};
}

SingleResult certify_single(std::span<const CountsMatrix::value_type> counts0,
                            std::span<const CountsMatrix::value_type> counts,
                            double sigma, double alpha) {
  if (counts0.size() != counts.size()) {
    throw DimensionMismatch("selection and estimation rows differ in class count");
  }
  if (counts.size() < 2) throw InvalidArgument("certification needs at least two classes");
  check_sigma(sigma);
  check_alpha(alpha);
  const std::uint64_t n = row_sum(counts);
  if (n == 0) throw InvalidArgument("estimation counts are empty");

  const ClassId guess = top_class(counts0);
  const double lower =
      clopper_pearson_lower(counts[static_cast<std::size_t>(guess)], n, 1.0 - alpha);
  if (lower > 0.5) return {guess, sigma * norm_quantile(lower)};
  return {};
}

CertificationResult seg_certify(const CountsMatrix& counts0, const CountsMatrix& counts,
                                const CertConfig& config, std::size_t threads) {
  config.validate();
  check_pair(counts0, counts);
  if (counts0.draws() != config.n0 || counts.draws() != config.n) {
    throw DimensionMismatch("counts draw totals do not match n0/n of the configuration");
  }

  const std::size_t num = counts.num_components();
  const Selection sel = select_components(counts0, counts, threads);

  // p-values depend only on the hit count, so each distinct count is tested
  // once.
  HitCache pv_of(config.n, num, [&](std::uint64_t x) {
    return binom_p_value_ge(x, config.n, config.tau);
  });
  std::vector<double> pvs(num);
  for (std::size_t i = 0; i < num; ++i) pvs[i] = pv_of(sel.hits[i]);

  const std::size_t k =
      static_cast<std::size_t>(std::min<std::uint64_t>(config.budget + 1, num));
  const RejectionVector rejected = apply_correction(config.correction, pvs, config.alpha, k);

  CertificationResult result;
  result.config = config;
  result.decisions.resize(num);
  std::size_t certified = 0;
  for (std::size_t i = 0; i < num; ++i) {
    ComponentDecision& d = result.decisions[i];
    d.guessed_class = sel.guess[i];
    d.hit_count = sel.hits[i];
    d.p_value = pvs[i];
    d.label = rejected.flags[i] ? sel.guess[i] : kAbstain;
    certified += rejected.flags[i];
  }
  result.radius = radius(config.sigma, config.tau);
  result.certified_fraction = static_cast<double>(certified) / static_cast<double>(num);
  result.may_contain_errors = config.correction == Correction::kKfwer && config.budget > 0;
  return result;
}

CertificationResult indiv_class_certify(const CountsMatrix& counts0,
                                        const CountsMatrix& counts, double sigma,
                                        double alpha) {
  check_pair(counts0, counts);
  check_sigma(sigma);
  check_alpha(alpha);
  const std::size_t num = counts.num_components();
  const std::uint64_t n = counts.draws();
  if (n == 0) throw InvalidArgument("estimation counts are empty");
  const double level = alpha / static_cast<double>(num);

  const Selection sel = select_components(counts0, counts, 1);

  // The Clopper-Pearson bound is nondecreasing in the hit count, so every
  // component clears 1/2 exactly when the smallest hit count does, and the
  // minimum radius belongs to that component.
  const std::uint64_t min_hits = *std::min_element(sel.hits.begin(), sel.hits.end());
  const double lower = clopper_pearson_lower(min_hits, n, 1.0 - level);
  const bool all_certified = lower > 0.5;

  HitCache pv_of(n, num, [&](std::uint64_t x) { return binom_p_value_ge(x, n, 0.5); });

  CertificationResult result;
  result.config.sigma = sigma;
  result.config.tau = 0.5;
  result.config.alpha = alpha;
  result.config.n0 = counts0.draws();
  result.config.n = n;
  result.config.correction = Correction::kBonferroni;
  result.decisions.resize(num);
  for (std::size_t i = 0; i < num; ++i) {
    ComponentDecision& d = result.decisions[i];
    d.guessed_class = sel.guess[i];
    d.hit_count = sel.hits[i];
    d.p_value = pv_of(sel.hits[i]);
    d.label = all_certified ? sel.guess[i] : kAbstain;
  }
  result.radius = all_certified ? sigma * norm_quantile(lower) : 0.0;
  result.certified_fraction = all_certified ? 1.0 : 0.0;
  return result;
}

JointResult joint_class_certify(std::span<const Labeling> samples0,
                                std::span<const Labeling> samples, double sigma,
                                double alpha) {
  check_sigma(sigma);
  check_alpha(alpha);
  if (samples0.empty() || samples.empty()) {
    throw InvalidArgument("joint certification needs nonempty sample sets");
  }
  const std::size_t len = samples0.front().size();
  auto check_len = [len](const Labeling& v) {
    if (v.size() != len) throw DimensionMismatch("labeling samples differ in length");
  };
  std::for_each(samples0.begin(), samples0.end(), check_len);
  std::for_each(samples.begin(), samples.end(), check_len);

  std::unordered_map<Labeling, std::uint64_t, LabelingHash> freq;
  for (const Labeling& v : samples0) ++freq[v];
  const Labeling* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [labeling, count] : freq) {
    if (count > best_count || (count == best_count && labeling < *best)) {
      best = &labeling;
      best_count = count;
    }
  }

  const auto hits = static_cast<std::uint64_t>(
      std::count(samples.begin(), samples.end(), *best));
  const double lower = clopper_pearson_lower(hits, samples.size(), 1.0 - alpha);
  if (lower > 0.5) return {true, *best, sigma * norm_quantile(lower)};
  return {};
}

double radius(double sigma, double tau) {
  check_sigma(sigma);
  if (!(tau >= 0.5 && tau < 1.0)) throw InvalidArgument("tau must lie in [0.5, 1)");
  return sigma * norm_quantile(tau);
}

double cohen_radius(double sigma, double p_a, double p_b) {
  check_sigma(sigma);
  if (!(p_b > 0.0 && p_a < 1.0)) {
    throw InvalidArgument("class probabilities must lie in (0, 1)");
  }
  if (p_b > p_a) throw InvalidArgument("runner-up probability exceeds top probability");
  return 0.5 * sigma * (norm_quantile(p_a) - norm_quantile(p_b));
}

double sigma_for_target_radius(double target_radius, double tau) {
  if (!(target_radius > 0.0) || !std::isfinite(target_radius)) {
    throw InvalidArgument("target radius must be positive and finite");
  }
  if (!(tau > 0.5 && tau < 1.0)) throw InvalidArgument("tau must lie in (0.5, 1)");
  return target_radius / norm_quantile(tau);
}

}  // namespace segcert
