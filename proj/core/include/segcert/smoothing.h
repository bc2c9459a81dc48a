#ifndef SEGCERT_SMOOTHING_H_
#define SEGCERT_SMOOTHING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "segcert/fwer.h"

namespace segcert {

using ClassId = std::int32_t;

// Marks a component the certifier declined to classify.
inline constexpr ClassId kAbstain = -1;

// Per-component class frequencies from `draws` Monte Carlo samples, stored
// row-major as an N x C table.
class CountsMatrix {
 public:
  using value_type = std::uint32_t;

  CountsMatrix() = default;
  // Zero-filled; fill with mutable_row() and call check_row_sums().
  CountsMatrix(std::size_t num_components, std::size_t num_classes, std::uint64_t draws);

  // Builds from explicit rows, all of which must sum to `draws`.
  static CountsMatrix from_rows(const std::vector<std::vector<value_type>>& rows,
                                std::uint64_t draws);

  std::size_t num_components() const { return num_components_; }
  std::size_t num_classes() const { return num_classes_; }
  std::uint64_t draws() const { return draws_; }

  std::span<const value_type> row(std::size_t i) const {
    return {data_.data() + i * num_classes_, num_classes_};
  }
  std::span<value_type> mutable_row(std::size_t i) {
    return {data_.data() + i * num_classes_, num_classes_};
  }
  value_type at(std::size_t i, std::size_t c) const { return data_[i * num_classes_ + c]; }

  // Throws InvariantViolation naming the first row whose sum differs from
  // draws().
  void check_row_sums() const;

  friend bool operator==(const CountsMatrix&, const CountsMatrix&) = default;

 private:
  std::size_t num_components_ = 0;
  std::size_t num_classes_ = 0;
  std::uint64_t draws_ = 0;
  std::vector<value_type> data_;
};

// Index of the largest entry; ties resolve to the lower class id.
ClassId top_class(std::span<const CountsMatrix::value_type> row);

struct CertConfig {
  double sigma = 0.25;
  double tau = 0.75;
  double alpha = 0.001;
  std::uint64_t n0 = 100;
  std::uint64_t n = 100;
  Correction correction = Correction::kHolm;
  // Number of tolerated false certifications; k-FWER runs with k = budget + 1.
  std::uint64_t budget = 0;

  // Throws InvalidArgument on an out-of-domain field.
  void validate() const;
};

struct ComponentDecision {
  ClassId label = kAbstain;
  double p_value = 1.0;
  ClassId guessed_class = 0;
  std::uint64_t hit_count = 0;
};

struct CertificationResult {
  std::vector<ComponentDecision> decisions;
  double radius = 0.0;
  CertConfig config;
  double certified_fraction = 0.0;
  // Set when budget > 0: up to `budget` certified components may be wrong
  // with probability 1 - alpha.
  bool may_contain_errors = false;

  std::size_t num_certified() const;
  std::vector<ClassId> labels() const;
};

struct SingleResult {
  ClassId label = kAbstain;
  double radius = 0.0;

  friend bool operator==(const SingleResult&, const SingleResult&) = default;
};

// Two-sided binomial test between the two most frequent classes; returns
// the top class if the test rejects at `alpha`, otherwise abstains.
SingleResult predict(const CountsMatrix& counts, double alpha);

// Classic single-output certification: guess the class from `counts0`,
// lower-bound its probability from `counts` (n = sum of `counts`) with
// Clopper-Pearson at level 1 - alpha and report radius
// sigma * Phi^-1(lower) if lower > 1/2.
SingleResult certify_single(std::span<const CountsMatrix::value_type> counts0,
                            std::span<const CountsMatrix::value_type> counts,
                            double sigma, double alpha);

// Component-wise certification with abstention threshold tau and FWER
// control across components. `threads` bounds the worker count for the
// per-component phase; results do not depend on it.
CertificationResult seg_certify(const CountsMatrix& counts0, const CountsMatrix& counts,
                                const CertConfig& config, std::size_t threads = 1);

// Per-component Clopper-Pearson certification at alpha / N. All components
// abstain as soon as one does; the radius is the smallest per-component one.
CertificationResult indiv_class_certify(const CountsMatrix& counts0,
                                        const CountsMatrix& counts, double sigma,
                                        double alpha);

using Labeling = std::vector<ClassId>;

struct JointResult {
  bool certified = false;
  Labeling labeling;  // empty when abstained
  double radius = 0.0;
};

// Treats each complete labeling as one class of the product label space.
// The most frequent labeling among `samples0` is certified with its
// frequency among `samples`.
JointResult joint_class_certify(std::span<const Labeling> samples0,
                                std::span<const Labeling> samples, double sigma,
                                double alpha);

// sigma * Phi^-1(tau): the radius shared by every certified component.
double radius(double sigma, double tau);

// sigma / 2 * (Phi^-1(p_a) - Phi^-1(p_b)).
double cohen_radius(double sigma, double p_a, double p_b);

// Noise level whose thresholded radius equals `target_radius`.
double sigma_for_target_radius(double target_radius, double tau);

}  // namespace segcert

#endif  // SEGCERT_SMOOTHING_H_
