#ifndef SEGCERT_METRICS_H_
#define SEGCERT_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "segcert/smoothing.h"

namespace segcert {

// Ground-truth positions excluded from every metric.
inline constexpr ClassId kIgnore = -2;

// One segmentation output or ground truth: class ids in [0, num_classes),
// kAbstain (predictions only) or kIgnore (ground truth only).
struct LabelMap {
  std::vector<ClassId> labels;
  std::size_t num_classes = 0;
};

// Fraction of non-ignored positions where the prediction equals the truth.
// Abstentions count as errors.
double certified_accuracy(const LabelMap& pred, const LabelMap& truth);

// Fraction of non-ignored positions where the prediction abstains.
double abstain_rate(const LabelMap& pred, const LabelMap& truth);

enum class MiouAveraging {
  kPooled,         // mean over all (input, class) pairs with a nonempty union
  kPerInputFirst,  // mean per input, then mean over inputs
};

// Mean intersection over union. Abstained positions belong to no class;
// ignored positions are dropped from both prediction and truth.
double mean_iou(std::span<const LabelMap> preds, std::span<const LabelMap> truths,
                MiouAveraging averaging = MiouAveraging::kPooled);

}  // namespace segcert

#endif  // SEGCERT_METRICS_H_
