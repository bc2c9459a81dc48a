#include "segcert/metrics.h"

#include <string>

#include "segcert/error.h"

namespace segcert {
namespace {

void check_pair(const LabelMap& pred, const LabelMap& truth) {
  if (pred.labels.size() != truth.labels.size()) {
    throw DimensionMismatch("prediction has " + std::to_string(pred.labels.size()) +
                            " positions, truth has " + std::to_string(truth.labels.size()));
  }
  if (pred.num_classes != truth.num_classes) {
    throw DimensionMismatch("prediction and truth disagree on the number of classes");
  }
  const auto in_range = [&](ClassId c) {
    return c >= 0 && static_cast<std::size_t>(c) < truth.num_classes;
  };
  for (std::size_t i = 0; i < pred.labels.size(); ++i) {
    const ClassId p = pred.labels[i];
    const ClassId t = truth.labels[i];
    if (!(in_range(p) || p == kAbstain)) {
      throw InvalidArgument("prediction label out of range at position " + std::to_string(i));
    }
    if (!(in_range(t) || t == kIgnore)) {
      throw InvalidArgument("truth label out of range at position " + std::to_string(i));
    }
  }
}

struct Tally {
  std::size_t valid = 0;
  std::size_t correct = 0;
  std::size_t abstained = 0;
};

Tally tally(const LabelMap& pred, const LabelMap& truth) {
  check_pair(pred, truth);
  Tally t;
  for (std::size_t i = 0; i < truth.labels.size(); ++i) {
    if (truth.labels[i] == kIgnore) continue;
    ++t.valid;
    t.correct += pred.labels[i] == truth.labels[i];
    t.abstained += pred.labels[i] == kAbstain;
  }
  if (t.valid == 0) throw UndefinedMetric("every ground-truth position is ignored");
  return t;
}

}  // namespace

double certified_accuracy(const LabelMap& pred, const LabelMap& truth) {
  const Tally t = tally(pred, truth);
  return static_cast<double>(t.correct) / static_cast<double>(t.valid);
}

double abstain_rate(const LabelMap& pred, const LabelMap& truth) {
  const Tally t = tally(pred, truth);
  return static_cast<double>(t.abstained) / static_cast<double>(t.valid);
}

double mean_iou(std::span<const LabelMap> preds, std::span<const LabelMap> truths,
                MiouAveraging averaging) {
  if (preds.size() != truths.size()) {
    throw DimensionMismatch("different numbers of predictions and truths");
  }
  if (preds.empty()) throw UndefinedMetric("mean IoU of an empty collection");

  double pooled_sum = 0.0;
  std::size_t pooled_pairs = 0;
  double input_sum = 0.0;
  std::size_t inputs = 0;
  for (std::size_t n = 0; n < preds.size(); ++n) {
    const LabelMap& pred = preds[n];
    const LabelMap& truth = truths[n];
    check_pair(pred, truth);
    const std::size_t classes = truth.num_classes;
    std::vector<std::size_t> inter(classes, 0);
    std::vector<std::size_t> pred_size(classes, 0);
    std::vector<std::size_t> truth_size(classes, 0);
    for (std::size_t i = 0; i < truth.labels.size(); ++i) {
      const ClassId t = truth.labels[i];
      const ClassId p = pred.labels[i];
      if (t == kIgnore) continue;
      ++truth_size[static_cast<std::size_t>(t)];
      if (p == kAbstain) continue;
      ++pred_size[static_cast<std::size_t>(p)];
      inter[static_cast<std::size_t>(p)] += p == t;
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      const std::size_t uni = pred_size[c] + truth_size[c] - inter[c];
      if (uni == 0) continue;
      sum += static_cast<double>(inter[c]) / static_cast<double>(uni);
      ++pairs;
    }
    pooled_sum += sum;
    pooled_pairs += pairs;
    if (pairs > 0) {
      input_sum += sum / static_cast<double>(pairs);
      ++inputs;
    }
  }
  if (pooled_pairs == 0) throw UndefinedMetric("no class occurs in any prediction or truth");
  if (averaging == MiouAveraging::kPerInputFirst) {
    return input_sum / static_cast<double>(inputs);
  }
  return pooled_sum / static_cast<double>(pooled_pairs);
}

}  // namespace segcert
