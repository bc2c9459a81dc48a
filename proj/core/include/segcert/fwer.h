#ifndef SEGCERT_FWER_H_
#define SEGCERT_FWER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace segcert {

enum class Correction { kBonferroni, kHolm, kKfwer };

std::string_view to_string(Correction c);
std::optional<Correction> parse_correction(std::string_view name);

// Outcome of a family-wise error rate correction. flags[i] is true when the
// null hypothesis of test i is rejected.
struct RejectionVector {
  std::vector<std::uint8_t> flags;
  Correction method = Correction::kHolm;
  double alpha = 0.0;
  std::size_t k = 1;

  std::size_t num_rejected() const;
};

// Reject test i iff pvs[i] <= alpha / N.
RejectionVector bonferroni(std::span<const double> pvs, double alpha);

// Holm's step-down procedure: the r-th smallest p-value is compared with
// alpha / (N - r + 1); the scan stops at the first failure.
RejectionVector holm(std::span<const double> pvs, double alpha);

// Lehmann-Romano step-down procedure controlling the k-FWER, the
// probability of k or more false rejections. Critical values are
// k*alpha/N for ranks j <= k and k*alpha/(N + k - j) above. k = 1 is Holm.
RejectionVector kfwer_stepdown(std::span<const double> pvs, double alpha, std::size_t k);

// Dispatches on `method`; `k` is only consulted for kKfwer.
RejectionVector apply_correction(Correction method, std::span<const double> pvs,
                                 double alpha, std::size_t k = 1);

}  // namespace segcert

#endif  // SEGCERT_FWER_H_
