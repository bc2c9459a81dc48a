#include "segcert/fwer.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "segcert/error.h"

namespace segcert {
namespace {

void check_inputs(std::span<const double> pvs, double alpha) {
  if (pvs.empty()) throw InvalidArgument("p-value vector must be nonempty");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
}

// Indices sorted by (p-value, original index).
std::vector<std::uint32_t> ascending_order(std::span<const double> pvs) {
  std::vector<std::uint32_t> order(pvs.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return pvs[a] < pvs[b] || (pvs[a] == pvs[b] && a < b);
  });
  return order;
}

// Generic step-down scan: reject sorted ranks 1..j* where every rank r <= j*
// satisfies p_(r) <= critical(r).
template <typename Critical>
std::vector<std::uint8_t> step_down(std::span<const double> pvs, Critical critical) {
  std::vector<std::uint8_t> flags(pvs.size(), 0);
  const auto order = ascending_order(pvs);
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (!(pvs[order[r]] <= critical(r + 1))) break;
    flags[order[r]] = 1;
  }
  return flags;
}

}  // namespace

std::string_view to_string(Correction c) {
  switch (c) {
    case Correction::kBonferroni: return "bonferroni";
    case Correction::kHolm: return "holm";
    case Correction::kKfwer: return "kfwer";
  }
  return "unknown";
}

std::optional<Correction> parse_correction(std::string_view name) {
  if (name == "bonferroni") return Correction::kBonferroni;
  if (name == "holm") return Correction::kHolm;
  if (name == "kfwer") return Correction::kKfwer;
  return std::nullopt;
}

std::size_t RejectionVector::num_rejected() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

RejectionVector bonferroni(std::span<const double> pvs, double alpha) {
  check_inputs(pvs, alpha);
  const double level = alpha / static_cast<double>(pvs.size());
  RejectionVector out{std::vector<std::uint8_t>(pvs.size()), Correction::kBonferroni,
                      alpha, 1};
  for (std::size_t i = 0; i < pvs.size(); ++i) out.flags[i] = pvs[i] <= level;
  return out;
}

RejectionVector holm(std::span<const double> pvs, double alpha) {
  check_inputs(pvs, alpha);
  const double n = static_cast<double>(pvs.size());
  auto flags = step_down(pvs, [&](std::size_t rank) {
    return alpha / (n - static_cast<double>(rank) + 1.0);
  });
  return {std::move(flags), Correction::kHolm, alpha, 1};
}

RejectionVector kfwer_stepdown(std::span<const double> pvs, double alpha, std::size_t k) {
  check_inputs(pvs, alpha);
  if (k < 1 || k > pvs.size()) {
    throw InvalidArgument("k-FWER order must satisfy 1 <= k <= N (k=" +
                          std::to_string(k) + ", N=" + std::to_string(pvs.size()) + ")");
  }
  const double n = static_cast<double>(pvs.size());
  const double kd = static_cast<double>(k);
  auto flags = step_down(pvs, [&](std::size_t rank) {
    if (rank <= k) return kd * alpha / n;
    return kd * alpha / (n + kd - static_cast<double>(rank));
  });
  return {std::move(flags), Correction::kKfwer, alpha, k};
}

RejectionVector apply_correction(Correction method, std::span<const double> pvs,
                                 double alpha, std::size_t k) {
  switch (method) {
    case Correction::kBonferroni: return bonferroni(pvs, alpha);
    case Correction::kHolm: return holm(pvs, alpha);
    case Correction::kKfwer: return kfwer_stepdown(pvs, alpha, k);
  }
  throw InvalidArgument("unknown correction method");
}

}  // namespace segcert
