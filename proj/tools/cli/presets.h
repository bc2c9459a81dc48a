#ifndef SEGCERT_TOOLS_PRESETS_H_
#define SEGCERT_TOOLS_PRESETS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "segcert/synthetic.h"

namespace segcert::cli {

// start, start + step, ... up to and including `stop`, computed as start + i * step.
std::vector<double> linear_grid(double start, double stop, double step);

// 10^lo, 10^(lo+1), ..., 10^hi.
std::vector<double> decade_grid(int lo_exponent, int hi_exponent);

struct PresetOptions {
  std::optional<std::size_t> reps;
  std::uint64_t seed = 0;
  // Coarsen the gamma grid to 0.005 and default to 100 repetitions.
  bool desk = false;
  // Extend the component-count grid of fig3c to 10^6.
  bool include_million = false;
};

// Toy experiment presets: "fig3a", "fig3b" (gamma sweeps at n = 100 and
// n = 1000) and "fig3c" (component-count sweep). Throws InvalidArgument
// for an unknown name.
SweepSpec toy_preset(std::string_view name, const PresetOptions& options);

// Error-budget experiment: gamma = 0.05, one noisy component, n0 = n = 100,
// tau = 0.75, swept over the component-count grid.
SweepSpec budget_sweep_spec(const std::vector<double>& n_grid, double alpha, std::size_t reps,
                            std::uint64_t seed);

}  // namespace segcert::cli

#endif  // SEGCERT_TOOLS_PRESETS_H_
