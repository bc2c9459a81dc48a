#include "presets.h"

#include <cmath>

#include "segcert/error.h"

namespace segcert::cli {

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw InvalidArgument("invalid grid range");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

std::vector<double> decade_grid(int lo_exponent, int hi_exponent) {
  if (hi_exponent < lo_exponent || lo_exponent < 0) throw InvalidArgument("invalid decade range");
  std::vector<double> grid;
  double v = std::pow(10.0, lo_exponent);
  for (int e = lo_exponent; e <= hi_exponent; ++e, v *= 10.0) grid.push_back(v);
  return grid;
}

SweepSpec toy_preset(std::string_view name, const PresetOptions& options) {
  SweepSpec spec;
  spec.oracle.num_classes = 2;
  spec.oracle.noise_multiplier = 5.0;
  spec.oracle.seed = options.seed;
  spec.cert.sigma = 0.25;
  spec.cert.tau = 0.75;
  if (name == "fig3a" || name == "fig3b") {
    const std::uint64_t n = name == "fig3a" ? 100 : 1000;
    spec.axis = SweepAxis::kGamma;
    spec.grid = linear_grid(0.0, 0.1, options.desk ? 0.005 : 0.001);
    spec.oracle.num_components = 100;
    spec.oracle.num_noisy = 1;
    spec.cert.n0 = n;
    spec.cert.n = n;
    spec.cert.alpha = 0.001;
    spec.algorithms = {Algorithm::kJointClass, Algorithm::kIndivClass,
                       Algorithm::kSegCertifyHolm, Algorithm::kSegCertifyBonferroni};
  } else if (name == "fig3c") {
    spec.axis = SweepAxis::kComponents;
    spec.grid = decade_grid(1, options.include_million ? 6 : 5);
    spec.oracle.gamma = 0.05;
    spec.oracle.num_noisy = 0;
    spec.cert.n0 = 1000;
    spec.cert.n = 1000;
    spec.cert.alpha = 0.1;
    spec.algorithms = {Algorithm::kSegCertifyHolm, Algorithm::kSegCertifyBonferroni};
  } else {
    throw InvalidArgument("unknown preset '" + std::string(name) + "'");
  }
  spec.reps = options.reps.value_or(options.desk ? 100 : 600);
  return spec;
}

SweepSpec budget_sweep_spec(const std::vector<double>& n_grid, double alpha, std::size_t reps,
                            std::uint64_t seed) {
  SweepSpec spec;
  spec.axis = SweepAxis::kComponents;
  spec.grid = n_grid;
  spec.reps = reps;
  spec.oracle.gamma = 0.05;
  spec.oracle.num_noisy = 1;
  spec.oracle.noise_multiplier = 5.0;
  spec.oracle.num_classes = 2;
  spec.oracle.seed = seed;
  spec.cert.sigma = 0.25;
  spec.cert.tau = 0.75;
  spec.cert.alpha = alpha;
  spec.cert.n0 = 100;
  spec.cert.n = 100;
  spec.cert.correction = Correction::kKfwer;
  spec.algorithms = {Algorithm::kSegCertifyKfwer};
  return spec;
}

}  // namespace segcert::cli
