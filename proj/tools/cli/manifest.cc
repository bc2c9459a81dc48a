#include "manifest.h"

#include <fstream>

#include "segcert/error.h"

namespace segcert::cli {

nlohmann::json to_json(const CertConfig& config) {
  return {
      {"sigma", config.sigma},
      {"tau", config.tau},
      {"alpha", config.alpha},
      {"n0", config.n0},
      {"n", config.n},
      {"correction", std::string(to_string(config.correction))},
      {"budget", config.budget},
  };
}

nlohmann::json to_json(const SweepSpec& spec) {
  nlohmann::json algorithms = nlohmann::json::array();
  for (Algorithm a : spec.algorithms) algorithms.push_back(std::string(to_string(a)));
  nlohmann::json out = {
      {"axis", spec.axis == SweepAxis::kGamma ? "gamma" : "N"},
      {"grid", spec.grid},
      {"reps", spec.reps},
      {"oracle",
       {
           {"num_components", spec.oracle.num_components},
           {"num_noisy", spec.oracle.num_noisy},
           {"gamma", spec.oracle.gamma},
           {"noise_multiplier", spec.oracle.noise_multiplier},
           {"num_classes", spec.oracle.num_classes},
           {"seed", spec.oracle.seed},
       }},
      {"cert", to_json(spec.cert)},
      {"algorithms", algorithms},
  };
  if (spec.budget_fraction) out["budget_fraction"] = *spec.budget_fraction;
  return out;
}

nlohmann::json to_json(const RunManifest& manifest) {
  return {
      {"command", manifest.command},
      {"arguments", manifest.arguments},
      {"tool_version", manifest.tool_version},
      {"duration_seconds", manifest.duration_seconds},
      {"parameters", manifest.parameters},
      {"outputs", manifest.outputs},
  };
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << to_json(manifest).dump(2) << '\n';
}

}  // namespace segcert::cli
