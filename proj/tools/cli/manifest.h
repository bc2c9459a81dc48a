#ifndef SEGCERT_TOOLS_MANIFEST_H_
#define SEGCERT_TOOLS_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "segcert/smoothing.h"
#include "segcert/synthetic.h"

namespace segcert::cli {

// Everything needed to re-run a command and reproduce its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string tool_version;
  double duration_seconds = 0.0;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<std::string> outputs;
};

nlohmann::json to_json(const CertConfig& config);
nlohmann::json to_json(const SweepSpec& spec);
nlohmann::json to_json(const RunManifest& manifest);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace segcert::cli

#endif  // SEGCERT_TOOLS_MANIFEST_H_
