#ifndef SEGCERT_TOOLS_LABEL_FILES_H_
#define SEGCERT_TOOLS_LABEL_FILES_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "segcert/smoothing.h"

namespace segcert::cli {

// Label files hold one token per line: a class id, '~' for an abstention or
// '*' for an ignored ground-truth position. When `ignore_id` is set, that
// numeric id is read as '*' as well.
std::vector<ClassId> parse_labels(std::istream& in, std::optional<ClassId> ignore_id = {});
std::vector<ClassId> parse_label_file(const std::filesystem::path& path,
                                      std::optional<ClassId> ignore_id = {});
void write_labels(std::ostream& out, const std::vector<ClassId>& labels);

// Joint labeling samples for product-space certification:
//
//   segcert-samples 1
//   N=<int> n0=<int> n=<int>
//   <N class ids>              (n0 selection lines, then n estimation lines)
struct SamplesPair {
  std::vector<Labeling> samples0;
  std::vector<Labeling> samples;
};

SamplesPair parse_samples(std::istream& in);
SamplesPair parse_samples_file(const std::filesystem::path& path);
void write_samples(std::ostream& out, const SamplesPair& samples);

}  // namespace segcert::cli

#endif  // SEGCERT_TOOLS_LABEL_FILES_H_
