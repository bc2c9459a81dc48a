#ifndef SEGCERT_TOOLS_COUNTS_FILE_H_
#define SEGCERT_TOOLS_COUNTS_FILE_H_

#include <filesystem>
#include <istream>
#include <ostream>

#include "segcert/smoothing.h"

namespace segcert::cli {

// Text transport for selection/estimation counts:
//
//   segcert-counts 1
//   N=<int> C=<int> n0=<int> n=<int>
//   <C ints> | <C ints>        (one line per component)
//
// The left half of each record holds the n0 selection counts, the right half
// the n estimation counts.
struct CountsPair {
  CountsMatrix counts0;
  CountsMatrix counts;
};

// Strict streaming parse. Throws FormatError (with line number) on syntax
// errors and InvariantViolation (with component index) when a row does not
// sum to its header total.
CountsPair parse_counts(std::istream& in);
CountsPair parse_counts_file(const std::filesystem::path& path);

void write_counts(std::ostream& out, const CountsMatrix& counts0, const CountsMatrix& counts);
void write_counts_file(const std::filesystem::path& path, const CountsMatrix& counts0,
                       const CountsMatrix& counts);

}  // namespace segcert::cli

#endif  // SEGCERT_TOOLS_COUNTS_FILE_H_
