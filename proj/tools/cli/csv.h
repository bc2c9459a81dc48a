#ifndef SEGCERT_TOOLS_CSV_H_
#define SEGCERT_TOOLS_CSV_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace segcert::cli {

// Shortest decimal string that parses back to exactly `v`; integral values
// keep a trailing ".0" so columns read as floating point.
std::string format_number(double v);

// Comma-separated output with LF line endings. Fields are written verbatim;
// callers only pass identifiers and numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace segcert::cli

#endif  // SEGCERT_TOOLS_CSV_H_
