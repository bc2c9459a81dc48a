#ifndef SEGCERT_ERROR_H_
#define SEGCERT_ERROR_H_

#include <stdexcept>
#include <string>

namespace segcert {

// Bad argument or configuration value passed to a library function.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shapes of two inputs that are required to agree do not.
class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A metric whose denominator is empty (e.g. every truth label ignored).
class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input file. `line` is 1-based, 0 when unknown.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Data violates a structural invariant (e.g. a counts row not summing to n).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace segcert

#endif  // SEGCERT_ERROR_H_
