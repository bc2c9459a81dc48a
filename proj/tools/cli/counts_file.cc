#include "counts_file.h"

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>

#include "segcert/error.h"

namespace segcert::cli {
namespace {

constexpr std::string_view kMagic = "segcert-counts 1";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Cursor over one line of input.
class LineScanner {
 public:
  LineScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_spaces() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at_end() {
    skip_spaces();
    return pos_ == text_.size();
  }

  std::uint64_t unsigned_int() {
    skip_spaces();
    std::uint64_t v = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || begin == res.ptr) {
      throw FormatError("expected a nonnegative integer", line_);
    }
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    if (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '|') {
      throw FormatError("malformed integer", line_);
    }
    return v;
  }

  void expect(std::string_view token) {
    skip_spaces();
    if (text_.substr(pos_, token.size()) != token) {
      throw FormatError("expected '" + std::string(token) + "'", line_);
    }
    pos_ += token.size();
  }

  std::uint64_t keyed(std::string_view key) {
    expect(key);
    if (pos_ < text_.size() && is_space(text_[pos_])) {
      throw FormatError("no whitespace allowed after '" + std::string(key) + "'", line_);
    }
    return unsigned_int();
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

CountsPair parse_counts(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };

  if (!next_line() || trim_right(line) != kMagic) {
    throw FormatError("missing 'segcert-counts 1' header", line_no == 0 ? 1 : line_no);
  }
  if (!next_line()) throw FormatError("missing dimension line", line_no + 1);
  LineScanner header(line, line_no);
  const std::uint64_t num = header.keyed("N=");
  const std::uint64_t classes = header.keyed("C=");
  const std::uint64_t n0 = header.keyed("n0=");
  const std::uint64_t n = header.keyed("n=");
  if (!header.at_end()) throw FormatError("trailing text after dimensions", line_no);
  if (num < 1) throw FormatError("N must be at least 1", line_no);
  if (classes < 2) throw FormatError("C must be at least 2", line_no);
  if (n0 < 1 || n < 1) throw FormatError("n0 and n must be at least 1", line_no);
  if (n0 > CountsMatrix::value_type(-1) || n > CountsMatrix::value_type(-1)) {
    throw FormatError("draw counts exceed the supported range", line_no);
  }

  CountsPair out{CountsMatrix(num, classes, n0), CountsMatrix(num, classes, n)};
  for (std::size_t i = 0; i < num; ++i) {
    if (!next_line()) {
      throw FormatError("expected " + std::to_string(num) + " component records, found " +
                            std::to_string(i),
                        line_no + 1);
    }
    LineScanner scan(line, line_no);
    auto read_half = [&](std::span<CountsMatrix::value_type> row, std::uint64_t total,
                         const char* which) {
      std::uint64_t sum = 0;
      for (auto& cell : row) {
        const std::uint64_t v = scan.unsigned_int();
        if (v > total) {
          throw InvariantViolation("component " + std::to_string(i) + ": " + which +
                                   " count exceeds the draw total");
        }
        cell = static_cast<CountsMatrix::value_type>(v);
        sum += v;
      }
      if (sum != total) {
        throw InvariantViolation("component " + std::to_string(i) + ": " + which +
                                 " counts sum to " + std::to_string(sum) + ", expected " +
                                 std::to_string(total));
      }
    };
    read_half(out.counts0.mutable_row(i), n0, "n0");
    scan.expect("|");
    read_half(out.counts.mutable_row(i), n, "n");
    if (!scan.at_end()) throw FormatError("trailing text after counts", line_no);
  }
  while (next_line()) {
    if (!trim_right(line).empty()) throw FormatError("unexpected text after last record", line_no);
  }
  return out;
}

CountsPair parse_counts_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open counts file " + path.string());
  return parse_counts(in);
}

void write_counts(std::ostream& out, const CountsMatrix& counts0, const CountsMatrix& counts) {
  if (counts0.num_components() != counts.num_components() ||
      counts0.num_classes() != counts.num_classes()) {
    throw DimensionMismatch("selection and estimation counts differ in shape");
  }
  out << kMagic << '\n'
      << "N=" << counts.num_components() << " C=" << counts.num_classes()
      << " n0=" << counts0.draws() << " n=" << counts.draws() << '\n';
  std::string buf;
  char num[16];
  for (std::size_t i = 0; i < counts.num_components(); ++i) {
    buf.clear();
    auto put_row = [&](std::span<const CountsMatrix::value_type> row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) buf += ' ';
        const auto res = std::to_chars(num, num + sizeof(num), row[c]);
        buf.append(num, res.ptr);
      }
    };
    put_row(counts0.row(i));
    buf += " | ";
    put_row(counts.row(i));
    buf += '\n';
    out << buf;
  }
}

void write_counts_file(const std::filesystem::path& path, const CountsMatrix& counts0,
                       const CountsMatrix& counts) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write counts file " + path.string());
  write_counts(out, counts0, counts);
  if (!out) throw IoError("failed while writing " + path.string());
}

}  // namespace segcert::cli
