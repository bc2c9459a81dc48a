#include "label_files.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "segcert/error.h"
#include "segcert/metrics.h"

namespace segcert::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

ClassId parse_class_id(std::string_view token, std::size_t line) {
  ClassId v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || v < 0) {
    throw FormatError("invalid label '" + std::string(token) + "'", line);
  }
  return v;
}

}  // namespace

std::vector<ClassId> parse_labels(std::istream& in, std::optional<ClassId> ignore_id) {
  std::vector<ClassId> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view token = trim(line);
    if (token.empty()) continue;
    if (token == "~") {
      out.push_back(kAbstain);
    } else if (token == "*") {
      out.push_back(kIgnore);
    } else {
      const ClassId c = parse_class_id(token, line_no);
      out.push_back(ignore_id && c == *ignore_id ? kIgnore : c);
    }
  }
  return out;
}

std::vector<ClassId> parse_label_file(const std::filesystem::path& path,
                                      std::optional<ClassId> ignore_id) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file " + path.string());
  return parse_labels(in, ignore_id);
}

void write_labels(std::ostream& out, const std::vector<ClassId>& labels) {
  for (ClassId c : labels) {
    if (c == kAbstain) {
      out << "~\n";
    } else if (c == kIgnore) {
      out << "*\n";
    } else {
      out << c << '\n';
    }
  }
}

SamplesPair parse_samples(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };
  if (!next_line() || trim(line) != "segcert-samples 1") {
    throw FormatError("missing 'segcert-samples 1' header", 1);
  }
  if (!next_line()) throw FormatError("missing dimension line", 2);
  std::size_t num = 0;
  std::size_t n0 = 0;
  std::size_t n = 0;
  {
    std::istringstream header(line);
    std::string a, b, c, extra;
    header >> a >> b >> c;
    if (header >> extra) throw FormatError("trailing text after dimensions", line_no);
    auto value = [&](const std::string& tok, std::string_view key) -> std::size_t {
      if (tok.rfind(key, 0) != 0) {
        throw FormatError("expected '" + std::string(key) + "'", line_no);
      }
      const std::string_view digits = std::string_view(tok).substr(key.size());
      std::size_t v = 0;
      const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
        throw FormatError("malformed integer in '" + tok + "'", line_no);
      }
      return v;
    };
    num = value(a, "N=");
    n0 = value(b, "n0=");
    n = value(c, "n=");
  }
  if (num < 1 || n0 < 1 || n < 1) throw FormatError("N, n0 and n must be at least 1", line_no);

  auto read_set = [&](std::size_t count) {
    std::vector<Labeling> set;
    set.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
      if (!next_line()) throw FormatError("too few labeling samples", line_no + 1);
      Labeling v;
      v.reserve(num);
      std::istringstream row(line);
      std::string tok;
      while (row >> tok) v.push_back(parse_class_id(tok, line_no));
      if (v.size() != num) {
        throw FormatError("sample has " + std::to_string(v.size()) + " labels, expected " +
                              std::to_string(num),
                          line_no);
      }
      set.push_back(std::move(v));
    }
    return set;
  };
  SamplesPair out;
  out.samples0 = read_set(n0);
  out.samples = read_set(n);
  while (next_line()) {
    if (!trim(line).empty()) throw FormatError("unexpected text after last sample", line_no);
  }
  return out;
}

SamplesPair parse_samples_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open samples file " + path.string());
  return parse_samples(in);
}

void write_samples(std::ostream& out, const SamplesPair& samples) {
  const std::size_t num = samples.samples0.empty() ? 0 : samples.samples0.front().size();
  out << "segcert-samples 1\nN=" << num << " n0=" << samples.samples0.size()
      << " n=" << samples.samples.size() << '\n';
  for (const auto* set : {&samples.samples0, &samples.samples}) {
    for (const Labeling& v : *set) {
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
      out << '\n';
    }
  }
}

}  // namespace segcert::cli
