#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <fmt/format.h>

namespace tvwalk {

// Comma-separated, LF line endings, '.' decimal point. Doubles use the
// shortest representation that round-trips.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : file_(path, std::ios::binary), out_(&file_) {
    if (!file_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  explicit CsvWriter(std::ostream& out) : out_(&out) {}

  void comment(std::string_view text) { *out_ << "# " << text << '\n'; }

  void header(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (auto c : columns) {
      if (!first) *out_ << ',';
      *out_ << c;
      first = false;
    }
    *out_ << '\n';
  }

  template <typename... Ts>
  void row(const Ts&... values) {
    std::string line;
    bool first = true;
    ((line += (first ? "" : ","), line += fmt::format("{}", values), first = false), ...);
    *out_ << line << '\n';
  }

  void flush() {
    out_->flush();
    if (!*out_) throw std::runtime_error("CSV write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

}  // namespace tvwalk
