#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qglab {

// Fixed 17-significant-digit formatting used by every CSV artifact.
std::string format_real(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& row(std::vector<std::string> cells);
  const std::string& text() const { return text_; }
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t columns_;
  std::string text_;
};

// Minimal CSV reader: comma separated, no quoting. Blank lines and lines
// starting with '#' are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);
std::vector<std::string> split(std::string_view line, char sep);
std::string trim(std::string_view s);
double parse_real(std::string_view s);
long long parse_integer(std::string_view s);

}  // namespace qglab
