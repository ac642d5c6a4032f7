#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fdcat {

/// 12 significant digits, '.' decimal point, independent of locale.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

/// `# key=value` comment lines, one header row, data rows, LF endings.
class CsvTable {
 public:
  void add_meta(std::string key, std::string value);
  void add_meta(std::string key, double value);
  void set_header(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string render() const;

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace fdcat
