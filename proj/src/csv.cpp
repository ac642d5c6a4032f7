#include "fdcat/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace fdcat {

std::string format_number(double value) {
  // snprintf is locale-sensitive only through LC_NUMERIC, which this program
  // never changes from "C".
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

void CsvTable::add_meta(std::string key, std::string value) {
  meta_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::add_meta(std::string key, double value) {
  meta_.emplace_back(std::move(key), format_number(value));
}

void CsvTable::set_header(std::vector<std::string> header) { header_ = std::move(header); }

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw std::logic_error("CSV row width does not match header");
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::ostringstream out;
  auto write_line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  for (const auto& [key, value] : meta_) out << "# " << key << '=' << value << '\n';
  write_line(header_);
  for (const auto& row : rows_) write_line(row);
  return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path temp = path;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + temp.string() + " for writing");
    file << content;
    file.flush();
    if (!file) {
      std::error_code ignored;
      std::filesystem::remove(temp, ignored);
      throw std::runtime_error("failed writing " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(temp, ignored);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace fdcat
