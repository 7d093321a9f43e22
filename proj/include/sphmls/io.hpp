#pragma once

#include "sphmls/geometry.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphmls {

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node files: one point per line, whitespace-separated coordinates; blank
// lines and lines starting with '#' are skipped.
std::vector<SpherePoint> read_points(const std::filesystem::path& path);
std::vector<SpherePoint> parse_points(std::istream& in, const std::string& source = "<stream>");
void write_points(const std::filesystem::path& path, const std::vector<SpherePoint>& points);

// One real value per line, same comment rules.
std::vector<double> read_values(const std::filesystem::path& path);

// Shortest-safe formatting with 17 significant digits.
std::string format_number(double v);
double parse_number(const std::string& field);

// Comma separated table with a header row; empty fields are missing values.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace sphmls
