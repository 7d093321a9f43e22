#include "sphmls/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sphmls {

namespace {

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& field) {
  const std::string s = trim(field);
  if (s.empty()) throw ParseError("empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || (errno == ERANGE && std::isinf(v))) throw ParseError("not a number: '" + s + "'");
  return v;
}

std::vector<SpherePoint> parse_points(std::istream& in, const std::string& source) {
  std::vector<SpherePoint> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    std::vector<double> coords;
    std::string tok;
    while (fields >> tok) {
      try {
        coords.push_back(parse_number(tok));
      } catch (const ParseError& e) {
        throw ParseError(source + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (!out.empty() && coords.size() != out.front().dim()) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": inconsistent point dimension");
    }
    try {
      out.emplace_back(Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size())));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<SpherePoint> read_points(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_points(in, path.string());
}

void write_points(const std::filesystem::path& path, const std::vector<SpherePoint>& points) {
  auto out = open_out(path);
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.dim(); ++i) out << (i ? " " : "") << format_number(p[i]);
    out << '\n';
  }
  if (!out) throw IoError(path, "write failed");
}

std::vector<double> read_values(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    try {
      out.push_back(parse_number(line));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << table.header[j];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      if (row[j]) out << format_number(*row[j]);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  auto out = open_out(path);
  write_csv(out, table);
  if (!out) throw IoError(path, "write failed");
}

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        fields.push_back(trim(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(trim(cur));
    return fields;
  };
  if (!std::getline(in, line)) throw ParseError("missing CSV header");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != table.header.size()) throw ParseError("CSV row has the wrong number of fields");
    std::vector<std::optional<double>> row;
    for (const auto& f : fields) {
      row.push_back(f.empty() ? std::nullopt : std::optional<double>(parse_number(f)));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_csv(in);
}

}  // namespace sphmls
