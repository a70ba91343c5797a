#include "lidarqa/io/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lidarqa/io/util.hpp"
#include "lidarqa/errors.hpp"

namespace lidarqa::io {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& cell, std::size_t row,
                    const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("csv row " + std::to_string(row) + ": non-numeric '" +
                     cell + "' in column " + column);
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

PointCloud read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("csv: empty file: " + path.string());
  }
  const auto header = split_line(line);
  auto find_col = [&](const std::string& name) -> long {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<long>(i);
    }
    return -1;
  };
  const long cx = find_col("x"), cy = find_col("y"), cz = find_col("z");
  const long cpass = find_col("pass_id");
  for (const auto& [idx, name] : std::initializer_list<
           std::pair<long, const char*>>{
           {cx, "x"}, {cy, "y"}, {cz, "z"}, {cpass, "pass_id"}}) {
    if (idx < 0) {
      throw SchemaError(std::string("csv: missing mandatory column '") + name +
                        "' in " + path.string());
    }
  }
  const long cint = find_col("intensity");
  const long ctime = find_col("gps_time");

  std::vector<Point> points;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw ParseError("csv row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    }
    Point p;
    p.x = parse_double(cells[cx], row, "x");
    p.y = parse_double(cells[cy], row, "y");
    p.z = parse_double(cells[cz], row, "z");
    const double pass = parse_double(cells[cpass], row, "pass_id");
    p.pass_id = static_cast<int>(pass);
    if (p.pass_id < 0 || static_cast<double>(p.pass_id) != pass) {
      throw ParseError("csv row " + std::to_string(row) +
                       ": pass_id must be a non-negative integer");
    }
    if (cint >= 0 && !cells[cint].empty()) {
      p.intensity = parse_double(cells[cint], row, "intensity");
    }
    if (ctime >= 0 && !cells[ctime].empty()) {
      p.gps_time = parse_double(cells[ctime], row, "gps_time");
    }
    points.push_back(p);
  }
  return PointCloud(std::move(points));
}

void write_csv(const PointCloud& cloud, const std::filesystem::path& path) {
  bool has_intensity = false;
  bool has_time = false;
  for (const auto& p : cloud.points()) {
    has_intensity |= p.intensity.has_value();
    has_time |= p.gps_time.has_value();
  }
  std::ostringstream out;
  out << "x,y,z,pass_id";
  if (has_intensity) out << ",intensity";
  if (has_time) out << ",gps_time";
  out << "\n";
  for (const auto& p : cloud.points()) {
    out << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(p.z) << ',' << p.pass_id;
    if (has_intensity) {
      out << ',';
      if (p.intensity) out << format_double(*p.intensity);
    }
    if (has_time) {
      out << ',';
      if (p.gps_time) out << format_double(*p.gps_time);
    }
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

}  // namespace lidarqa::io
