#include "lidarqa/io/las.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "lidarqa/io/util.hpp"
#include "lidarqa/errors.hpp"

namespace lidarqa::io {

namespace {

// Record layouts (standard sizes; longer records carry extra bytes).
constexpr std::size_t kRecordSize[] = {20, 28, 0, 0, 0, 0, 30, 36};
constexpr std::size_t kHeaderSize12 = 227;
constexpr std::size_t kHeaderSize14 = 375;

template <typename T>
T read_le(const std::string& buf, std::size_t off) {
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  return v;  // little-endian host assumed
}

template <typename T>
void write_le(std::string& buf, std::size_t off, T v) {
  std::memcpy(buf.data() + off, &v, sizeof(T));
}

bool supported_format(int f) {
  return f == 0 || f == 1 || f == 6 || f == 7;
}

}  // namespace

PointCloud read_las(const std::filesystem::path& path) {
  const std::string buf = read_file(path);
  if (buf.size() < kHeaderSize12) {
    throw CorruptFile("las: file shorter than a LAS header: " + path.string());
  }
  if (buf.compare(0, 4, "LASF") != 0) {
    throw FormatError("las: bad magic (expected LASF): " + path.string());
  }
  const auto version_major = static_cast<int>(read_le<std::uint8_t>(buf, 24));
  const auto version_minor = static_cast<int>(read_le<std::uint8_t>(buf, 25));
  if (version_major != 1) {
    throw UnsupportedFormat("las: unsupported version " +
                            std::to_string(version_major) + "." +
                            std::to_string(version_minor));
  }
  const auto header_size = read_le<std::uint16_t>(buf, 94);
  const auto data_offset = read_le<std::uint32_t>(buf, 96);
  const auto point_format = static_cast<int>(read_le<std::uint8_t>(buf, 104));
  const auto record_length = read_le<std::uint16_t>(buf, 105);
  if (!supported_format(point_format)) {
    throw UnsupportedFormat("las: unsupported point data record format " +
                            std::to_string(point_format));
  }
  if (record_length < kRecordSize[point_format]) {
    throw CorruptFile("las: record length " + std::to_string(record_length) +
                      " below the minimum for format " +
                      std::to_string(point_format));
  }

  std::uint64_t count = read_le<std::uint32_t>(buf, 107);
  if (version_minor >= 4 && header_size >= kHeaderSize14) {
    const auto count64 = read_le<std::uint64_t>(buf, 247);
    if (count == 0) count = count64;
  }

  const double scale_x = read_le<double>(buf, 131);
  const double scale_y = read_le<double>(buf, 139);
  const double scale_z = read_le<double>(buf, 147);
  const double off_x = read_le<double>(buf, 155);
  const double off_y = read_le<double>(buf, 163);
  const double off_z = read_le<double>(buf, 171);

  if (buf.size() < static_cast<std::uint64_t>(data_offset) +
                       count * record_length) {
    const std::uint64_t complete =
        buf.size() < data_offset ? 0 : (buf.size() - data_offset) / record_length;
    throw CorruptFile("las: truncated point records at byte offset " +
                      std::to_string(data_offset + complete * record_length) +
                      " (header promises " + std::to_string(count) +
                      " records)");
  }

  const bool new_layout = point_format >= 6;
  const std::size_t psid_off = new_layout ? 20 : 18;
  const bool has_gps = point_format == 1 || new_layout;
  const std::size_t gps_off = new_layout ? 22 : 20;

  std::vector<Point> points;
  points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t base = data_offset + i * record_length;
    Point p;
    p.x = read_le<std::int32_t>(buf, base) * scale_x + off_x;
    p.y = read_le<std::int32_t>(buf, base + 4) * scale_y + off_y;
    p.z = read_le<std::int32_t>(buf, base + 8) * scale_z + off_z;
    p.intensity = static_cast<double>(read_le<std::uint16_t>(buf, base + 12));
    p.pass_id = read_le<std::uint16_t>(buf, base + psid_off);
    if (has_gps) p.gps_time = read_le<double>(buf, base + gps_off);
    points.push_back(p);
  }
  return PointCloud(std::move(points));
}

void write_las(const PointCloud& cloud, const std::filesystem::path& path,
               int point_format) {
  if (!supported_format(point_format)) {
    throw UnsupportedFormat("las: cannot write point format " +
                            std::to_string(point_format));
  }
  for (const auto& p : cloud.points()) {
    if (p.pass_id > 0xFFFF) {
      throw InvalidInput("las: pass_id " + std::to_string(p.pass_id) +
                         " does not fit Point Source ID (uint16)");
    }
  }

  const bool new_layout = point_format >= 6;
  const std::size_t header_size = new_layout ? kHeaderSize14 : kHeaderSize12;
  const std::size_t record_length = kRecordSize[point_format];
  const double scale = 0.001;
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  Eigen::Vector3d lo = Eigen::Vector3d::Zero();
  Eigen::Vector3d hi = Eigen::Vector3d::Zero();
  if (!cloud.empty()) {
    lo = cloud.bounds().min;
    hi = cloud.bounds().max;
    for (int a = 0; a < 3; ++a) offset[a] = std::floor(lo[a]);
  }

  std::string buf(header_size + cloud.size() * record_length, '\0');
  buf.replace(0, 4, "LASF");
  write_le<std::uint8_t>(buf, 24, 1);
  write_le<std::uint8_t>(buf, 25, new_layout ? 4 : 2);
  write_le<std::uint16_t>(buf, 94, static_cast<std::uint16_t>(header_size));
  write_le<std::uint32_t>(buf, 96, static_cast<std::uint32_t>(header_size));
  write_le<std::uint32_t>(buf, 100, 0);  // no VLRs
  write_le<std::uint8_t>(buf, 104, static_cast<std::uint8_t>(point_format));
  write_le<std::uint16_t>(buf, 105, static_cast<std::uint16_t>(record_length));
  const std::uint64_t count = cloud.size();
  write_le<std::uint32_t>(
      buf, 107,
      count <= 0xFFFFFFFFULL ? static_cast<std::uint32_t>(count) : 0U);
  write_le<double>(buf, 131, scale);
  write_le<double>(buf, 139, scale);
  write_le<double>(buf, 147, scale);
  write_le<double>(buf, 155, offset.x());
  write_le<double>(buf, 163, offset.y());
  write_le<double>(buf, 171, offset.z());
  write_le<double>(buf, 179, hi.x());
  write_le<double>(buf, 187, lo.x());
  write_le<double>(buf, 195, hi.y());
  write_le<double>(buf, 203, lo.y());
  write_le<double>(buf, 211, hi.z());
  write_le<double>(buf, 219, lo.z());
  if (new_layout) {
    write_le<std::uint64_t>(buf, 247, count);
  }

  const std::size_t psid_off = new_layout ? 20 : 18;
  const bool has_gps = point_format == 1 || new_layout;
  const std::size_t gps_off = new_layout ? 22 : 20;

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point& p = cloud.points()[i];
    const std::size_t base = header_size + i * record_length;
    write_le<std::int32_t>(
        buf, base,
        static_cast<std::int32_t>(std::llround((p.x - offset.x()) / scale)));
    write_le<std::int32_t>(
        buf, base + 4,
        static_cast<std::int32_t>(std::llround((p.y - offset.y()) / scale)));
    write_le<std::int32_t>(
        buf, base + 8,
        static_cast<std::int32_t>(std::llround((p.z - offset.z()) / scale)));
    const double intensity = p.intensity.value_or(0.0);
    write_le<std::uint16_t>(
        buf, base + 12,
        static_cast<std::uint16_t>(
            std::clamp(std::llround(intensity), 0LL, 65535LL)));
    write_le<std::uint16_t>(buf, base + psid_off,
                            static_cast<std::uint16_t>(p.pass_id));
    if (has_gps) write_le<double>(buf, base + gps_off, p.gps_time.value_or(0.0));
  }

  write_file_atomic(path, buf);
}

}  // namespace lidarqa::io
