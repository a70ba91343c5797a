#include "lidarqa/predictor.hpp"

#include <cmath>

#include "lidarqa/errors.hpp"

namespace lidarqa {

namespace {
constexpr double kDeg2Rad = M_PI / 180.0;
constexpr double kRad2Deg = 180.0 / M_PI;

// Perpendicular distance from the (infinite) flight line to the midpoint of
// the wall base.
double flight_to_wall_offset(const FlightLine& flight, const WallTarget& wall) {
  const Eigen::Vector2d dir = (flight.end_xy - flight.start_xy).normalized();
  const Eigen::Vector2d mid = 0.5 * (wall.base_start + wall.base_end);
  const Eigen::Vector2d rel = mid - flight.start_xy;
  const double cross = dir.x() * rel.y() - dir.y() * rel.x();
  return std::abs(cross);
}
}  // namespace

CaptureGeometry capture_geometry(double altitude_agl, double offset,
                                 double height) {
  if (!(altitude_agl > 0.0)) {
    throw DomainError("capture_geometry: altitude must be positive");
  }
  if (!(offset > 0.0)) {
    throw DomainError("capture_geometry: wall at nadir (offset must be > 0)");
  }
  if (height >= altitude_agl) {
    throw DomainError("capture_geometry: wall height reaches flight altitude");
  }
  CaptureGeometry g;
  g.altitude_agl = altitude_agl;
  g.offset = offset;
  g.height = height;
  g.theta_h_deg = std::atan(offset / altitude_agl) * kRad2Deg;
  g.theta_w_deg =
      std::atan(offset / (altitude_agl - height)) * kRad2Deg - g.theta_h_deg;
  return g;
}

FlatDensity swath_and_flat_density(const ScannerSpec& scanner,
                                   const FlightLine& flight) {
  scanner.validate();
  flight.validate();
  if (scanner.half_angle_deg >= 90.0) {
    throw DomainError("swath: half angle must be below 90 degrees");
  }
  FlatDensity out;
  out.swath_width =
      2.0 * flight.altitude_agl * std::tan(scanner.half_angle_deg * kDeg2Rad);
  out.rho_flat = scanner.pulse_rate / (out.swath_width * flight.speed);
  return out;
}

double nadir_density(const ScannerSpec& scanner, const FlightLine& flight) {
  scanner.validate();
  flight.validate();
  const double r_along = flight.along_spacing(scanner.line_rate);
  return 1.0 / (flight.altitude_agl *
                std::tan(scanner.angular_step_deg * kDeg2Rad) * r_along);
}

DensityRatios density_ratios(double theta_h_deg) {
  if (!(theta_h_deg >= 0.0) || theta_h_deg >= 90.0) {
    throw DomainError("density_ratios: theta_H must be in [0, 90)");
  }
  const double t = theta_h_deg * kDeg2Rad;
  const double c2 = std::cos(t) * std::cos(t);
  return {c2, c2 * std::tan(t)};
}

double wall_density(const CaptureGeometry& geometry, double rho_n) {
  const double th = geometry.theta_h_deg * kDeg2Rad;
  const double tw = geometry.theta_w_deg * kDeg2Rad;
  if (!(geometry.theta_h_deg > 0.0)) {
    throw DomainError("wall_density: wall at nadir");
  }
  if (geometry.theta_h_deg + geometry.theta_w_deg >= 90.0) {
    throw DomainError("wall_density: capture angle reaches the horizon");
  }
  const double sh = std::sin(th);
  const double rho_v = rho_n * std::cos(th) * std::cos(th) * std::tan(th);
  return rho_v * std::sin(th + tw) * std::sin(th + tw) / (sh * sh);
}

double wall_density_alt(const CaptureGeometry& geometry, double rho_n,
                        double theta_l_deg) {
  const double th = geometry.theta_h_deg * kDeg2Rad;
  const double tw = geometry.theta_w_deg * kDeg2Rad;
  const double tl = theta_l_deg * kDeg2Rad;
  const double s = std::sin(th + tw);
  return rho_n * std::tan(th + tl) * s * s / (std::tan(th) * std::tan(th));
}

double nadir_spacing(double altitude_agl, double theta_l_deg) {
  return altitude_agl * std::tan(theta_l_deg * kDeg2Rad);
}

double horizontal_spacing(double r_n, double theta_h_deg) {
  const double c = std::cos(theta_h_deg * kDeg2Rad);
  return r_n / (c * c);
}

double vertical_spacing(double r_n, double theta_h_deg) {
  return horizontal_spacing(r_n, theta_h_deg) /
         std::tan(theta_h_deg * kDeg2Rad);
}

double wall_spacing(double r_v, double theta_h_deg, double theta_w_deg) {
  const double sh = std::sin(theta_h_deg * kDeg2Rad);
  const double shw = std::sin((theta_h_deg + theta_w_deg) * kDeg2Rad);
  return r_v * sh * sh / (shw * shw);
}

WallProfile wall_profile(const ScannerSpec& scanner, const FlightLine& flight,
                         const WallTarget& wall, double bin_height) {
  scanner.validate();
  flight.validate();
  wall.validate();
  if (!(bin_height > 0.0)) {
    throw InvalidInput("wall_profile: bin_height must be > 0");
  }

  WallProfile profile;
  profile.offset = flight_to_wall_offset(flight, wall);
  const double rho_n = nadir_density(scanner, flight);
  const double h_agl = flight.altitude_agl;

  for (double h0 = wall.h_min; h0 < wall.h_max - 1e-12; h0 += bin_height) {
    const double h1 = std::min(h0 + bin_height, wall.h_max);
    if (h1 >= h_agl) {
      profile.truncated = true;
      break;
    }
    // Angle to the top of the bin must stay within the operating range.
    const double theta_top =
        std::atan(profile.offset / (h_agl - h1)) * kRad2Deg;
    if (theta_top > scanner.half_angle_deg) {
      profile.truncated = true;
      break;
    }
    const double hc = 0.5 * (h0 + h1);
    const auto geom = capture_geometry(h_agl, profile.offset, hc);
    profile.bins.push_back({hc, wall_density(geom, rho_n)});
  }
  return profile;
}

TheoreticalSummary theoretical_summary(const ScannerSpec& scanner,
                                       const FlightLine& flight,
                                       const WallTarget& wall,
                                       double bin_height) {
  const WallProfile profile = wall_profile(scanner, flight, wall, bin_height);
  if (profile.bins.empty()) {
    throw DomainError("theoretical_summary: wall entirely outside range");
  }
  TheoreticalSummary s;
  s.rho_flat_nadir = nadir_density(scanner, flight);
  double sum = 0.0;
  for (const auto& b : profile.bins) sum += b.rho_w;
  s.rho_wall_avg = sum / static_cast<double>(profile.bins.size());
  s.eta_hv_predicted = s.rho_flat_nadir / s.rho_wall_avg;
  return s;
}

}  // namespace lidarqa
