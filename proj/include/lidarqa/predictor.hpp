#pragma once

#include <vector>

#include "lidarqa/model.hpp"

namespace lidarqa {

/// Angle-of-capture geometry for a point at height h on a wall at horizontal
/// offset d from a sensor flying at H AGL. Angles in degrees.
struct CaptureGeometry {
  double theta_h_deg = 0.0;  // nadir to wall base
  double theta_w_deg = 0.0;  // wall base to height h, subtended at the sensor
  double altitude_agl = 0.0;
  double offset = 0.0;
  double height = 0.0;
};

/// theta_H = atan(d / H), theta_W = atan(d / (H - h)) - theta_H.
/// Throws DomainError for h >= H or d <= 0 (wall at nadir).
CaptureGeometry capture_geometry(double altitude_agl, double offset,
                                 double height);

struct FlatDensity {
  double swath_width = 0.0;  // 2 H tan(theta_max), meters
  double rho_flat = 0.0;     // f_scanner / (swath_width * v), pts/m^2
};

/// Swath width and mean flat-ground density from the pulse rate alone.
FlatDensity swath_and_flat_density(const ScannerSpec& scanner,
                                   const FlightLine& flight);

/// Density directly under the flight line: 1 / (H tan(theta_L) R_along)
/// with R_along = v / line_rate.
double nadir_density(const ScannerSpec& scanner, const FlightLine& flight);

struct DensityRatios {
  double horizontal = 0.0;  // rho_H / rho_N = cos^2(theta)
  double vertical = 0.0;    // rho_V / rho_N = cos^2(theta) tan(theta)
};

DensityRatios density_ratios(double theta_h_deg);

/// Wall density at the given capture geometry:
/// rho_W = rho_N cos^2(theta_H) tan(theta_H) sin^2(theta_H + theta_W) / sin^2(theta_H).
double wall_density(const CaptureGeometry& geometry, double rho_n);

/// Alternate printed form rho_N tan(theta_H + theta_L) sin^2(theta_H + theta_W)
/// / tan^2(theta_H); agrees with wall_density only as theta_L -> 0 and is kept
/// as a cross-check.
double wall_density_alt(const CaptureGeometry& geometry, double rho_n,
                        double theta_l_deg);

// Point-spacing (resolution) forms, duals of the densities above through
// rho = 1 / (R_across * R_along).
double nadir_spacing(double altitude_agl, double theta_l_deg);      // R_N
double horizontal_spacing(double r_n, double theta_h_deg);          // R_H
double vertical_spacing(double r_n, double theta_h_deg);            // R_V
double wall_spacing(double r_v, double theta_h_deg, double theta_w_deg);  // R_W

struct WallProfileBin {
  double h_center = 0.0;  // meters above ground
  double rho_w = 0.0;     // pts/m^2
};

struct WallProfile {
  std::vector<WallProfileBin> bins;
  bool truncated = false;  // wall top left the operating range
  double offset = 0.0;     // perpendicular flight-line-to-wall distance
};

/// Wall density evaluated at bin centers from h_min to h_max. Bins whose
/// capture angle exceeds the operating range are dropped and the profile is
/// flagged as truncated.
WallProfile wall_profile(const ScannerSpec& scanner, const FlightLine& flight,
                         const WallTarget& wall, double bin_height = 1.0);

struct TheoreticalSummary {
  double rho_flat_nadir = 0.0;     // rho_N
  double rho_wall_avg = 0.0;       // mean of rho_W over height bins
  double eta_hv_predicted = 0.0;   // rho_flat_nadir / rho_wall_avg
};

TheoreticalSummary theoretical_summary(const ScannerSpec& scanner,
                                       const FlightLine& flight,
                                       const WallTarget& wall,
                                       double bin_height = 1.0);

}  // namespace lidarqa
