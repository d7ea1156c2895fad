// SPDX-License-Identifier: Apache-2.0
//
// aglink — air-to-ground cellular link modeling toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <string>

#include "aglink/errors.hpp"

namespace aglink::geo {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// WGS-84 ellipsoid
inline constexpr double kWgs84A = 6378137.0;            // semi-major axis [m]
inline constexpr double kWgs84F = 1.0 / 298.257223563;  // flattening
inline constexpr double kWgs84B = kWgs84A * (1.0 - kWgs84F);
inline constexpr double kWgs84E2 = kWgs84F * (2.0 - kWgs84F); // first eccentricity squared

inline constexpr double kDegToRad = M_PI / 180.0;
inline constexpr double kRadToDeg = 180.0 / M_PI;

/// Wrap an angle in degrees into (-180, 180].
inline double wrap_deg(double x) {
    double y = std::fmod(x, 360.0);
    if (y <= -180.0)
        y += 360.0;
    else if (y > 180.0)
        y -= 360.0;
    return y;
}

/// Geodetic position on the WGS-84 datum.
struct GeoPosition {
    double latitude_deg = 0.0;  // [-90, 90]
    double longitude_deg = 0.0; // [-180, 180]
    double altitude_m = 0.0;    // above the common vertical datum

    void validate() const {
        if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
            throw DomainError("latitude out of [-90, 90]: " + std::to_string(latitude_deg));
        if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0))
            throw DomainError("longitude out of [-180, 180]: " + std::to_string(longitude_deg));
        if (!std::isfinite(altitude_m))
            throw DomainError("altitude is not finite");
    }
};

/// Base-station site: antenna phase center, boresight orientation and the
/// carrier/power figures that feed the link budget.
struct BsSiteConfig {
    GeoPosition position;                  // antenna phase center
    double boresight_azimuth_deg = 0.0;    // clockwise from true north
    double mechanical_downtilt_deg = 0.0;  // positive = below horizon
    double carrier_frequency_hz = 3.4e9;
    double tx_power_w = 5.0;               // per antenna port
    int n_prb = 273;                       // 100 MHz NR carrier at 30 kHz SCS
    int n_sc = 12;                         // subcarriers per PRB

    void validate() const {
        position.validate();
        if (!(carrier_frequency_hz > 0.0))
            throw DomainError("carrier_frequency_hz must be > 0");
        if (!(tx_power_w > 0.0))
            throw DomainError("tx_power_w must be > 0");
        if (n_prb < 1)
            throw DomainError("n_prb must be >= 1");
        if (n_sc < 1)
            throw DomainError("n_sc must be >= 1");
        if (!std::isfinite(boresight_azimuth_deg) || !std::isfinite(mechanical_downtilt_deg))
            throw DomainError("site angles must be finite");
    }
};

/// UAV pose relative to the antenna boresight: slant distance, horizontal
/// angle off boresight, vertical angle above the tilted boresight plane.
struct RelativeGeometry {
    double d_uav_m = 0.0;       // > 0
    double azimuth_deg = 0.0;   // (-180, 180]
    double elevation_deg = 0.0; // [-90, 90]
};

struct Enu {
    double east_m = 0.0;
    double north_m = 0.0;
    double up_m = 0.0;

    double norm() const { return std::sqrt(east_m * east_m + north_m * north_m + up_m * up_m); }
    double horizontal() const { return std::hypot(east_m, north_m); }
};

struct Ecef {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Ecef geodetic_to_ecef(const GeoPosition &p) {
    const double lat = p.latitude_deg * kDegToRad;
    const double lon = p.longitude_deg * kDegToRad;
    const double sin_lat = std::sin(lat), cos_lat = std::cos(lat);
    const double sin_lon = std::sin(lon), cos_lon = std::cos(lon);
    const double n = kWgs84A / std::sqrt(1.0 - kWgs84E2 * sin_lat * sin_lat);
    return {(n + p.altitude_m) * cos_lat * cos_lon,
            (n + p.altitude_m) * cos_lat * sin_lon,
            (n * (1.0 - kWgs84E2) + p.altitude_m) * sin_lat};
}

inline GeoPosition ecef_to_geodetic(const Ecef &e) {
    const double p = std::hypot(e.x, e.y);
    const double lon = std::atan2(e.y, e.x);
    // fixed-point iteration on latitude; converges far below 1e-9 m here
    double lat = std::atan2(e.z, p * (1.0 - kWgs84E2));
    double alt = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double sin_lat = std::sin(lat);
        const double n = kWgs84A / std::sqrt(1.0 - kWgs84E2 * sin_lat * sin_lat);
        alt = (p > 1.0) ? p / std::cos(lat) - n : std::abs(e.z) / std::abs(sin_lat) - n * (1.0 - kWgs84E2);
        lat = std::atan2(e.z, p * (1.0 - kWgs84E2 * n / (n + alt)));
    }
    return {lat * kRadToDeg, lon * kRadToDeg, alt};
}

/// Local East-North-Up offsets of `p` relative to `origin` on WGS-84.
inline Enu geodetic_to_enu(const GeoPosition &p, const GeoPosition &origin) {
    p.validate();
    origin.validate();
    const Ecef ep = geodetic_to_ecef(p);
    const Ecef eo = geodetic_to_ecef(origin);
    const double dx = ep.x - eo.x, dy = ep.y - eo.y, dz = ep.z - eo.z;

    const double lat = origin.latitude_deg * kDegToRad;
    const double lon = origin.longitude_deg * kDegToRad;
    const double sin_lat = std::sin(lat), cos_lat = std::cos(lat);
    const double sin_lon = std::sin(lon), cos_lon = std::cos(lon);

    return {-sin_lon * dx + cos_lon * dy,
            -sin_lat * cos_lon * dx - sin_lat * sin_lon * dy + cos_lat * dz,
            cos_lat * cos_lon * dx + cos_lat * sin_lon * dy + sin_lat * dz};
}

/// Inverse of geodetic_to_enu: place an ENU offset back on the ellipsoid.
inline GeoPosition enu_to_geodetic(const Enu &enu, const GeoPosition &origin) {
    origin.validate();
    const Ecef eo = geodetic_to_ecef(origin);
    const double lat = origin.latitude_deg * kDegToRad;
    const double lon = origin.longitude_deg * kDegToRad;
    const double sin_lat = std::sin(lat), cos_lat = std::cos(lat);
    const double sin_lon = std::sin(lon), cos_lon = std::cos(lon);

    const Ecef e{eo.x - sin_lon * enu.east_m - sin_lat * cos_lon * enu.north_m + cos_lat * cos_lon * enu.up_m,
                 eo.y + cos_lon * enu.east_m - sin_lat * sin_lon * enu.north_m + cos_lat * sin_lon * enu.up_m,
                 eo.z + cos_lat * enu.north_m + sin_lat * enu.up_m};
    return ecef_to_geodetic(e);
}

// Horizontal separations below this are treated as on-axis (zenith/nadir);
// 3D separations below it are degenerate.
inline constexpr double kDegenerateSeparationM = 0.01;

/// Slant distance, boresight-relative azimuth and tilted-plane elevation of
/// the UAV as seen from the BS antenna.
///
/// Azimuth is the UAV bearing minus the boresight azimuth wrapped to
/// (-180, 180]. Elevation is measured from the mechanically tilted boresight
/// plane (downtilt added), clamped to [-90, 90]. Directly overhead the
/// azimuth is defined as 0.
inline RelativeGeometry relative_geometry(const GeoPosition &uav, const BsSiteConfig &site) {
    site.validate();
    const Enu enu = geodetic_to_enu(uav, site.position);
    const double d = enu.norm();
    if (d < kDegenerateSeparationM)
        throw DegenerateGeometry("UAV within " + std::to_string(kDegenerateSeparationM) +
                                 " m of the BS antenna");

    const double horizontal = enu.horizontal();
    double azimuth = 0.0;
    double elevation_raw = 0.0;
    if (horizontal < kDegenerateSeparationM) {
        elevation_raw = (enu.up_m >= 0.0) ? 90.0 : -90.0;
    } else {
        const double bearing = std::atan2(enu.east_m, enu.north_m) * kRadToDeg;
        azimuth = wrap_deg(bearing - site.boresight_azimuth_deg);
        elevation_raw = std::atan2(enu.up_m, horizontal) * kRadToDeg;
    }
    double elevation = elevation_raw + site.mechanical_downtilt_deg;
    if (elevation > 90.0)
        elevation = 90.0;
    else if (elevation < -90.0)
        elevation = -90.0;

    return {d, azimuth, elevation};
}

/// Carrier wavelength c / f in meters.
inline double wavelength(const BsSiteConfig &site) {
    if (!(site.carrier_frequency_hz > 0.0))
        throw DomainError("carrier frequency must be > 0");
    return kSpeedOfLight / site.carrier_frequency_hz;
}

} // namespace aglink::geo
