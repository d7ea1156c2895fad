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

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aglink/errors.hpp"
#include "aglink/geo.hpp"

namespace aglink::antenna {

/// One principal-plane cut of a radiation pattern: (angle, gain) samples
/// sorted by strictly increasing angle, gains in dBi.
struct PatternCut {
    std::vector<double> angles_deg;
    std::vector<double> gains_db;

    std::size_t size() const { return angles_deg.size(); }
    bool empty() const { return angles_deg.empty(); }
};

/// Azimuth (horizontal) and elevation (vertical) cuts of the BS antenna.
struct AntennaPattern {
    PatternCut azimuth_cut;   // angles in [-180, 180], periodic
    PatternCut elevation_cut; // angles in [-90, 90], clamped at the ends
};

/// Pattern with 0 dBi everywhere; handy as the no-antenna reference.
inline AntennaPattern isotropic_pattern() {
    return {{{-180.0, 180.0}, {0.0, 0.0}}, {{-90.0, 90.0}, {0.0, 0.0}}};
}

namespace detail {

inline PatternCut parse_cut(std::istream &in, double angle_lo, double angle_hi,
                            const char *cut_name) {
    std::vector<std::pair<double, double>> rows;
    std::string line;
    long row_no = 0;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        // strip whitespace-only lines
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(std::string(cut_name) + " cut: expected 'angle_deg,gain_db'", row_no);
        const std::string a_str = line.substr(0, comma);
        const std::string g_str = line.substr(comma + 1);

        double angle = 0.0, gain = 0.0;
        bool angle_ok = false;
        try {
            std::size_t pos = 0;
            angle = std::stod(a_str, &pos);
            angle_ok = a_str.find_first_not_of(" \t", pos) == std::string::npos;
        } catch (const std::exception &) {
        }
        if (!angle_ok) {
            if (row_no == 1 && rows.empty())
                continue; // optional header row
            throw ParseError(std::string(cut_name) + " cut: malformed row '" + line + "'", row_no);
        }
        try {
            std::size_t pos = 0;
            gain = std::stod(g_str, &pos);
            if (g_str.find_first_not_of(" \t", pos) != std::string::npos)
                throw std::invalid_argument("trailing garbage");
        } catch (const std::exception &) {
            throw ParseError(std::string(cut_name) + " cut: malformed row '" + line + "'", row_no);
        }
        rows.emplace_back(angle, gain);
    }
    if (rows.empty())
        throw ParseError(std::string(cut_name) + " cut: no samples");

    std::sort(rows.begin(), rows.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });

    PatternCut cut;
    cut.angles_deg.reserve(rows.size());
    cut.gains_db.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &[angle, gain] = rows[i];
        if (!std::isfinite(angle) || !std::isfinite(gain))
            throw DomainError(std::string(cut_name) + " cut: non-finite sample");
        if (angle < angle_lo || angle > angle_hi)
            throw DomainError(std::string(cut_name) + " cut: angle " + std::to_string(angle) +
                              " outside [" + std::to_string(angle_lo) + ", " +
                              std::to_string(angle_hi) + "]");
        if (i > 0 && angle == rows[i - 1].first)
            throw DomainError(std::string(cut_name) + " cut: duplicate angle " +
                              std::to_string(angle));
        cut.angles_deg.push_back(angle);
        cut.gains_db.push_back(gain);
    }
    return cut;
}

inline double lerp(double x0, double y0, double x1, double y1, double x) {
    const double t = (x - x0) / (x1 - x0);
    return y0 + t * (y1 - y0);
}

} // namespace detail

/// Parse azimuth and elevation cut CSVs (`angle_deg,gain_db` rows, header
/// optional). Rows are sorted on load; duplicate or out-of-range angles are
/// rejected. If the azimuth cut carries both -180 and 180 their gains must
/// match (the cut closes on itself).
inline AntennaPattern load_pattern(std::istream &azimuth_csv, std::istream &elevation_csv) {
    AntennaPattern p;
    p.azimuth_cut = detail::parse_cut(azimuth_csv, -180.0, 180.0, "azimuth");
    p.elevation_cut = detail::parse_cut(elevation_csv, -90.0, 90.0, "elevation");

    const auto &az = p.azimuth_cut;
    if (az.size() >= 2 && az.angles_deg.front() == -180.0 && az.angles_deg.back() == 180.0 &&
        std::abs(az.gains_db.front() - az.gains_db.back()) > 1e-9)
        throw DomainError("azimuth cut: gain(-180) != gain(180)");
    return p;
}

/// Horizontal-cut gain at an azimuth angle, periodic linear interpolation
/// in dB. Exact at tabulated angles.
inline double gain_h(const AntennaPattern &p, double azimuth_deg) {
    const PatternCut &cut = p.azimuth_cut;
    if (cut.empty())
        throw DomainError("empty azimuth cut");
    if (cut.size() == 1)
        return cut.gains_db.front();

    const double az = geo::wrap_deg(azimuth_deg);
    const auto &xs = cut.angles_deg;
    if (az == xs.front())
        return cut.gains_db.front();
    if (az == xs.back())
        return cut.gains_db.back();
    if (az < xs.front() || az > xs.back()) {
        // wrap segment from the last sample around to the first sample + 360
        const double x = (az < xs.front()) ? az + 360.0 : az;
        const double x1 = xs.front() + 360.0;
        if (x == x1)
            return cut.gains_db.front();
        return detail::lerp(xs.back(), cut.gains_db.back(), x1, cut.gains_db.front(), x);
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), az);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (az == xs[hi - 1])
        return cut.gains_db[hi - 1];
    return detail::lerp(xs[hi - 1], cut.gains_db[hi - 1], xs[hi], cut.gains_db[hi], az);
}

/// Vertical-cut gain at an elevation angle. Queries beyond the tabulated
/// ends clamp to the end samples.
inline double gain_v(const AntennaPattern &p, double elevation_deg) {
    const PatternCut &cut = p.elevation_cut;
    if (cut.empty())
        throw DomainError("empty elevation cut");
    const auto &xs = cut.angles_deg;
    if (elevation_deg <= xs.front())
        return cut.gains_db.front();
    if (elevation_deg >= xs.back())
        return cut.gains_db.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), elevation_deg);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    if (elevation_deg == xs[hi - 1])
        return cut.gains_db[hi - 1];
    return detail::lerp(xs[hi - 1], cut.gains_db[hi - 1], xs[hi], cut.gains_db[hi], elevation_deg);
}

/// Directional gain toward the UAV: the horizontal and vertical cut gains
/// add in dB.
inline double directional_gain(const AntennaPattern &p, const geo::RelativeGeometry &g) {
    return gain_h(p, g.azimuth_deg) + gain_v(p, g.elevation_deg);
}

} // namespace aglink::antenna
