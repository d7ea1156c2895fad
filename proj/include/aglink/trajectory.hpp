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

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "aglink/errors.hpp"
#include "aglink/flightlog.hpp"
#include "aglink/geo.hpp"

namespace aglink::data {

/// Parameters for a synthetic flight path. Horizontal coordinates are local
/// ENU meters relative to the base-station site; the aircraft holds a fixed
/// altitude above the site reference and a constant ground speed.
///
/// Patterns:
///   polygon    — closed loop through `vertices` (>= 3)
///   sawtooth   — lateral zig-zag of `passes` sweeps, `extent_m` wide,
///                advancing `spacing_m` north per sweep from `start_north_m`
///   two_sweeps — two north-south passes of length `sweep_length_m` at east
///                offsets `sweep_offsets_m`, joined at the north end
///   waypoints  — open polyline through `vertices` (>= 2)
struct TrajectorySpec {
    std::string pattern = "polygon";
    double altitude_m = 30.0;
    double speed_mps = 5.0;
    double sample_period_s = 1.0;
    std::string device = "SYN";

    std::vector<std::array<double, 2>> vertices; // {east_m, north_m}

    double extent_m = 0.0;
    double spacing_m = 0.0;
    int passes = 0;
    double start_north_m = 0.0;

    std::array<double, 2> sweep_offsets_m = {0.0, 0.0};
    double sweep_length_m = 0.0;
};

namespace detail {

inline std::vector<std::array<double, 2>> polyline_for(const TrajectorySpec &spec) {
    std::vector<std::array<double, 2>> pts;
    if (spec.pattern == "polygon") {
        if (spec.vertices.size() < 3)
            throw BadSpec("polygon requires at least 3 vertices");
        pts = spec.vertices;
        pts.push_back(spec.vertices.front()); // close the loop
    } else if (spec.pattern == "waypoints") {
        if (spec.vertices.size() < 2)
            throw BadSpec("waypoints requires at least 2 vertices");
        pts = spec.vertices;
    } else if (spec.pattern == "sawtooth") {
        if (spec.passes < 1)
            throw BadSpec("sawtooth requires passes >= 1");
        if (!(spec.extent_m > 0.0))
            throw BadSpec("sawtooth requires extent_m > 0");
        if (!(spec.spacing_m > 0.0))
            throw BadSpec("sawtooth requires spacing_m > 0");
        const double half = 0.5 * spec.extent_m;
        for (int p = 0; p <= spec.passes; ++p) {
            const double east = (p % 2 == 0) ? -half : half;
            pts.push_back({east, spec.start_north_m + p * spec.spacing_m});
        }
    } else if (spec.pattern == "two_sweeps") {
        if (!(spec.sweep_length_m > 0.0))
            throw BadSpec("two_sweeps requires sweep_length_m > 0");
        const double half = 0.5 * spec.sweep_length_m;
        const double e1 = spec.sweep_offsets_m[0];
        const double e2 = spec.sweep_offsets_m[1];
        pts = {{e1, -half}, {e1, half}, {e2, half}, {e2, -half}};
    } else {
        throw BadSpec("unknown trajectory pattern '" + spec.pattern + "'");
    }
    double length = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        length += std::hypot(pts[i][0] - pts[i - 1][0], pts[i][1] - pts[i - 1][1]);
    if (!(length > 0.0))
        throw BadSpec("trajectory has zero path length");
    return pts;
}

} // namespace detail

/// Walk the pattern's polyline at constant speed, emitting one position per
/// sample period. Deterministic; altitude is identical on every row.
inline FlightLog generate_trajectory(const TrajectorySpec &spec, const geo::BsSiteConfig &site) {
    if (!(spec.altitude_m > 0.0))
        throw BadSpec("altitude_m must be positive");
    if (!(spec.speed_mps > 0.0))
        throw BadSpec("speed_mps must be positive");
    if (!(spec.sample_period_s > 0.0))
        throw BadSpec("sample_period_s must be positive");
    site.validate();

    const auto pts = detail::polyline_for(spec);
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum[i] = cum[i - 1] +
                 std::hypot(pts[i][0] - pts[i - 1][0], pts[i][1] - pts[i - 1][1]);
    const double total = cum.back();
    const double step = spec.speed_mps * spec.sample_period_s;

    FlightLog log;
    log.metadata.device = spec.device;
    log.metadata.trajectory_label = spec.pattern;

    const double altitude = site.position.altitude_m + spec.altitude_m;
    std::size_t seg = 1;
    for (std::size_t k = 0;; ++k) {
        const double s = k * step;
        if (s > total)
            break;
        while (seg + 1 < pts.size() && cum[seg] < s)
            ++seg;
        const double seg_len = cum[seg] - cum[seg - 1];
        const double t = seg_len > 0.0 ? (s - cum[seg - 1]) / seg_len : 0.0;
        const double east = pts[seg - 1][0] + t * (pts[seg][0] - pts[seg - 1][0]);
        const double north = pts[seg - 1][1] + t * (pts[seg][1] - pts[seg - 1][1]);

        geo::GeoPosition pos = geo::enu_to_geodetic({east, north, 0.0}, site.position);
        pos.altitude_m = altitude; // hold altitude exactly constant
        KpiRecord rec;
        rec.timestamp_s = k * spec.sample_period_s;
        rec.position = pos;
        rec.device = spec.device;
        log.records.push_back(std::move(rec));
    }
    return log;
}

/// Parse a TrajectorySpec from JSON. Unknown keys are rejected so typos in
/// hand-written spec files fail loudly.
inline TrajectorySpec trajectory_spec_from_json(const nlohmann::json &j) {
    if (!j.is_object())
        throw BadSpec("trajectory spec must be a JSON object");
    static const std::vector<std::string> allowed = {
        "pattern",      "altitude_m",     "speed_mps",       "sample_period_s",
        "device",       "vertices",       "extent_m",        "spacing_m",
        "passes",       "start_north_m",  "sweep_offsets_m", "sweep_length_m"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw BadSpec("unknown trajectory spec key '" + it.key() + "'");
    TrajectorySpec spec;
    try {
        spec.pattern = j.value("pattern", spec.pattern);
        spec.altitude_m = j.value("altitude_m", spec.altitude_m);
        spec.speed_mps = j.value("speed_mps", spec.speed_mps);
        spec.sample_period_s = j.value("sample_period_s", spec.sample_period_s);
        spec.device = j.value("device", spec.device);
        if (j.contains("vertices"))
            for (const auto &v : j.at("vertices"))
                spec.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        spec.extent_m = j.value("extent_m", spec.extent_m);
        spec.spacing_m = j.value("spacing_m", spec.spacing_m);
        spec.passes = j.value("passes", spec.passes);
        spec.start_north_m = j.value("start_north_m", spec.start_north_m);
        if (j.contains("sweep_offsets_m")) {
            const auto &o = j.at("sweep_offsets_m");
            spec.sweep_offsets_m = {o.at(0).get<double>(), o.at(1).get<double>()};
        }
        spec.sweep_length_m = j.value("sweep_length_m", spec.sweep_length_m);
    } catch (const nlohmann::json::exception &e) {
        throw BadSpec(std::string("malformed trajectory spec: ") + e.what());
    }
    return spec;
}

} // namespace aglink::data
