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
#include <vector>

#include "aglink/errors.hpp"
#include "aglink/flightlog.hpp"
#include "aglink/geo.hpp"

namespace aglink::models {

/// How the slant distance enters a model's feature space.
enum class DistanceTransform { linear, log10 };

inline std::string to_string(DistanceTransform t) {
    return t == DistanceTransform::log10 ? "log10" : "linear";
}

inline DistanceTransform distance_transform_from_string(const std::string &s) {
    if (s == "log10")
        return DistanceTransform::log10;
    if (s == "linear")
        return DistanceTransform::linear;
    throw BadSpec("unknown distance transform '" + s + "'");
}

/// Model-space regressors: transformed distance plus the two boresight
/// angles. Field order matches the (i, j, k) exponent convention of the
/// polynomial predictor.
struct FeatureVector {
    double distance_feature = 0.0; // d_uav_m or log10(d_uav_m)
    double elevation_deg = 0.0;
    double azimuth_deg = 0.0;
};

/// One training row: raw link geometry and the measured target.
struct Sample {
    double d_uav_m = 0.0;
    double elevation_deg = 0.0;
    double azimuth_deg = 0.0;
    double rsrp_dbm = 0.0;
};

using Dataset = std::vector<Sample>;

/// Build the model-space regressors for a raw geometry.
inline FeatureVector make_features(double d_uav_m, double elevation_deg, double azimuth_deg,
                                   DistanceTransform transform) {
    FeatureVector f;
    if (transform == DistanceTransform::log10) {
        if (!(d_uav_m > 0.0))
            throw DomainError("log10 distance transform requires d > 0");
        f.distance_feature = std::log10(d_uav_m);
    } else {
        f.distance_feature = d_uav_m;
    }
    f.elevation_deg = elevation_deg;
    f.azimuth_deg = azimuth_deg;
    if (!std::isfinite(f.distance_feature) || !std::isfinite(f.elevation_deg) ||
        !std::isfinite(f.azimuth_deg))
        throw NonFinite("feature vector contains a non-finite value");
    return f;
}

inline FeatureVector make_features(const Sample &s, DistanceTransform transform) {
    return make_features(s.d_uav_m, s.elevation_deg, s.azimuth_deg, transform);
}

/// Extract (geometry, measured RSRP) samples from a flight log. Rows without
/// an RSRP measurement are skipped; degenerate rows (UAV on the mast) too.
inline Dataset dataset_from_log(const data::FlightLog &log, const geo::BsSiteConfig &site) {
    Dataset out;
    out.reserve(log.records.size());
    for (const auto &rec : log.records) {
        if (!rec.rsrp_dbm)
            continue;
        geo::RelativeGeometry g;
        try {
            g = geo::relative_geometry(rec.position, site);
        } catch (const DegenerateGeometry &) {
            continue;
        }
        out.push_back({g.d_uav_m, g.elevation_deg, g.azimuth_deg, *rec.rsrp_dbm});
    }
    return out;
}

} // namespace aglink::models
