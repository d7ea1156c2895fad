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

#include <cstdint>
#include <optional>
#include <random>

#include "aglink/antenna.hpp"
#include "aglink/flightlog.hpp"
#include "aglink/geo.hpp"
#include "aglink/linkbudget.hpp"

namespace aglink::data {

/// Plane in (distance, azimuth, elevation) space used to plant channel-rank
/// labels: score = c_d·d + c_azimuth·φ + c_elevation·θ + intercept, with
/// score ≥ 0 mapped to rank_nonneg.
struct RankPlane {
    double c_d = 0.0;
    double c_azimuth = 0.0;
    double c_elevation = 0.0;
    double intercept = 0.0;
    int rank_nonneg = 1;
    int rank_neg = 4;

    int label(double d_m, double azimuth_deg, double elevation_deg) const {
        const double s =
            c_d * d_m + c_azimuth * azimuth_deg + c_elevation * elevation_deg + intercept;
        return s >= 0.0 ? rank_nonneg : rank_neg;
    }
};

struct SynthConfig {
    double noise_std_db = 0.0; // >= 0
    std::uint64_t seed = 0;
    std::optional<RankPlane> rank_plane;
};

/// Fill a positions-only flight log with free-space RSRP plus i.i.d. Gaussian
/// noise. Same seed → bit-identical output. With a rank plane configured,
/// each row also gets a planted rank label from its link geometry.
inline FlightLog synthesize_measurements(const FlightLog &positions, const geo::BsSiteConfig &site,
                                         const antenna::AntennaPattern &pattern,
                                         const SynthConfig &cfg) {
    if (cfg.noise_std_db < 0.0)
        throw DomainError("noise_std_db must be non-negative");
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, cfg.noise_std_db > 0.0 ? cfg.noise_std_db : 1.0);

    FlightLog out = positions;
    for (auto &rec : out.records) {
        const double noise = cfg.noise_std_db > 0.0 ? gauss(rng) : 0.0;
        linkbudget::RsrpPrediction p;
        try {
            p = linkbudget::predict_rsrp(site, pattern, rec.position);
        } catch (const DegenerateGeometry &) {
            rec.rsrp_dbm.reset(); // row kept, measurement left missing
            continue;
        }
        rec.rsrp_dbm = p.rsrp_dbm + noise;
        if (cfg.rank_plane)
            rec.rank = cfg.rank_plane->label(p.geometry.d_uav_m, p.geometry.azimuth_deg,
                                             p.geometry.elevation_deg);
    }
    return out;
}

} // namespace aglink::data
