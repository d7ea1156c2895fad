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
#include <numbers>
#include <string>
#include <vector>

#include "aglink/antenna.hpp"
#include "aglink/errors.hpp"
#include "aglink/flightlog.hpp"
#include "aglink/geo.hpp"

namespace aglink::linkbudget {

/// Per-resource-element synchronization-signal transmit power.
struct SsTxPower {
    double per_re_dbm = 0.0;
};

/// Free-space RSRP prediction with its additive breakdown. The identity
/// rsrp_dbm = tx_dbm + gain_h_db + gain_v_db − fspl_db holds bit-exactly
/// because rsrp_dbm is stored from that very expression.
struct RsrpPrediction {
    double timestamp_s = 0.0;
    geo::RelativeGeometry geometry;
    struct Breakdown {
        double tx_dbm = 0.0;
        double gain_h_db = 0.0;
        double gain_v_db = 0.0;
        double fspl_db = 0.0;
    } components;
    double rsrp_dbm = 0.0;
};

/// Row-level failure captured while predicting along a trajectory.
struct TrajectoryFailure {
    std::size_t row = 0; // index into the flight log's record vector
    std::string message;
};

struct TrajectoryPredictions {
    std::vector<RsrpPrediction> predictions;
    std::vector<TrajectoryFailure> failures;
};

/// Power of one SS resource element: total power split evenly across
/// n_prb × n_sc subcarriers, expressed in dBm.
inline SsTxPower ss_tx_power(const geo::BsSiteConfig &site) {
    site.validate();
    const double mw = 1000.0 * site.tx_power_w / (static_cast<double>(site.n_prb) * site.n_sc);
    return {10.0 * std::log10(mw)};
}

/// Free-space path loss 20·log10(4πd/λ) in dB.
inline double fspl_db(double d_m, double lambda_m) {
    if (!(d_m > 0.0))
        throw DomainError("fspl_db: distance must be positive");
    if (!(lambda_m > 0.0))
        throw DomainError("fspl_db: wavelength must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * d_m / lambda_m);
}

/// Predict SS-RSRP at the UAV position: transmit power per resource element,
/// plus the directional antenna gains at the UAV's bearing, minus free-space
/// path loss over the 3D separation.
inline RsrpPrediction predict_rsrp(const geo::BsSiteConfig &site,
                                   const antenna::AntennaPattern &pattern,
                                   const geo::GeoPosition &uav) {
    RsrpPrediction out;
    out.geometry = geo::relative_geometry(uav, site);
    out.components.tx_dbm = ss_tx_power(site).per_re_dbm;
    out.components.gain_h_db = antenna::gain_h(pattern, out.geometry.azimuth_deg);
    out.components.gain_v_db = antenna::gain_v(pattern, out.geometry.elevation_deg);
    out.components.fspl_db = fspl_db(out.geometry.d_uav_m, geo::wavelength(site));
    out.rsrp_dbm = out.components.tx_dbm + out.components.gain_h_db + out.components.gain_v_db -
                   out.components.fspl_db;
    return out;
}

/// Element-wise predict_rsrp over a flight log, carrying timestamps through.
/// Rows whose geometry is degenerate (UAV on top of the mast) are reported in
/// `failures` instead of aborting the sweep.
inline TrajectoryPredictions predict_trajectory(const geo::BsSiteConfig &site,
                                                const antenna::AntennaPattern &pattern,
                                                const data::FlightLog &log) {
    TrajectoryPredictions out;
    out.predictions.reserve(log.records.size());
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const auto &rec = log.records[i];
        try {
            RsrpPrediction p = predict_rsrp(site, pattern, rec.position);
            p.timestamp_s = rec.timestamp_s;
            out.predictions.push_back(std::move(p));
        } catch (const DegenerateGeometry &e) {
            out.failures.push_back({i, e.what()});
        }
    }
    return out;
}

} // namespace aglink::linkbudget
