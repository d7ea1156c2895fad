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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "aglink/synth.hpp"
#include "aglink/trajectory.hpp"

using Catch::Approx;
using namespace aglink;
using namespace aglink::data;

namespace {

geo::BsSiteConfig test_site() {
    geo::BsSiteConfig site;
    site.position = {35.727, -78.696, 110.0};
    site.boresight_azimuth_deg = 75.0;
    return site;
}

FlightLog sample_positions(const geo::BsSiteConfig &site) {
    TrajectorySpec spec;
    spec.pattern = "waypoints";
    spec.vertices = {{-400.0, 100.0}, {400.0, 350.0}};
    spec.altitude_m = 60.0;
    return generate_trajectory(spec, site);
}

} // namespace

TEST_CASE("zero noise reproduces the free-space prediction exactly", "[synth]") {
    const geo::BsSiteConfig site = test_site();
    const antenna::AntennaPattern iso = antenna::isotropic_pattern();
    const FlightLog positions = sample_positions(site);

    const FlightLog out = synthesize_measurements(positions, site, iso, {0.0, 123, std::nullopt});
    REQUIRE(out.size() == positions.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        REQUIRE(out.records[i].rsrp_dbm.has_value());
        const double truth =
            linkbudget::predict_rsrp(site, iso, positions.records[i].position).rsrp_dbm;
        CHECK(out.records[i].rsrp_dbm.value() == truth); // bit-exact
    }
}

TEST_CASE("same seed gives bit-identical noise, different seed differs", "[synth]") {
    const geo::BsSiteConfig site = test_site();
    const antenna::AntennaPattern iso = antenna::isotropic_pattern();
    const FlightLog positions = sample_positions(site);

    const SynthConfig cfg{3.0, 42, std::nullopt};
    const FlightLog a = synthesize_measurements(positions, site, iso, cfg);
    const FlightLog b = synthesize_measurements(positions, site, iso, cfg);
    const FlightLog c = synthesize_measurements(positions, site, iso, {3.0, 43, std::nullopt});

    REQUIRE(a.size() == b.size());
    bool any_differs_from_c = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.records[i].rsrp_dbm.value() == b.records[i].rsrp_dbm.value());
        if (a.records[i].rsrp_dbm.value() != c.records[i].rsrp_dbm.value())
            any_differs_from_c = true;
    }
    CHECK(any_differs_from_c);
}

TEST_CASE("noise statistics match the configured sigma", "[synth]") {
    const geo::BsSiteConfig site = test_site();
    const antenna::AntennaPattern iso = antenna::isotropic_pattern();

    FlightLog positions;
    KpiRecord rec;
    rec.position = geo::enu_to_geodetic({500.0, 500.0, 100.0}, site.position);
    positions.records.assign(100000, rec);

    const double truth = linkbudget::predict_rsrp(site, iso, rec.position).rsrp_dbm;
    const FlightLog out = synthesize_measurements(positions, site, iso, {5.0, 7, std::nullopt});

    double mean = 0.0;
    for (const auto &r : out.records)
        mean += (r.rsrp_dbm.value() - truth);
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (const auto &r : out.records) {
        const double d = r.rsrp_dbm.value() - truth - mean;
        var += d * d;
    }
    var /= static_cast<double>(out.size() - 1);

    CHECK(std::abs(mean) < 0.15);
    CHECK(std::sqrt(var) == Approx(5.0).margin(0.1));
}

TEST_CASE("rank plane plants labels consistent with the link geometry", "[synth]") {
    const geo::BsSiteConfig site = test_site();
    const antenna::AntennaPattern iso = antenna::isotropic_pattern();

    // an eastbound leg whose plane score flips sign around d ~ 370 m
    TrajectorySpec leg;
    leg.pattern = "waypoints";
    leg.vertices = {{150.0, 0.0}, {900.0, 0.0}};
    leg.altitude_m = 60.0;
    const FlightLog positions = generate_trajectory(leg, site);

    RankPlane plane;
    plane.c_d = 0.0475;
    plane.c_azimuth = -0.1051;
    plane.c_elevation = -0.0892;
    plane.intercept = -15.549;

    SynthConfig cfg{0.0, 1, plane};
    const FlightLog out = synthesize_measurements(positions, site, iso, cfg);

    int n1 = 0, n4 = 0;
    for (const auto &r : out.records) {
        REQUIRE(r.rank.has_value());
        const geo::RelativeGeometry g = geo::relative_geometry(r.position, site);
        const double score = plane.c_d * g.d_uav_m + plane.c_azimuth * g.azimuth_deg +
                             plane.c_elevation * g.elevation_deg + plane.intercept;
        const int expected = score >= 0.0 ? 1 : 4;
        CHECK(r.rank.value() == expected);
        (r.rank.value() == 1 ? n1 : n4)++;
    }
    // the sample leg straddles the plane, so both labels must appear
    CHECK(n1 > 0);
    CHECK(n4 > 0);
}

TEST_CASE("degenerate rows survive with the measurement left missing", "[synth]") {
    const geo::BsSiteConfig site = test_site();
    const antenna::AntennaPattern iso = antenna::isotropic_pattern();

    FlightLog positions;
    KpiRecord ok_row;
    ok_row.timestamp_s = 0.0;
    ok_row.position = geo::enu_to_geodetic({100.0, 0.0, 40.0}, site.position);
    KpiRecord degenerate;
    degenerate.timestamp_s = 1.0;
    degenerate.position = site.position;
    KpiRecord ok_row2;
    ok_row2.timestamp_s = 2.0;
    ok_row2.position = geo::enu_to_geodetic({-50.0, 80.0, 40.0}, site.position);
    positions.records = {ok_row, degenerate, ok_row2};

    const FlightLog out = synthesize_measurements(positions, site, iso, {2.0, 11, std::nullopt});
    REQUIRE(out.size() == 3);
    CHECK(out.records[0].rsrp_dbm.has_value());
    CHECK_FALSE(out.records[1].rsrp_dbm.has_value());
    CHECK(out.records[2].rsrp_dbm.has_value());

    // the noise stream is positional: replacing the degenerate row leaves
    // every other row's sample unchanged
    FlightLog positions2 = positions;
    positions2.records[1].position = geo::enu_to_geodetic({10.0, 10.0, 10.0}, site.position);
    const FlightLog out2 = synthesize_measurements(positions2, site, iso, {2.0, 11, std::nullopt});
    CHECK(out2.records[0].rsrp_dbm.value() == out.records[0].rsrp_dbm.value());
    CHECK(out2.records[1].rsrp_dbm.has_value());
    CHECK(out2.records[2].rsrp_dbm.value() == out.records[2].rsrp_dbm.value());
}

TEST_CASE("negative noise sigma is rejected", "[synth]") {
    const geo::BsSiteConfig site = test_site();
    CHECK_THROWS_AS(
        synthesize_measurements(FlightLog{}, site, antenna::isotropic_pattern(),
                                {-1.0, 0, std::nullopt}),
        DomainError);
}
