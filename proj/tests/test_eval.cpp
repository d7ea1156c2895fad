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
#include <optional>

#include "aglink/eval.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace aglink;

namespace {

const geo::GeoPosition kOrigin{35.72, -78.70, 100.0};

/// Place a record at an east/north offset from kOrigin.
data::KpiRecord record_at(double t, double east_m, double north_m,
                          std::optional<double> rsrp = std::nullopt) {
    data::KpiRecord rec;
    rec.timestamp_s = t;
    rec.position = geo::enu_to_geodetic({east_m, north_m, 0.0}, kOrigin);
    rec.rsrp_dbm = rsrp;
    return rec;
}

data::FlightLog log_from(std::vector<data::KpiRecord> records) {
    data::FlightLog log;
    log.records = std::move(records);
    return log;
}

} // namespace

TEST_CASE("metrics: symmetric two-sample example", "[eval]") {
    const auto r = eval::metrics({-100.0, -100.0}, {-97.0, -103.0});
    CHECK(r.mae_db == Approx(3.0));
    CHECK(r.rmse_db == Approx(3.0));
    CHECK(r.mape_pct == Approx(3.0));
    CHECK(std::isnan(r.r2)); // zero target variance
    CHECK(r.n == 2);
}

TEST_CASE("metrics: worked example with target variance", "[eval]") {
    const auto r = eval::metrics({-90.0, -100.0}, {-92.0, -97.0});
    CHECK(r.mae_db == Approx(2.5));
    CHECK(r.rmse_db == Approx(std::sqrt(6.5)));
    CHECK(r.mape_pct == Approx(100.0 * (2.0 / 90.0 + 3.0 / 100.0) / 2.0));
    CHECK(r.r2 == Approx(1.0 - 13.0 / 50.0));
}

TEST_CASE("metrics agree with a naive reference loop", "[eval]") {
    oracles::Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> measured, predicted;
        for (int i = 0; i < 1000; ++i) {
            measured.push_back(rng.uniform(-120.0, -60.0));
            predicted.push_back(measured.back() + rng.normal(0.0, 4.0));
        }
        const auto got = eval::metrics(measured, predicted);
        const auto want = oracles::naive_metrics(measured, predicted);
        CHECK(got.mae_db == Approx(want.mae).margin(1e-12));
        CHECK(got.rmse_db == Approx(want.rmse).margin(1e-12));
        CHECK(got.mape_pct == Approx(want.mape).margin(1e-12));
        CHECK(got.r2 == Approx(want.r2).margin(1e-12));
        CHECK(got.mae_db <= got.rmse_db); // Jensen: |.| vs sqrt of mean square
    }
}

TEST_CASE("metrics: mean predictor scores exactly R2 = 0", "[eval]") {
    oracles::Rng rng(22);
    std::vector<double> measured;
    for (int i = 0; i < 257; ++i)
        measured.push_back(rng.uniform(-110.0, -70.0));
    double sum = 0.0;
    for (double m : measured)
        sum += m;
    const double mean = sum / static_cast<double>(measured.size());
    const std::vector<double> predicted(measured.size(), mean);
    CHECK(eval::metrics(measured, predicted).r2 == 0.0);
}

TEST_CASE("metrics input validation", "[eval]") {
    CHECK_THROWS_AS(eval::metrics({-100.0}, {-100.0, -99.0}), LengthMismatch);
    CHECK_THROWS_AS(eval::metrics({}, {}), LengthMismatch);
    CHECK_THROWS_AS(eval::metrics({-100.0, 0.0}, {-100.0, -1.0}), DomainError);
}

TEST_CASE("error histogram bins anchor at integer multiples of the width", "[eval]") {
    const std::vector<double> errors = {-0.5, 0.3, 0.7, 1.2, 2.9};
    const auto h = eval::error_histogram(errors, 1.0);
    REQUIRE(h.counts.size() == 4);
    REQUIRE(h.bin_edges.size() == 5);
    CHECK(h.bin_edges[0] == Approx(-1.0));
    CHECK(h.bin_edges[1] == Approx(0.0));
    CHECK(h.bin_edges[4] == Approx(3.0));
    CHECK(h.counts[0] == 1); // [-1, 0)
    CHECK(h.counts[1] == 2); // [0, 1)
    CHECK(h.counts[2] == 1);
    CHECK(h.counts[3] == 1);
    CHECK(h.fitted_mean_db == Approx(0.92));
    CHECK(h.fitted_std_db == Approx(std::sqrt(6.448 / 4.0)));

    const auto half = eval::error_histogram(errors, 0.5);
    CHECK(half.counts.size() == 7); // floor(e/0.5) spans -1..5
    CHECK(half.bin_edges.front() == Approx(-0.5));
    CHECK(half.bin_edges.back() == Approx(3.0));

    // a value exactly on an edge belongs to the right-open bin above it
    const auto edge = eval::error_histogram({0.0, 1.0}, 1.0);
    REQUIRE(edge.counts.size() == 2);
    CHECK(edge.counts[0] == 1);
    CHECK(edge.counts[1] == 1);

    const auto single = eval::error_histogram({2.3});
    CHECK(single.counts == std::vector<std::size_t>{1});
    CHECK(single.fitted_std_db == 0.0);
}

TEST_CASE("histogram moment fit recovers a planted Gaussian", "[eval]") {
    oracles::Rng rng(23);
    std::vector<double> errors;
    for (int i = 0; i < 20000; ++i)
        errors.push_back(rng.normal(-2.0, 3.0));
    const auto h = eval::error_histogram(errors, 1.0);
    CHECK(h.fitted_mean_db == Approx(-2.0).margin(0.1));
    CHECK(h.fitted_std_db == Approx(3.0).margin(0.1));
    std::size_t total = 0;
    for (auto c : h.counts)
        total += c;
    CHECK(total == errors.size());
}

TEST_CASE("error histogram input validation", "[eval]") {
    CHECK_THROWS_AS(eval::error_histogram({}), DomainError);
    CHECK_THROWS_AS(eval::error_histogram({1.0}, 0.0), DomainError);
    CHECK_THROWS_AS(eval::error_histogram({1.0}, -1.0), DomainError);
}

TEST_CASE("altitude comparison pairs by position when routes overlap", "[eval]") {
    std::vector<data::KpiRecord> low, high;
    for (int i = 0; i < 20; ++i) {
        low.push_back(record_at(i, 30.0 * i, 0.0, -90.0 - i));
        high.push_back(record_at(i, 30.0 * i, 0.0, -92.0 - i)); // exactly 2 dB weaker
    }
    const auto cmp = eval::compare_altitudes(log_from(low), log_from(high), "rsrp_dbm");
    CHECK(cmp.alignment == "position");
    CHECK(cmp.n_pairs == 20);
    CHECK(cmp.mean_diff == Approx(2.0));
    CHECK(cmp.std_diff == Approx(0.0).margin(1e-9));
    CHECK(cmp.pct_greater == Approx(100.0));
    CHECK_FALSE(cmp.pct_equal.has_value()); // RSRP is not integer-valued
    CHECK(cmp.kpi == "rsrp_dbm");
}

TEST_CASE("altitude comparison tolerates small lateral offsets", "[eval]") {
    std::vector<data::KpiRecord> low, high;
    for (int i = 0; i < 15; ++i) {
        low.push_back(record_at(i, 40.0 * i, 0.0, -90.0));
        high.push_back(record_at(i, 40.0 * i + 10.0, 0.0, -95.0)); // 10 m < 15 m gate
    }
    const auto cmp = eval::compare_altitudes(log_from(low), log_from(high), "rsrp_dbm");
    CHECK(cmp.alignment == "position");
    CHECK(cmp.n_pairs == 15);
    CHECK(cmp.mean_diff == Approx(5.0));
}

TEST_CASE("altitude comparison falls back to elapsed-time alignment", "[eval]") {
    // high-altitude route flown 1 km away and on a different clock
    std::vector<data::KpiRecord> low, high;
    for (int i = 0; i < 12; ++i)
        low.push_back(record_at(i, 20.0 * i, 0.0, 5.0 + i));
    for (int i = 0; i < 12; ++i)
        high.push_back(record_at(100.0 + 7.0 * i, 20.0 * i, 1000.0, static_cast<double>(i)));
    const auto cmp = eval::compare_altitudes(log_from(low), log_from(high), "rsrp_dbm");
    CHECK(cmp.alignment == "time");
    CHECK(cmp.n_pairs == 12);
    // evenly spaced clocks map i-th low row onto i-th high row
    CHECK(cmp.mean_diff == Approx(5.0));
    CHECK(cmp.std_diff == Approx(0.0).margin(1e-9));
}

TEST_CASE("altitude comparison reports equality share for integer KPIs", "[eval]") {
    std::vector<data::KpiRecord> low, high;
    for (int i = 0; i < 10; ++i) {
        auto l = record_at(i, 25.0 * i, 0.0);
        l.cqi = 10;
        auto h = record_at(i, 25.0 * i, 0.0);
        h.cqi = (i < 4) ? 10 : 9; // 4 equal, 6 lower
        low.push_back(l);
        high.push_back(h);
    }
    const auto cmp = eval::compare_altitudes(log_from(low), log_from(high), "cqi");
    CHECK(cmp.n_pairs == 10);
    REQUIRE(cmp.pct_equal.has_value());
    CHECK(*cmp.pct_equal == Approx(40.0));
    CHECK(cmp.pct_greater == Approx(60.0));
    CHECK(cmp.mean_diff == Approx(0.6));
}

TEST_CASE("altitude comparison error handling", "[eval]") {
    std::vector<data::KpiRecord> five, twelve;
    for (int i = 0; i < 5; ++i)
        five.push_back(record_at(i, 10.0 * i, 0.0, -90.0));
    for (int i = 0; i < 12; ++i)
        twelve.push_back(record_at(i, 10.0 * i, 0.0, -90.0));

    CHECK_THROWS_AS(eval::compare_altitudes(log_from(five), log_from(twelve), "rsrp_dbm"),
                    NoOverlap); // only 5 pairs possible
    CHECK_THROWS_AS(eval::compare_altitudes(log_from({}), log_from(twelve), "rsrp_dbm"),
                    NoOverlap);
    CHECK_THROWS_AS(eval::compare_altitudes(log_from(twelve), log_from(twelve), "bogus"),
                    UnknownKpi);
}

TEST_CASE("heatmap averages the KPI on a square ENU grid", "[eval]") {
    std::vector<data::KpiRecord> rows = {
        record_at(0, 10.0, 10.0, -80.0),  record_at(1, 20.0, 40.0, -90.0),
        record_at(2, 60.0, 10.0, -70.0),  record_at(3, -10.0, -10.0, -60.0),
        record_at(4, 30.0, 30.0), // no KPI: must not count
    };
    const auto grid = eval::heatmap(log_from(rows), "rsrp_dbm", 50.0, kOrigin);
    CHECK(grid.bin_m == 50.0);
    CHECK(grid.total_samples == 4);
    REQUIRE(grid.cells.size() == 3);

    const auto &c00 = grid.cells.at({0, 0});
    CHECK(c00.first == Approx(-85.0)); // mean of -80 and -90
    CHECK(c00.second == 2);
    CHECK(grid.cells.at({1, 0}).first == Approx(-70.0));
    CHECK(grid.cells.at({-1, -1}).first == Approx(-60.0));
}

TEST_CASE("heatmap defaults its origin to the first record", "[eval]") {
    // second record 30 m east and nudged 5 m north of the first: the frame is
    // anchored at the first record, so sitting exactly on a bin edge would
    // leave the cell at the mercy of millimeter-level frame convergence
    std::vector<data::KpiRecord> rows = {record_at(0, 500.0, 500.0, -80.0),
                                         record_at(1, 530.0, 505.0, -90.0)};
    const auto grid = eval::heatmap(log_from(rows), "rsrp_dbm", 20.0);
    CHECK(grid.cells.count({0, 0}) == 1); // first record sits in its own bin
    CHECK(grid.cells.count({1, 0}) == 1); // 30 m east of it
    CHECK(grid.total_samples == 2);
}

TEST_CASE("heatmap input validation", "[eval]") {
    const auto log = log_from({record_at(0, 0.0, 0.0, -80.0)});
    CHECK_THROWS_AS(eval::heatmap(log, "bogus", 10.0, kOrigin), UnknownKpi);
    CHECK_THROWS_AS(eval::heatmap(log_from({}), "rsrp_dbm", 10.0, kOrigin), DomainError);
    CHECK_THROWS_AS(eval::heatmap(log, "rsrp_dbm", 0.0, kOrigin), DomainError);
}

TEST_CASE("RSRQ poor-quality flags use a strict -15 dB threshold", "[eval]") {
    std::vector<data::KpiRecord> rows;
    auto with_rsrq = [&](double t, double rsrq) {
        auto rec = record_at(t, t, 0.0);
        rec.rsrq_db = rsrq;
        rows.push_back(rec);
    };
    with_rsrq(0, -14.9);
    with_rsrq(1, -15.0);
    with_rsrq(2, -15.1);
    rows.push_back(record_at(3, 3.0, 0.0, -90.0)); // no RSRQ: skipped

    const auto flags = eval::rsrq_poor_flags(log_from(rows));
    REQUIRE(flags.size() == 3);
    CHECK(flags[0] == std::pair{0.0, false});
    CHECK(flags[1] == std::pair{1.0, false}); // exactly -15 is not "poor"
    CHECK(flags[2] == std::pair{2.0, true});

    CHECK_THROWS_AS(eval::rsrq_poor_flags(log_from({record_at(0, 0.0, 0.0, -90.0)})),
                    MissingColumn);
}

TEST_CASE("report tables render human-readable columns", "[eval]") {
    eval::EvalReport r;
    r.mae_db = 3.25;
    r.rmse_db = 4.5;
    r.mape_pct = 3.1;
    r.r2 = std::numeric_limits<double>::quiet_NaN();
    r.n = 128;
    const std::string table = eval::render_metrics_table({{"poly-3", r}});
    CHECK(table.find("MAE [dB]") != std::string::npos);
    CHECK(table.find("poly-3") != std::string::npos);
    CHECK(table.find("3.25") != std::string::npos);
    CHECK(table.find("n/a") != std::string::npos); // NaN R2 prints as n/a

    eval::AltitudeComparison c;
    c.kpi = "rsrp_dbm";
    c.mean_diff = 1.5;
    c.n_pairs = 40;
    c.alignment = "position";
    const std::string alt = eval::render_altitude_table({c});
    CHECK(alt.find("rsrp_dbm") != std::string::npos);
    CHECK(alt.find("position") != std::string::npos);
    CHECK(alt.find("1.50") != std::string::npos);
}
