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

#include <set>

#include "aglink/linkbudget.hpp"
#include "aglink/models/polynomial.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace aglink;
using namespace aglink::models;

namespace {

using Row = std::pair<FeatureVector, double>;

std::vector<Row> planted_rows(const std::vector<Monomial> &monomials,
                              const std::vector<double> &coeffs, std::size_t n,
                              oracles::Rng &rng, double d_lo, double d_hi) {
    std::vector<Row> rows;
    rows.reserve(n);
    std::vector<std::array<int, 3>> mono(monomials.begin(), monomials.end());
    for (std::size_t r = 0; r < n; ++r) {
        FeatureVector f;
        f.distance_feature = rng.uniform(d_lo, d_hi);
        f.elevation_deg = rng.uniform(0.0, 90.0);
        f.azimuth_deg = rng.uniform(-180.0, 180.0);
        const double y = oracles::brute_force_poly_eval(mono, coeffs, f.distance_feature,
                                                        f.elevation_deg, f.azimuth_deg);
        rows.push_back({f, y});
    }
    return rows;
}

} // namespace

TEST_CASE("monomial expansion matches the closed-form count", "[polynomial]") {
    for (int degree = 0; degree <= 9; ++degree) {
        const auto monomials = expand_monomials(degree);
        // C(degree+3, 3)
        const std::size_t expected =
            static_cast<std::size_t>((degree + 1) * (degree + 2) * (degree + 3) / 6);
        CHECK(monomials.size() == expected);
        CHECK(monomials.size() ==
              static_cast<std::size_t>(oracles::brute_force_monomial_count(degree)));

        std::set<Monomial> unique(monomials.begin(), monomials.end());
        CHECK(unique.size() == monomials.size());
        for (const auto &m : monomials)
            CHECK(m[0] + m[1] + m[2] <= degree);
    }
    CHECK(expand_monomials(0) == std::vector<Monomial>{{0, 0, 0}});
    CHECK(expand_monomials(1) ==
          std::vector<Monomial>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(expand_monomials(-1), DomainError);
}

TEST_CASE("degree-0 fit is the sample mean", "[polynomial]") {
    std::vector<Row> rows;
    for (int i = 0; i < 8; ++i)
        rows.push_back({{static_cast<double>(i), 1.0, -2.0}, -100.0});
    const PolyModel m = fit_polynomial(rows, 0, DistanceTransform::linear);
    REQUIRE(m.coefficients.size() == 1);
    CHECK(m.coefficients[0] == Approx(-100.0).margin(1e-12));
    CHECK(predict_polynomial(m, 123.0, 45.0, -10.0) == Approx(-100.0).margin(1e-12));
}

TEST_CASE("planted degree-2 surface is recovered exactly", "[polynomial]") {
    const auto monomials = expand_monomials(2);
    oracles::Rng rng(17);
    std::vector<double> coeffs;
    for (std::size_t t = 0; t < monomials.size(); ++t)
        coeffs.push_back(rng.uniform(-2.0, 2.0));

    // modest feature ranges keep the raw Vandermonde well conditioned
    std::vector<Row> rows;
    for (int r = 0; r < 200; ++r) {
        FeatureVector f{rng.uniform(0.0, 10.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        std::vector<std::array<int, 3>> mono(monomials.begin(), monomials.end());
        rows.push_back({f, oracles::brute_force_poly_eval(mono, coeffs, f.distance_feature,
                                                          f.elevation_deg, f.azimuth_deg)});
    }
    const PolyModel m = fit_polynomial(rows, 2, DistanceTransform::linear);
    CHECK_FALSE(m.standardized);
    REQUIRE(m.coefficients.size() == coeffs.size());
    for (std::size_t t = 0; t < coeffs.size(); ++t)
        CHECK(m.coefficients[t] == Approx(coeffs[t]).margin(1e-8));
}

TEST_CASE("planted degree-3 log-distance surface is recovered", "[polynomial]") {
    const auto monomials = expand_monomials(3);
    oracles::Rng rng(29);
    std::vector<double> coeffs;
    for (std::size_t t = 0; t < monomials.size(); ++t) {
        const auto &[i, j, k] = monomials[t];
        // damp high-order angle terms so targets stay in a physical range
        coeffs.push_back(rng.uniform(-1.0, 1.0) * std::pow(10.0, -(j + k)));
    }

    // distance enters as log10(d); plant on the transformed feature
    auto rows = planted_rows(monomials, coeffs, 500, rng, 2.0, 3.3);
    const PolyModel m = fit_polynomial(rows, 3, DistanceTransform::log10);
    CHECK_FALSE(m.standardized);
    for (std::size_t t = 0; t < coeffs.size(); ++t)
        CHECK(m.coefficients[t] == Approx(coeffs[t]).margin(1e-6));

    // held-out residual
    auto test_rows = planted_rows(monomials, coeffs, 100, rng, 2.0, 3.3);
    double sse = 0.0;
    for (const auto &[f, y] : test_rows) {
        const double e = predict_polynomial(m, f) - y;
        sse += e * e;
    }
    CHECK(std::sqrt(sse / test_rows.size()) < 1e-6);
}

TEST_CASE("first-order log-distance fit recovers the 20 dB/decade slope", "[polynomial]") {
    const double lambda = geo::kSpeedOfLight / 3.4e9;
    oracles::Rng rng(5);
    std::vector<Row> rows;
    for (int r = 0; r < 100; ++r) {
        const double d = rng.uniform(50.0, 4000.0);
        FeatureVector f{std::log10(d), rng.uniform(0.0, 60.0), rng.uniform(-120.0, 120.0)};
        rows.push_back({f, 1.8366 - linkbudget::fspl_db(d, lambda)});
    }
    const PolyModel m = fit_polynomial(rows, 1, DistanceTransform::log10);
    REQUIRE(m.monomials.size() == 4);
    // order: intercept, azimuth, elevation, distance
    CHECK(m.coefficients[3] == Approx(-20.0).margin(1e-9));
    CHECK(m.coefficients[1] == Approx(0.0).margin(1e-9));
    CHECK(m.coefficients[2] == Approx(0.0).margin(1e-9));
}

TEST_CASE("underdetermined and collinear designs are rejected", "[polynomial]") {
    oracles::Rng rng(31);
    // 9 rows < 10 unknowns at degree 2
    std::vector<Row> few;
    for (int r = 0; r < 9; ++r)
        few.push_back({{rng.uniform(0.0, 10.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)},
                       rng.uniform(-100.0, -60.0)});
    CHECK_THROWS_AS(fit_polynomial(few, 2, DistanceTransform::linear), RankDeficient);

    // elevation duplicated into azimuth makes two columns identical
    std::vector<Row> collinear;
    for (int r = 0; r < 50; ++r) {
        const double ang = rng.uniform(-5.0, 5.0);
        collinear.push_back({{rng.uniform(0.0, 10.0), ang, ang}, rng.uniform(-100.0, -60.0)});
    }
    CHECK_THROWS_AS(fit_polynomial(collinear, 2, DistanceTransform::linear), RankDeficient);
}

TEST_CASE("degrees above 3 are fitted on z-scored features", "[polynomial]") {
    const auto target = [](const FeatureVector &f) {
        return -60.0 - 18.0 * f.distance_feature + 0.4 * f.elevation_deg -
               0.05 * f.elevation_deg * f.elevation_deg + 0.02 * f.azimuth_deg;
    };
    oracles::Rng rng(41);
    std::vector<Row> rows;
    for (int r = 0; r < 400; ++r) {
        FeatureVector f{rng.uniform(2.0, 3.3), rng.uniform(0.0, 90.0),
                        rng.uniform(-180.0, 180.0)};
        rows.push_back({f, target(f)});
    }
    const PolyModel m = fit_polynomial(rows, 5, DistanceTransform::log10);
    CHECK(m.standardized);
    CHECK(m.coefficients_standardized.size() == m.monomials.size());
    CHECK(m.scaling.std[0] > 0.0);

    // the quadratic target lies in the degree-5 span: held-out error ~ 0
    for (int r = 0; r < 50; ++r) {
        FeatureVector f{rng.uniform(2.0, 3.3), rng.uniform(0.0, 90.0),
                        rng.uniform(-180.0, 180.0)};
        CHECK(predict_polynomial(m, f) == Approx(target(f)).margin(1e-5));
    }

    // raw-space coefficients from the binomial expansion describe the same
    // surface (looser margin: expanding around large means loses digits)
    for (int r = 0; r < 50; ++r) {
        FeatureVector f{rng.uniform(2.0, 3.3), rng.uniform(0.0, 90.0),
                        rng.uniform(-180.0, 180.0)};
        const double via_raw = oracles::brute_force_poly_eval(
            std::vector<std::array<int, 3>>(m.monomials.begin(), m.monomials.end()),
            m.coefficients, f.distance_feature, f.elevation_deg, f.azimuth_deg);
        CHECK(via_raw == Approx(predict_polynomial(m, f)).margin(1e-3));
    }
}

TEST_CASE("feature construction guards its domain", "[polynomial]") {
    CHECK_THROWS_AS(make_features(0.0, 10.0, 10.0, DistanceTransform::log10), DomainError);
    CHECK_THROWS_AS(make_features(-5.0, 10.0, 10.0, DistanceTransform::log10), DomainError);
    CHECK_NOTHROW(make_features(-5.0, 10.0, 10.0, DistanceTransform::linear));
    CHECK_THROWS_AS(make_features(100.0, std::nan(""), 0.0, DistanceTransform::linear),
                    NonFinite);
    const FeatureVector f = make_features(100.0, 5.0, -7.0, DistanceTransform::log10);
    CHECK(f.distance_feature == Approx(2.0));
    CHECK(f.elevation_deg == 5.0);
    CHECK(f.azimuth_deg == -7.0);
}

TEST_CASE("distance transform names round trip", "[polynomial]") {
    CHECK(to_string(DistanceTransform::linear) == "linear");
    CHECK(to_string(DistanceTransform::log10) == "log10");
    CHECK(distance_transform_from_string("linear") == DistanceTransform::linear);
    CHECK(distance_transform_from_string("log10") == DistanceTransform::log10);
    CHECK_THROWS_AS(distance_transform_from_string("sqrt"), BadSpec);
}
