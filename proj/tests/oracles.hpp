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
//
// Independent reference implementations used to validate library output.
// These deliberately share no code with the library.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracles {

/// Vincenty inverse geodesic distance on the WGS-84 ellipsoid, in meters.
/// Classic iterative formulation, accurate to well under a millimeter.
inline double vincenty_distance_m(double lat1_deg, double lon1_deg, double lat2_deg,
                                  double lon2_deg) {
    constexpr double a = 6378137.0;
    constexpr double f = 1.0 / 298.257223563;
    constexpr double b = a * (1.0 - f);
    constexpr double deg = M_PI / 180.0;

    const double u1 = std::atan((1.0 - f) * std::tan(lat1_deg * deg));
    const double u2 = std::atan((1.0 - f) * std::tan(lat2_deg * deg));
    const double el = (lon2_deg - lon1_deg) * deg;
    const double su1 = std::sin(u1), cu1 = std::cos(u1);
    const double su2 = std::sin(u2), cu2 = std::cos(u2);

    double lambda = el;
    double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
    double cos2_alpha = 0.0, cos_2sm = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double sl = std::sin(lambda), cl = std::cos(lambda);
        sin_sigma = std::sqrt((cu2 * sl) * (cu2 * sl) +
                              (cu1 * su2 - su1 * cu2 * cl) * (cu1 * su2 - su1 * cu2 * cl));
        if (sin_sigma == 0.0)
            return 0.0; // coincident points
        cos_sigma = su1 * su2 + cu1 * cu2 * cl;
        sigma = std::atan2(sin_sigma, cos_sigma);
        const double sin_alpha = cu1 * cu2 * sl / sin_sigma;
        cos2_alpha = 1.0 - sin_alpha * sin_alpha;
        cos_2sm = cos2_alpha != 0.0 ? cos_sigma - 2.0 * su1 * su2 / cos2_alpha : 0.0;
        const double c = f / 16.0 * cos2_alpha * (4.0 + f * (4.0 - 3.0 * cos2_alpha));
        const double prev = lambda;
        lambda = el + (1.0 - c) * f * sin_alpha *
                          (sigma + c * sin_sigma *
                                       (cos_2sm + c * cos_sigma *
                                                      (-1.0 + 2.0 * cos_2sm * cos_2sm)));
        if (std::abs(lambda - prev) < 1e-13)
            break;
    }
    const double uu = cos2_alpha * (a * a - b * b) / (b * b);
    const double big_a =
        1.0 + uu / 16384.0 * (4096.0 + uu * (-768.0 + uu * (320.0 - 175.0 * uu)));
    const double big_b = uu / 1024.0 * (256.0 + uu * (-128.0 + uu * (74.0 - 47.0 * uu)));
    const double d_sigma =
        big_b * sin_sigma *
        (cos_2sm + big_b / 4.0 *
                       (cos_sigma * (-1.0 + 2.0 * cos_2sm * cos_2sm) -
                        big_b / 6.0 * cos_2sm * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                            (-3.0 + 4.0 * cos_2sm * cos_2sm)));
    return b * big_a * (sigma - d_sigma);
}

/// Naive loop metrics used as the reference for aglink::eval::metrics.
struct NaiveMetrics {
    double mae = 0.0, rmse = 0.0, mape = 0.0, r2 = 0.0;
};

inline NaiveMetrics naive_metrics(const std::vector<double> &measured,
                                  const std::vector<double> &predicted) {
    if (measured.size() != predicted.size() || measured.empty())
        throw std::invalid_argument("naive_metrics: bad inputs");
    NaiveMetrics m;
    const double n = static_cast<double>(measured.size());
    double mean = 0.0;
    for (double v : measured)
        mean += v;
    mean /= n;
    double sse = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const double e = measured[i] - predicted[i];
        m.mae += std::abs(e) / n;
        m.rmse += e * e;
        m.mape += 100.0 * std::abs(e) / std::abs(measured[i]) / n;
        sse += e * e;
        sst += (measured[i] - mean) * (measured[i] - mean);
    }
    m.rmse = std::sqrt(m.rmse / n);
    m.r2 = 1.0 - sse / sst;
    return m;
}

/// Count of exponent triples with i + j + k <= degree, by brute force over a
/// cube of candidates.
inline int brute_force_monomial_count(int degree) {
    int count = 0;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= degree; ++j)
            for (int k = 0; k <= degree; ++k)
                if (i + j + k <= degree)
                    ++count;
    return count;
}

/// Term-by-term polynomial evaluation with std::pow (no shared code with the
/// library's evaluator).
inline double brute_force_poly_eval(const std::vector<std::array<int, 3>> &monomials,
                                    const std::vector<double> &coeffs, double x0, double x1,
                                    double x2) {
    double acc = 0.0;
    for (std::size_t t = 0; t < monomials.size(); ++t)
        acc += coeffs[t] * std::pow(x0, monomials[t][0]) * std::pow(x1, monomials[t][1]) *
               std::pow(x2, monomials[t][2]);
    return acc;
}

/// Deterministic 64-bit generator for test data, independent of the library.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 1) {}
    std::uint64_t next_u64() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
    }
    /// Box-Muller normal deviate.
    double normal(double mean, double std) {
        const double u1 = uniform(1e-12, 1.0);
        const double u2 = uniform(0.0, 1.0);
        return mean + std * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
};

} // namespace oracles
