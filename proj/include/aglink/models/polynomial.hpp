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
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aglink/errors.hpp"
#include "aglink/models/features.hpp"

namespace aglink::models {

/// Exponent triple (i, j, k) for distance^i · elevation^j · azimuth^k.
using Monomial = std::array<int, 3>;

/// All exponent triples with i + j + k <= degree, in lexicographic order.
/// The count is C(degree+3, 3).
inline std::vector<Monomial> expand_monomials(int degree) {
    if (degree < 0)
        throw DomainError("polynomial degree must be >= 0");
    std::vector<Monomial> out;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= degree - i; ++j)
            for (int k = 0; k <= degree - i - j; ++k)
                out.push_back({i, j, k});
    return out;
}

/// Per-feature z-score parameters used to condition high-degree fits.
struct FeatureScaling {
    std::array<double, 3> mean = {0.0, 0.0, 0.0};
    std::array<double, 3> std = {1.0, 1.0, 1.0};
};

/// Multivariate polynomial RSRP predictor. `coefficients` are always in raw
/// feature space (one per monomial, same order as expand_monomials); fits
/// above degree 3 additionally keep the standardized-space coefficients the
/// solver actually produced, and prediction uses those for stability.
struct PolyModel {
    int degree = 2;
    DistanceTransform distance_transform = DistanceTransform::log10;
    std::vector<Monomial> monomials;
    std::vector<double> coefficients; // raw feature space
    bool standardized = false;
    FeatureScaling scaling;
    std::vector<double> coefficients_standardized; // empty unless standardized
};

namespace detail {

inline double binom(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int t = 1; t <= k; ++t)
        r = r * (n - k + t) / t;
    return r;
}

inline double ipow(double x, int e) {
    double r = 1.0;
    for (int t = 0; t < e; ++t)
        r *= x;
    return r;
}

inline double eval_terms(const std::vector<Monomial> &monomials,
                         const std::vector<double> &coeffs, double x0, double x1, double x2) {
    double acc = 0.0;
    for (std::size_t t = 0; t < monomials.size(); ++t)
        acc += coeffs[t] * ipow(x0, monomials[t][0]) * ipow(x1, monomials[t][1]) *
               ipow(x2, monomials[t][2]);
    return acc;
}

/// Expand coefficients over z-scored features into raw-feature coefficients:
/// ((x - mu)/sigma)^e = sigma^-e * sum_a C(e,a) x^a (-mu)^(e-a).
inline std::vector<double> destandardize(const std::vector<Monomial> &monomials,
                                         const std::vector<double> &std_coeffs,
                                         const FeatureScaling &sc) {
    std::map<Monomial, double> raw;
    for (std::size_t t = 0; t < monomials.size(); ++t) {
        const auto [i, j, k] = monomials[t];
        const double scale =
            std_coeffs[t] / (ipow(sc.std[0], i) * ipow(sc.std[1], j) * ipow(sc.std[2], k));
        for (int a = 0; a <= i; ++a)
            for (int b = 0; b <= j; ++b)
                for (int c = 0; c <= k; ++c) {
                    const double w = scale * binom(i, a) * binom(j, b) * binom(k, c) *
                                     ipow(-sc.mean[0], i - a) * ipow(-sc.mean[1], j - b) *
                                     ipow(-sc.mean[2], k - c);
                    raw[{a, b, c}] += w;
                }
    }
    std::vector<double> out(monomials.size(), 0.0);
    for (std::size_t t = 0; t < monomials.size(); ++t)
        if (auto it = raw.find(monomials[t]); it != raw.end())
            out[t] = it->second;
    return out;
}

} // namespace detail

/// Least-squares polynomial fit via column-pivoted QR. Degrees above 3 are
/// fitted on z-scored features to keep the design matrix conditioned; the
/// reported raw-space coefficients are recovered by binomial expansion.
inline PolyModel fit_polynomial(const std::vector<std::pair<FeatureVector, double>> &data,
                                int degree, DistanceTransform transform) {
    PolyModel model;
    model.degree = degree;
    model.distance_transform = transform;
    model.monomials = expand_monomials(degree);
    const std::size_t p = model.monomials.size();
    const std::size_t n = data.size();
    if (n < p)
        throw RankDeficient("need at least " + std::to_string(p) + " rows for degree " +
                            std::to_string(degree) + ", got " + std::to_string(n));

    model.standardized = degree > 3;
    if (model.standardized) {
        std::array<double, 3> sum = {0, 0, 0}, sq = {0, 0, 0};
        for (const auto &[f, y] : data) {
            const std::array<double, 3> x = {f.distance_feature, f.elevation_deg, f.azimuth_deg};
            for (int c = 0; c < 3; ++c) {
                sum[c] += x[c];
                sq[c] += x[c] * x[c];
            }
        }
        for (int c = 0; c < 3; ++c) {
            model.scaling.mean[c] = sum[c] / n;
            const double var =
                n > 1 ? (sq[c] - sum[c] * sum[c] / n) / (static_cast<double>(n) - 1) : 0.0;
            model.scaling.std[c] = var > 0.0 ? std::sqrt(var) : 1.0;
        }
    }

    Eigen::MatrixXd A(n, p);
    Eigen::VectorXd b(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto &[f, y] = data[r];
        std::array<double, 3> x = {f.distance_feature, f.elevation_deg, f.azimuth_deg};
        if (model.standardized)
            for (int c = 0; c < 3; ++c)
                x[c] = (x[c] - model.scaling.mean[c]) / model.scaling.std[c];
        for (std::size_t t = 0; t < p; ++t)
            A(r, t) = detail::ipow(x[0], model.monomials[t][0]) *
                      detail::ipow(x[1], model.monomials[t][1]) *
                      detail::ipow(x[2], model.monomials[t][2]);
        b(r) = y;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    const auto diag = qr.matrixR().diagonal().cwiseAbs().eval();
    const double dmax = diag.maxCoeff();
    const double dmin = diag.minCoeff();
    if (qr.rank() < static_cast<Eigen::Index>(p) || dmin <= 0.0 || dmax / dmin > 1e12)
        throw RankDeficient("design matrix numerically singular (condition > 1e12)");
    const Eigen::VectorXd beta = qr.solve(b);

    std::vector<double> coeffs(beta.data(), beta.data() + p);
    if (model.standardized) {
        model.coefficients_standardized = coeffs;
        model.coefficients = detail::destandardize(model.monomials, coeffs, model.scaling);
    } else {
        model.coefficients = std::move(coeffs);
    }
    return model;
}

/// Evaluate the polynomial at a feature vector (distance already transformed).
inline double predict_polynomial(const PolyModel &m, const FeatureVector &f) {
    if (m.standardized) {
        const double x0 = (f.distance_feature - m.scaling.mean[0]) / m.scaling.std[0];
        const double x1 = (f.elevation_deg - m.scaling.mean[1]) / m.scaling.std[1];
        const double x2 = (f.azimuth_deg - m.scaling.mean[2]) / m.scaling.std[2];
        return detail::eval_terms(m.monomials, m.coefficients_standardized, x0, x1, x2);
    }
    return detail::eval_terms(m.monomials, m.coefficients, f.distance_feature, f.elevation_deg,
                              f.azimuth_deg);
}

/// Evaluate at raw geometry, applying the model's distance transform.
inline double predict_polynomial(const PolyModel &m, double d_uav_m, double elevation_deg,
                                 double azimuth_deg) {
    return predict_polynomial(
        m, make_features(d_uav_m, elevation_deg, azimuth_deg, m.distance_transform));
}

} // namespace aglink::models
