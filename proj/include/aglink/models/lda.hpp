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
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "aglink/errors.hpp"

namespace aglink::models {

/// One labeled observation for the channel-rank classifier. Feature order is
/// (distance, azimuth, elevation) everywhere the plane is written out.
struct LdaPoint {
    double d_uav_m = 0.0;
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
    int rank = 1;
};

/// Two-class linear discriminant: score = w·(d, φ, θ) + bias; non-negative
/// scores map to class_for_positive_side.
struct LdaModel {
    std::array<double, 3> weights = {0, 0, 0}; // (w_d, w_azimuth, w_elevation)
    double bias = 0.0;
    int class_for_positive_side = 1;
    int class_for_negative_side = 4;
    bool ridge_applied = false; // pooled covariance needed regularization
};

/// Fit a two-class LDA with pooled within-class covariance and equal priors.
/// The weight vector points from the second class mean toward the first
/// (classes ordered by rank label ascending); the boundary bisects the
/// projected class means. A numerically singular covariance gets a ridge of
/// 1e-6·trace added once, reported via ridge_applied.
inline LdaModel fit_lda(const std::vector<LdaPoint> &points) {
    std::set<int> labels;
    for (const auto &p : points)
        labels.insert(p.rank);
    if (labels.size() != 2)
        throw DomainError("fit_lda requires exactly two distinct rank labels, got " +
                          std::to_string(labels.size()));
    const int first = *labels.begin();
    const int second = *labels.rbegin();

    Eigen::Vector3d mu1 = Eigen::Vector3d::Zero(), mu2 = Eigen::Vector3d::Zero();
    std::size_t n1 = 0, n2 = 0;
    for (const auto &p : points) {
        const Eigen::Vector3d x(p.d_uav_m, p.azimuth_deg, p.elevation_deg);
        if (p.rank == first) {
            mu1 += x;
            ++n1;
        } else {
            mu2 += x;
            ++n2;
        }
    }
    if (n1 < 2 || n2 < 2)
        throw DomainError("fit_lda requires at least 2 points per class");
    mu1 /= static_cast<double>(n1);
    mu2 /= static_cast<double>(n2);

    Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
    for (const auto &p : points) {
        const Eigen::Vector3d x(p.d_uav_m, p.azimuth_deg, p.elevation_deg);
        const Eigen::Vector3d c = x - (p.rank == first ? mu1 : mu2);
        scatter += c * c.transpose();
    }
    Eigen::Matrix3d cov = scatter / static_cast<double>(n1 + n2 - 2);

    LdaModel model;
    auto try_solve = [&](const Eigen::Matrix3d &s) -> bool {
        Eigen::FullPivLU<Eigen::Matrix3d> lu(s);
        if (!lu.isInvertible())
            return false;
        const Eigen::Vector3d w = lu.solve(mu1 - mu2);
        model.weights = {w(0), w(1), w(2)};
        model.bias = -0.5 * w.dot(mu1 + mu2);
        return true;
    };
    if (!try_solve(cov)) {
        const double ridge = 1e-6 * cov.trace();
        if (!(ridge > 0.0))
            throw SingularCovariance("pooled covariance is singular and has zero trace");
        model.ridge_applied = true;
        if (!try_solve(cov + ridge * Eigen::Matrix3d::Identity()))
            throw SingularCovariance("pooled covariance remains singular after ridge");
    }
    if (model.weights[0] == 0.0 && model.weights[1] == 0.0 && model.weights[2] == 0.0)
        throw SingularCovariance("degenerate discriminant: zero weight vector");

    model.class_for_positive_side = first;
    model.class_for_negative_side = second;
    return model;
}

/// Signed distance-like score of a point under the discriminant.
inline double lda_score(const LdaModel &m, double d_uav_m, double azimuth_deg,
                        double elevation_deg) {
    return m.weights[0] * d_uav_m + m.weights[1] * azimuth_deg + m.weights[2] * elevation_deg +
           m.bias;
}

/// Classify a point; a score of exactly zero goes to the positive side.
inline int classify_rank(const LdaModel &m, double d_uav_m, double azimuth_deg,
                         double elevation_deg) {
    return lda_score(m, d_uav_m, azimuth_deg, elevation_deg) >= 0.0
               ? m.class_for_positive_side
               : m.class_for_negative_side;
}

inline int classify_rank(const LdaModel &m, const LdaPoint &p) {
    return classify_rank(m, p.d_uav_m, p.azimuth_deg, p.elevation_deg);
}

} // namespace aglink::models
