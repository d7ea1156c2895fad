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

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "aglink/errors.hpp"
#include "aglink/models/features.hpp"

namespace aglink::models {

namespace detail {

/// Small deterministic PRNG (splitmix64), portable across standard libraries.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // bounded draw; modulo bias is irrelevant at the sizes used here
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

} // namespace detail

/// Binary regression tree node. Internal nodes split feature < threshold to
/// the left; leaves carry the mean target of their training rows.
struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    double leaf_value = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    bool is_leaf() const { return feature < 0; }
};

using TreePtr = std::unique_ptr<TreeNode>;

namespace detail {

constexpr std::size_t kMinLeafSize = 2;

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double sse = std::numeric_limits<double>::infinity();
};

inline double subset_mean(const std::vector<std::array<double, 3>> &x,
                          const std::vector<double> &y, const std::vector<std::size_t> &idx) {
    (void)x;
    double s = 0.0;
    for (std::size_t i : idx)
        s += y[i];
    return idx.empty() ? 0.0 : s / static_cast<double>(idx.size());
}

/// Exhaustive best split: every feature, midpoints between adjacent distinct
/// sorted values. Strictly-better comparison keeps the lowest feature index
/// and lowest threshold on ties.
inline SplitChoice best_split(const std::vector<std::array<double, 3>> &x,
                              const std::vector<double> &y,
                              const std::vector<std::size_t> &idx) {
    SplitChoice best;
    const std::size_t n = idx.size();
    if (n < 2 * kMinLeafSize)
        return best;

    std::vector<std::size_t> order(idx);
    for (int f = 0; f < 3; ++f) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return x[a][f] < x[b][f];
        });
        // prefix sums over the sorted order make each candidate O(1)
        std::vector<double> ps(n + 1, 0.0), pss(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            ps[i + 1] = ps[i] + y[order[i]];
            pss[i + 1] = pss[i] + y[order[i]] * y[order[i]];
        }
        for (std::size_t i = kMinLeafSize; i + kMinLeafSize <= n; ++i) {
            const double lo = x[order[i - 1]][f];
            const double hi = x[order[i]][f];
            if (!(hi > lo))
                continue; // same value — not a valid boundary
            const double nl = static_cast<double>(i);
            const double nr = static_cast<double>(n - i);
            const double sse_l = pss[i] - ps[i] * ps[i] / nl;
            const double sse_r = (pss[n] - pss[i]) - (ps[n] - ps[i]) * (ps[n] - ps[i]) / nr;
            const double sse = sse_l + sse_r;
            if (sse < best.sse) {
                best.sse = sse;
                best.feature = f;
                best.threshold = lo + 0.5 * (hi - lo);
            }
        }
    }
    return best;
}

inline TreePtr build_tree(const std::vector<std::array<double, 3>> &x,
                          const std::vector<double> &y, std::vector<std::size_t> idx, int depth,
                          int max_depth) {
    auto node = std::make_unique<TreeNode>();
    node->leaf_value = subset_mean(x, y, idx);
    if (depth >= max_depth)
        return node;

    const SplitChoice split = best_split(x, y, idx);
    if (split.feature < 0)
        return node;
    // a split that cannot reduce the error is not worth taking
    double sse_here = 0.0;
    {
        const double mean = node->leaf_value;
        for (std::size_t i : idx)
            sse_here += (y[i] - mean) * (y[i] - mean);
    }
    if (!(split.sse < sse_here))
        return node;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx)
        (x[i][split.feature] < split.threshold ? left_idx : right_idx).push_back(i);
    if (left_idx.size() < kMinLeafSize || right_idx.size() < kMinLeafSize)
        return node;

    node->feature = split.feature;
    node->threshold = split.threshold;
    node->left = build_tree(x, y, std::move(left_idx), depth + 1, max_depth);
    node->right = build_tree(x, y, std::move(right_idx), depth + 1, max_depth);
    return node;
}

inline double predict_tree(const TreeNode &node, const std::array<double, 3> &x) {
    const TreeNode *cur = &node;
    while (!cur->is_leaf())
        cur = (x[cur->feature] < cur->threshold) ? cur->left.get() : cur->right.get();
    return cur->leaf_value;
}

inline TreePtr clone_tree(const TreeNode &node) {
    auto copy = std::make_unique<TreeNode>();
    copy->feature = node.feature;
    copy->threshold = node.threshold;
    copy->leaf_value = node.leaf_value;
    if (node.left)
        copy->left = clone_tree(*node.left);
    if (node.right)
        copy->right = clone_tree(*node.right);
    return copy;
}

inline int tree_depth(const TreeNode &node) {
    if (node.is_leaf())
        return 0;
    return 1 + std::max(tree_depth(*node.left), tree_depth(*node.right));
}

inline std::vector<std::array<double, 3>> feature_matrix(const Dataset &data,
                                                         DistanceTransform transform) {
    std::vector<std::array<double, 3>> x;
    x.reserve(data.size());
    for (const auto &s : data) {
        const FeatureVector f = make_features(s, transform);
        x.push_back({f.distance_feature, f.elevation_deg, f.azimuth_deg});
    }
    return x;
}

} // namespace detail

/// Bagged ensemble of CART regression trees.
struct ForestModel {
    std::vector<TreePtr> trees;
    int n_trees = 0;
    int max_depth = 0;
    std::uint64_t seed = 0;
    DistanceTransform distance_transform = DistanceTransform::linear;

    ForestModel() = default;
    ForestModel(ForestModel &&) = default;
    ForestModel &operator=(ForestModel &&) = default;
    ForestModel(const ForestModel &other) { *this = other; }
    ForestModel &operator=(const ForestModel &other) {
        n_trees = other.n_trees;
        max_depth = other.max_depth;
        seed = other.seed;
        distance_transform = other.distance_transform;
        trees.clear();
        for (const auto &t : other.trees)
            trees.push_back(detail::clone_tree(*t));
        return *this;
    }
};

/// Sequential residual-fitting ensemble under squared loss.
struct GbtModel {
    std::vector<TreePtr> trees;
    int n_trees = 0;
    int max_depth = 0;
    double learning_rate = 0.1;
    double base_prediction = 0.0;
    std::uint64_t seed = 0;
    DistanceTransform distance_transform = DistanceTransform::linear;
    std::vector<double> training_loss; // mean squared training error per round

    GbtModel() = default;
    GbtModel(GbtModel &&) = default;
    GbtModel &operator=(GbtModel &&) = default;
    GbtModel(const GbtModel &other) { *this = other; }
    GbtModel &operator=(const GbtModel &other) {
        n_trees = other.n_trees;
        max_depth = other.max_depth;
        learning_rate = other.learning_rate;
        base_prediction = other.base_prediction;
        seed = other.seed;
        distance_transform = other.distance_transform;
        training_loss = other.training_loss;
        trees.clear();
        for (const auto &t : other.trees)
            trees.push_back(detail::clone_tree(*t));
        return *this;
    }
};

/// Train a random forest: each tree sees a bootstrap resample (with
/// replacement, same size as the data) drawn from its own seed-derived
/// stream, so results do not depend on scheduling.
inline ForestModel fit_forest(const Dataset &data, int n_trees, int max_depth, std::uint64_t seed,
                              DistanceTransform transform = DistanceTransform::linear) {
    if (data.size() < 1)
        throw DomainError("fit_forest requires at least one sample");
    if (n_trees < 1)
        throw DomainError("n_trees must be >= 1");
    if (max_depth < 0)
        throw DomainError("max_depth must be >= 0");

    const auto x = detail::feature_matrix(data, transform);
    std::vector<double> y(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        y[i] = data[i].rsrp_dbm;

    ForestModel model;
    model.n_trees = n_trees;
    model.max_depth = max_depth;
    model.seed = seed;
    model.distance_transform = transform;
    model.trees.reserve(n_trees);
    for (int t = 0; t < n_trees; ++t) {
        detail::SplitMix64 rng(seed ^ (0xa0761d6478bd642fULL * (t + 1)));
        std::vector<std::size_t> idx(data.size());
        for (auto &i : idx)
            i = rng.below(data.size());
        model.trees.push_back(detail::build_tree(x, y, std::move(idx), 0, max_depth));
    }
    return model;
}

inline double predict_forest(const ForestModel &m, const FeatureVector &f) {
    const std::array<double, 3> x = {f.distance_feature, f.elevation_deg, f.azimuth_deg};
    double s = 0.0;
    for (const auto &t : m.trees)
        s += detail::predict_tree(*t, x);
    return s / static_cast<double>(m.trees.size());
}

inline double predict_forest(const ForestModel &m, double d_uav_m, double elevation_deg,
                             double azimuth_deg) {
    return predict_forest(m,
                          make_features(d_uav_m, elevation_deg, azimuth_deg, m.distance_transform));
}

/// Train a gradient-boosted ensemble: base prediction is the target mean;
/// each round fits a CART tree to the current residuals and contributes
/// learning_rate times its output.
inline GbtModel fit_gbt(const Dataset &data, int n_trees, int max_depth, double learning_rate,
                        std::uint64_t seed,
                        DistanceTransform transform = DistanceTransform::linear) {
    if (data.size() < 1)
        throw DomainError("fit_gbt requires at least one sample");
    if (n_trees < 1)
        throw DomainError("n_trees must be >= 1");
    if (max_depth < 0)
        throw DomainError("max_depth must be >= 0");
    if (!(learning_rate > 0.0) || learning_rate > 1.0)
        throw DomainError("learning_rate must be in (0, 1]");

    const auto x = detail::feature_matrix(data, transform);
    const std::size_t n = data.size();
    std::vector<double> target(n), residual(n), current(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        mean += data[i].rsrp_dbm;
    mean /= static_cast<double>(n);

    GbtModel model;
    model.n_trees = n_trees;
    model.max_depth = max_depth;
    model.learning_rate = learning_rate;
    model.base_prediction = mean;
    model.seed = seed;
    model.distance_transform = transform;

    for (std::size_t i = 0; i < n; ++i) {
        target[i] = data[i].rsrp_dbm;
        current[i] = mean;
    }
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i)
        all[i] = i;

    model.trees.reserve(n_trees);
    model.training_loss.reserve(n_trees + 1);
    auto loss = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += (target[i] - current[i]) * (target[i] - current[i]);
        return s / static_cast<double>(n);
    };
    model.training_loss.push_back(loss());
    for (int t = 0; t < n_trees; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            residual[i] = target[i] - current[i];
        TreePtr tree = detail::build_tree(x, residual, all, 0, max_depth);
        for (std::size_t i = 0; i < n; ++i)
            current[i] += learning_rate * detail::predict_tree(*tree, x[i]);
        model.trees.push_back(std::move(tree));
        model.training_loss.push_back(loss());
    }
    return model;
}

inline double predict_gbt(const GbtModel &m, const FeatureVector &f) {
    const std::array<double, 3> x = {f.distance_feature, f.elevation_deg, f.azimuth_deg};
    double s = m.base_prediction;
    for (const auto &t : m.trees)
        s += m.learning_rate * detail::predict_tree(*t, x);
    return s;
}

inline double predict_gbt(const GbtModel &m, double d_uav_m, double elevation_deg,
                          double azimuth_deg) {
    return predict_gbt(m,
                       make_features(d_uav_m, elevation_deg, azimuth_deg, m.distance_transform));
}

} // namespace aglink::models
