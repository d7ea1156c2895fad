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
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "aglink/errors.hpp"
#include "aglink/eval.hpp"
#include "aglink/models/features.hpp"
#include "aglink/models/mlp.hpp"
#include "aglink/models/polynomial.hpp"
#include "aglink/models/trees.hpp"

namespace aglink::models {

enum class ModelFamily { poly, forest, gbt, mlp };

inline std::string to_string(ModelFamily f) {
    switch (f) {
    case ModelFamily::poly:
        return "poly";
    case ModelFamily::forest:
        return "forest";
    case ModelFamily::gbt:
        return "gbt";
    default:
        return "mlp";
    }
}

inline ModelFamily family_from_string(const std::string &s) {
    if (s == "poly")
        return ModelFamily::poly;
    if (s == "forest")
        return ModelFamily::forest;
    if (s == "gbt")
        return ModelFamily::gbt;
    if (s == "mlp")
        return ModelFamily::mlp;
    throw BadSpec("unknown model family '" + s + "'");
}

/// Hyper-parameter ranges explored by grid_search. Defaults follow the
/// tuning ranges used throughout: polynomial degree 2–9 in both distance
/// transforms; 50–300 trees (step 50) at depths 5–20 (step 5); MLPs with 1–2
/// hidden layers, widths {10,15,20,25,30,50}, three activations, four L2
/// levels and three initial learning rates.
struct HyperGrid {
    std::vector<int> poly_degrees = {2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<DistanceTransform> poly_transforms = {DistanceTransform::log10,
                                                      DistanceTransform::linear};
    std::vector<int> tree_counts = {50, 100, 150, 200, 250, 300};
    std::vector<int> tree_depths = {5, 10, 15, 20};
    double gbt_learning_rate = 0.1;
    std::vector<int> mlp_hidden_layers = {1, 2};
    std::vector<int> mlp_neurons = {10, 15, 20, 25, 30, 50};
    std::vector<Activation> mlp_activations = {Activation::relu, Activation::tanh,
                                               Activation::logistic};
    std::vector<double> mlp_l2 = {0.0001, 0.001, 0.01, 0.1};
    std::vector<double> mlp_learning_rates = {0.001, 0.01, 0.05};
    int mlp_epochs = 500;
    // distance transform used by the tree and MLP families
    DistanceTransform ml_transform = DistanceTransform::linear;

    void validate() const {
        if (poly_degrees.empty() || poly_transforms.empty() || tree_counts.empty() ||
            tree_depths.empty() || mlp_hidden_layers.empty() || mlp_neurons.empty() ||
            mlp_activations.empty() || mlp_l2.empty() || mlp_learning_rates.empty())
            throw BadSpec("hyper grid has an empty dimension");
    }

    std::size_t size(ModelFamily family) const {
        switch (family) {
        case ModelFamily::poly:
            return poly_degrees.size() * poly_transforms.size();
        case ModelFamily::forest:
        case ModelFamily::gbt:
            return tree_counts.size() * tree_depths.size();
        default:
            return mlp_hidden_layers.size() * mlp_neurons.size() * mlp_activations.size() *
                   mlp_l2.size() * mlp_learning_rates.size();
        }
    }
};

inline nlohmann::ordered_json hyper_grid_to_json(const HyperGrid &g) {
    nlohmann::ordered_json j;
    j["poly_degrees"] = g.poly_degrees;
    j["poly_transforms"] = nlohmann::ordered_json::array();
    for (auto t : g.poly_transforms)
        j["poly_transforms"].push_back(to_string(t));
    j["tree_counts"] = g.tree_counts;
    j["tree_depths"] = g.tree_depths;
    j["gbt_learning_rate"] = g.gbt_learning_rate;
    j["mlp_hidden_layers"] = g.mlp_hidden_layers;
    j["mlp_neurons"] = g.mlp_neurons;
    j["mlp_activations"] = nlohmann::ordered_json::array();
    for (auto a : g.mlp_activations)
        j["mlp_activations"].push_back(to_string(a));
    j["mlp_l2"] = g.mlp_l2;
    j["mlp_learning_rates"] = g.mlp_learning_rates;
    j["mlp_epochs"] = g.mlp_epochs;
    j["ml_transform"] = to_string(g.ml_transform);
    return j;
}

inline HyperGrid hyper_grid_from_json(const nlohmann::json &j) {
    HyperGrid g;
    try {
        if (j.contains("poly_degrees"))
            g.poly_degrees = j.at("poly_degrees").get<std::vector<int>>();
        if (j.contains("poly_transforms")) {
            g.poly_transforms.clear();
            for (const auto &t : j.at("poly_transforms"))
                g.poly_transforms.push_back(
                    distance_transform_from_string(t.get<std::string>()));
        }
        if (j.contains("tree_counts"))
            g.tree_counts = j.at("tree_counts").get<std::vector<int>>();
        if (j.contains("tree_depths"))
            g.tree_depths = j.at("tree_depths").get<std::vector<int>>();
        if (j.contains("gbt_learning_rate"))
            g.gbt_learning_rate = j.at("gbt_learning_rate").get<double>();
        if (j.contains("mlp_hidden_layers"))
            g.mlp_hidden_layers = j.at("mlp_hidden_layers").get<std::vector<int>>();
        if (j.contains("mlp_neurons"))
            g.mlp_neurons = j.at("mlp_neurons").get<std::vector<int>>();
        if (j.contains("mlp_activations")) {
            g.mlp_activations.clear();
            for (const auto &a : j.at("mlp_activations"))
                g.mlp_activations.push_back(activation_from_string(a.get<std::string>()));
        }
        if (j.contains("mlp_l2"))
            g.mlp_l2 = j.at("mlp_l2").get<std::vector<double>>();
        if (j.contains("mlp_learning_rates"))
            g.mlp_learning_rates = j.at("mlp_learning_rates").get<std::vector<double>>();
        if (j.contains("mlp_epochs"))
            g.mlp_epochs = j.at("mlp_epochs").get<int>();
        if (j.contains("ml_transform"))
            g.ml_transform = distance_transform_from_string(j.at("ml_transform").get<std::string>());
    } catch (const nlohmann::json::exception &e) {
        throw BadSpec(std::string("malformed hyper grid: ") + e.what());
    }
    g.validate();
    return g;
}

using AnyModel = std::variant<std::monostate, PolyModel, ForestModel, GbtModel, MlpModel>;

/// Evaluate any fitted model on raw link geometry.
inline double predict_any(const AnyModel &m, double d_uav_m, double elevation_deg,
                          double azimuth_deg) {
    if (const auto *p = std::get_if<PolyModel>(&m))
        return predict_polynomial(*p, d_uav_m, elevation_deg, azimuth_deg);
    if (const auto *p = std::get_if<ForestModel>(&m))
        return predict_forest(*p, d_uav_m, elevation_deg, azimuth_deg);
    if (const auto *p = std::get_if<GbtModel>(&m))
        return predict_gbt(*p, d_uav_m, elevation_deg, azimuth_deg);
    if (const auto *p = std::get_if<MlpModel>(&m))
        return predict_mlp(*p, d_uav_m, elevation_deg, azimuth_deg);
    throw DomainError("predict_any called on an empty model");
}

/// One grid entry: the configuration, and either its train/test metrics or
/// the error that kept it from fitting. Failed fits stay on the leaderboard.
struct ConfigResult {
    nlohmann::ordered_json config;
    bool ok = false;
    std::string error;
    eval::EvalReport train;
    eval::EvalReport test;
};

struct GridSearchResult {
    ModelFamily family = ModelFamily::poly;
    std::uint64_t seed = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::vector<ConfigResult> leaderboard;
    long best_index = -1; // -1 when every configuration failed
    AnyModel best_model;
};

namespace detail {

/// Like eval::metrics but never throws: MAPE is NaN when a measured value is
/// zero, so a pathological target cannot abort a whole grid sweep.
inline eval::EvalReport safe_metrics(const std::vector<double> &measured,
                                     const std::vector<double> &predicted) {
    const std::size_t n = measured.size();
    eval::EvalReport r;
    r.n = n;
    double sum_abs = 0.0, sum_sq = 0.0, sum_ape = 0.0, sum_meas = 0.0;
    bool mape_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = measured[i] - predicted[i];
        sum_abs += std::abs(e);
        sum_sq += e * e;
        if (measured[i] == 0.0)
            mape_ok = false;
        else
            sum_ape += std::abs(e) / std::abs(measured[i]);
        sum_meas += measured[i];
    }
    const double dn = static_cast<double>(n);
    r.mae_db = sum_abs / dn;
    r.rmse_db = std::sqrt(sum_sq / dn);
    r.mape_pct = mape_ok ? 100.0 * sum_ape / dn : std::numeric_limits<double>::quiet_NaN();
    const double mean = sum_meas / dn;
    double sst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sst += (measured[i] - mean) * (measured[i] - mean);
    r.r2 = sst > 0.0 ? 1.0 - sum_sq / sst : std::numeric_limits<double>::quiet_NaN();
    return r;
}

} // namespace detail

/// Random 70-30 train/test split of row indices, reproducible from the seed.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(std::size_t n, std::uint64_t seed) {
    if (n < 2)
        throw DomainError("need at least 2 samples for a train/test split");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(0.7 * static_cast<double>(n)));
    std::vector<std::size_t> train(idx.begin(), idx.begin() + n_train);
    std::vector<std::size_t> test(idx.begin() + n_train, idx.end());
    return {std::move(train), std::move(test)};
}

/// Exhaustive sweep of one family's grid on a seeded 70-30 split. Every
/// configuration lands on the leaderboard — failed fits with their error —
/// and the model with the lowest test RMSE is returned.
inline GridSearchResult grid_search(const Dataset &data, const HyperGrid &grid,
                                    ModelFamily family, std::uint64_t seed) {
    grid.validate();
    auto [train_idx, test_idx] = split_indices(data.size(), seed);

    Dataset train_set, test_set;
    train_set.reserve(train_idx.size());
    test_set.reserve(test_idx.size());
    for (auto i : train_idx)
        train_set.push_back(data[i]);
    for (auto i : test_idx)
        test_set.push_back(data[i]);

    GridSearchResult res;
    res.family = family;
    res.seed = seed;
    res.n_train = train_set.size();
    res.n_test = test_set.size();

    double best_rmse = std::numeric_limits<double>::infinity();

    auto evaluate = [&](const nlohmann::ordered_json &config, auto fit_fn, auto predict_fn) {
        ConfigResult entry;
        entry.config = config;
        try {
            auto model = fit_fn();
            std::vector<double> y_train, p_train, y_test, p_test;
            for (const auto &s : train_set) {
                y_train.push_back(s.rsrp_dbm);
                p_train.push_back(predict_fn(model, s));
            }
            for (const auto &s : test_set) {
                y_test.push_back(s.rsrp_dbm);
                p_test.push_back(predict_fn(model, s));
            }
            entry.train = detail::safe_metrics(y_train, p_train);
            entry.test = detail::safe_metrics(y_test, p_test);
            entry.ok = true;
            if (entry.test.rmse_db < best_rmse) {
                best_rmse = entry.test.rmse_db;
                res.best_index = static_cast<long>(res.leaderboard.size());
                res.best_model = std::move(model);
            }
        } catch (const Error &e) {
            entry.ok = false;
            entry.error = e.what();
        }
        res.leaderboard.push_back(std::move(entry));
    };

    switch (family) {
    case ModelFamily::poly:
        for (auto transform : grid.poly_transforms)
            for (int degree : grid.poly_degrees)
                evaluate(
                    nlohmann::ordered_json{{"degree", degree},
                                           {"distance_transform", to_string(transform)}},
                    [&] {
                        std::vector<std::pair<FeatureVector, double>> rows;
                        rows.reserve(train_set.size());
                        for (const auto &s : train_set)
                            rows.emplace_back(make_features(s, transform), s.rsrp_dbm);
                        return fit_polynomial(rows, degree, transform);
                    },
                    [](const PolyModel &m, const Sample &s) {
                        return predict_polynomial(m, s.d_uav_m, s.elevation_deg, s.azimuth_deg);
                    });
        break;
    case ModelFamily::forest:
        for (int n_trees : grid.tree_counts)
            for (int depth : grid.tree_depths)
                evaluate(
                    nlohmann::ordered_json{{"n_trees", n_trees}, {"max_depth", depth}},
                    [&] { return fit_forest(train_set, n_trees, depth, seed, grid.ml_transform); },
                    [](const ForestModel &m, const Sample &s) {
                        return predict_forest(m, s.d_uav_m, s.elevation_deg, s.azimuth_deg);
                    });
        break;
    case ModelFamily::gbt:
        for (int n_trees : grid.tree_counts)
            for (int depth : grid.tree_depths)
                evaluate(
                    nlohmann::ordered_json{{"n_trees", n_trees},
                                           {"max_depth", depth},
                                           {"learning_rate", grid.gbt_learning_rate}},
                    [&] {
                        return fit_gbt(train_set, n_trees, depth, grid.gbt_learning_rate, seed,
                                       grid.ml_transform);
                    },
                    [](const GbtModel &m, const Sample &s) {
                        return predict_gbt(m, s.d_uav_m, s.elevation_deg, s.azimuth_deg);
                    });
        break;
    case ModelFamily::mlp:
        for (int layers : grid.mlp_hidden_layers)
            for (int width : grid.mlp_neurons)
                for (auto act : grid.mlp_activations)
                    for (double l2 : grid.mlp_l2)
                        for (double lr : grid.mlp_learning_rates) {
                            MlpConfig cfg;
                            cfg.hidden_layers = layers;
                            cfg.neurons = width;
                            cfg.activation = act;
                            cfg.l2 = l2;
                            cfg.learning_rate = lr;
                            cfg.epochs = grid.mlp_epochs;
                            cfg.distance_transform = grid.ml_transform;
                            evaluate(
                                nlohmann::ordered_json{{"hidden_layers", layers},
                                                       {"neurons", width},
                                                       {"activation", to_string(act)},
                                                       {"l2", l2},
                                                       {"learning_rate", lr}},
                                [&] { return fit_mlp(train_set, cfg, seed); },
                                [](const MlpModel &m, const Sample &s) {
                                    return predict_mlp(m, s.d_uav_m, s.elevation_deg,
                                                       s.azimuth_deg);
                                });
                        }
        break;
    }
    return res;
}

} // namespace aglink::models
