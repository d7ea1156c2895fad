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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aglink/errors.hpp"
#include "aglink/geo.hpp"
#include "aglink/models/grid.hpp"
#include "aglink/models/lda.hpp"

namespace aglink::models {

/// 64-bit FNV-1a hash, used to fingerprint input files in run manifests and
/// training metadata.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    static const char *digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4)
        out.push_back(digits[(h >> shift) & 0xF]);
    return out;
}

/// Provenance recorded inside every serialized model.
struct TrainingMetadata {
    std::string data_hash;
    std::uint64_t split_seed = 0;
    std::string device;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    geo::BsSiteConfig site;
    bool has_site = false;
};

inline nlohmann::ordered_json site_to_json(const geo::BsSiteConfig &site) {
    nlohmann::ordered_json j;
    j["lat"] = site.position.latitude_deg;
    j["lon"] = site.position.longitude_deg;
    j["alt_m"] = site.position.altitude_m;
    j["boresight_azimuth_deg"] = site.boresight_azimuth_deg;
    j["downtilt_deg"] = site.mechanical_downtilt_deg;
    j["carrier_hz"] = site.carrier_frequency_hz;
    j["tx_power_w"] = site.tx_power_w;
    j["n_prb"] = site.n_prb;
    j["n_sc"] = site.n_sc;
    return j;
}

inline geo::BsSiteConfig site_from_json(const nlohmann::json &j) {
    geo::BsSiteConfig site;
    try {
        site.position.latitude_deg = j.at("lat").get<double>();
        site.position.longitude_deg = j.at("lon").get<double>();
        site.position.altitude_m = j.at("alt_m").get<double>();
        site.boresight_azimuth_deg = j.value("boresight_azimuth_deg", 0.0);
        site.mechanical_downtilt_deg = j.value("downtilt_deg", 0.0);
        site.carrier_frequency_hz = j.value("carrier_hz", site.carrier_frequency_hz);
        site.tx_power_w = j.value("tx_power_w", site.tx_power_w);
        site.n_prb = j.value("n_prb", site.n_prb);
        site.n_sc = j.value("n_sc", site.n_sc);
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("malformed site config: ") + e.what());
    }
    site.validate();
    return site;
}

namespace detail {

inline nlohmann::ordered_json tree_to_json(const TreeNode &node) {
    if (node.is_leaf())
        return nlohmann::ordered_json{{"leaf_value", node.leaf_value}};
    nlohmann::ordered_json j;
    j["feature"] = node.feature;
    j["threshold"] = node.threshold;
    j["left"] = tree_to_json(*node.left);
    j["right"] = tree_to_json(*node.right);
    return j;
}

inline TreePtr tree_from_json(const nlohmann::json &j) {
    auto node = std::make_unique<TreeNode>();
    if (j.contains("leaf_value")) {
        node->leaf_value = j.at("leaf_value").get<double>();
        return node;
    }
    node->feature = j.at("feature").get<int>();
    node->threshold = j.at("threshold").get<double>();
    node->left = tree_from_json(j.at("left"));
    node->right = tree_from_json(j.at("right"));
    if (node->feature < 0 || node->feature > 2)
        throw SchemaError("tree node has invalid feature index");
    return node;
}

inline nlohmann::ordered_json training_to_json(const TrainingMetadata &t) {
    nlohmann::ordered_json j;
    j["data_hash"] = t.data_hash;
    j["split_seed"] = t.split_seed;
    j["device"] = t.device;
    j["n_train"] = t.n_train;
    j["n_test"] = t.n_test;
    if (t.has_site)
        j["site"] = site_to_json(t.site);
    return j;
}

inline TrainingMetadata training_from_json(const nlohmann::json &j) {
    TrainingMetadata t;
    t.data_hash = j.value("data_hash", "");
    t.split_seed = j.value("split_seed", std::uint64_t{0});
    t.device = j.value("device", "");
    t.n_train = j.value("n_train", std::size_t{0});
    t.n_test = j.value("n_test", std::size_t{0});
    if (j.contains("site")) {
        t.site = site_from_json(j.at("site"));
        t.has_site = true;
    }
    return t;
}

} // namespace detail

/// Serialize any fitted model (plus provenance) as a single JSON document.
inline nlohmann::ordered_json model_to_json(const AnyModel &model, const TrainingMetadata &meta) {
    nlohmann::ordered_json j;
    j["format"] = "aglink-model";
    j["format_version"] = 1;

    if (const auto *p = std::get_if<PolyModel>(&model)) {
        j["family"] = "poly";
        j["degree"] = p->degree;
        j["distance_transform"] = to_string(p->distance_transform);
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < p->monomials.size(); ++t)
            coeffs.push_back({p->monomials[t][0], p->monomials[t][1], p->monomials[t][2],
                              p->coefficients[t]});
        j["coefficients"] = std::move(coeffs);
        j["standardized"] = p->standardized;
        if (p->standardized) {
            j["feature_mean"] = p->scaling.mean;
            j["feature_std"] = p->scaling.std;
            j["coefficients_standardized"] = p->coefficients_standardized;
        }
    } else if (const auto *f = std::get_if<ForestModel>(&model)) {
        j["family"] = "forest";
        j["n_trees"] = f->n_trees;
        j["max_depth"] = f->max_depth;
        j["seed"] = f->seed;
        j["distance_transform"] = to_string(f->distance_transform);
        nlohmann::ordered_json trees = nlohmann::ordered_json::array();
        for (const auto &t : f->trees)
            trees.push_back(detail::tree_to_json(*t));
        j["trees"] = std::move(trees);
    } else if (const auto *g = std::get_if<GbtModel>(&model)) {
        j["family"] = "gbt";
        j["n_trees"] = g->n_trees;
        j["max_depth"] = g->max_depth;
        j["learning_rate"] = g->learning_rate;
        j["base_prediction"] = g->base_prediction;
        j["seed"] = g->seed;
        j["distance_transform"] = to_string(g->distance_transform);
        nlohmann::ordered_json trees = nlohmann::ordered_json::array();
        for (const auto &t : g->trees)
            trees.push_back(detail::tree_to_json(*t));
        j["trees"] = std::move(trees);
    } else if (const auto *m = std::get_if<MlpModel>(&model)) {
        j["family"] = "mlp";
        j["hidden_layers"] = m->config.hidden_layers;
        j["neurons"] = m->config.neurons;
        j["activation"] = to_string(m->config.activation);
        j["l2"] = m->config.l2;
        j["learning_rate"] = m->config.learning_rate;
        j["epochs"] = m->config.epochs;
        j["distance_transform"] = to_string(m->config.distance_transform);
        j["seed"] = m->seed;
        nlohmann::ordered_json weights = nlohmann::ordered_json::array();
        for (const auto &w : m->weights) {
            nlohmann::ordered_json layer = nlohmann::ordered_json::array();
            for (Eigen::Index r = 0; r < w.rows(); ++r) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (Eigen::Index c = 0; c < w.cols(); ++c)
                    row.push_back(w(r, c));
                layer.push_back(std::move(row));
            }
            weights.push_back(std::move(layer));
        }
        j["weights"] = std::move(weights);
        nlohmann::ordered_json biases = nlohmann::ordered_json::array();
        for (const auto &b : m->biases) {
            nlohmann::ordered_json vec = nlohmann::ordered_json::array();
            for (Eigen::Index r = 0; r < b.size(); ++r)
                vec.push_back(b(r));
            biases.push_back(std::move(vec));
        }
        j["biases"] = std::move(biases);
        j["feature_mean"] = m->feature_mean;
        j["feature_std"] = m->feature_std;
        j["target_mean"] = m->target_mean;
        j["target_std"] = m->target_std;
    } else {
        throw DomainError("cannot serialize an empty model");
    }

    j["training"] = detail::training_to_json(meta);
    return j;
}

/// Deserialize a model document; inverse of model_to_json.
inline std::pair<AnyModel, TrainingMetadata> model_from_json(const nlohmann::json &j) {
    try {
        if (j.value("format", "") != "aglink-model")
            throw SchemaError("not an aglink model document");
        TrainingMetadata meta = j.contains("training")
                                    ? detail::training_from_json(j.at("training"))
                                    : TrainingMetadata{};
        const std::string family = j.at("family").get<std::string>();

        if (family == "poly") {
            PolyModel m;
            m.degree = j.at("degree").get<int>();
            m.distance_transform =
                distance_transform_from_string(j.at("distance_transform").get<std::string>());
            for (const auto &c : j.at("coefficients")) {
                m.monomials.push_back({c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>()});
                m.coefficients.push_back(c.at(3).get<double>());
            }
            m.standardized = j.value("standardized", false);
            if (m.standardized) {
                m.scaling.mean = j.at("feature_mean").get<std::array<double, 3>>();
                m.scaling.std = j.at("feature_std").get<std::array<double, 3>>();
                m.coefficients_standardized =
                    j.at("coefficients_standardized").get<std::vector<double>>();
            }
            return {AnyModel(std::move(m)), meta};
        }
        if (family == "forest") {
            ForestModel m;
            m.n_trees = j.at("n_trees").get<int>();
            m.max_depth = j.at("max_depth").get<int>();
            m.seed = j.value("seed", std::uint64_t{0});
            m.distance_transform =
                distance_transform_from_string(j.at("distance_transform").get<std::string>());
            for (const auto &t : j.at("trees"))
                m.trees.push_back(detail::tree_from_json(t));
            return {AnyModel(std::move(m)), meta};
        }
        if (family == "gbt") {
            GbtModel m;
            m.n_trees = j.at("n_trees").get<int>();
            m.max_depth = j.at("max_depth").get<int>();
            m.learning_rate = j.at("learning_rate").get<double>();
            m.base_prediction = j.at("base_prediction").get<double>();
            m.seed = j.value("seed", std::uint64_t{0});
            m.distance_transform =
                distance_transform_from_string(j.at("distance_transform").get<std::string>());
            for (const auto &t : j.at("trees"))
                m.trees.push_back(detail::tree_from_json(t));
            return {AnyModel(std::move(m)), meta};
        }
        if (family == "mlp") {
            MlpModel m;
            m.config.hidden_layers = j.at("hidden_layers").get<int>();
            m.config.neurons = j.at("neurons").get<int>();
            m.config.activation = activation_from_string(j.at("activation").get<std::string>());
            m.config.l2 = j.at("l2").get<double>();
            m.config.learning_rate = j.at("learning_rate").get<double>();
            m.config.epochs = j.value("epochs", 500);
            m.config.distance_transform =
                distance_transform_from_string(j.at("distance_transform").get<std::string>());
            m.seed = j.value("seed", std::uint64_t{0});
            for (const auto &layer : j.at("weights")) {
                const auto rows = layer.size();
                const auto cols = layer.at(0).size();
                Eigen::MatrixXd w(rows, cols);
                for (std::size_t r = 0; r < rows; ++r)
                    for (std::size_t c = 0; c < cols; ++c)
                        w(r, c) = layer.at(r).at(c).get<double>();
                m.weights.push_back(std::move(w));
            }
            for (const auto &vec : j.at("biases")) {
                Eigen::VectorXd b(vec.size());
                for (std::size_t r = 0; r < vec.size(); ++r)
                    b(r) = vec.at(r).get<double>();
                m.biases.push_back(std::move(b));
            }
            m.feature_mean = j.at("feature_mean").get<std::array<double, 3>>();
            m.feature_std = j.at("feature_std").get<std::array<double, 3>>();
            m.target_mean = j.at("target_mean").get<double>();
            m.target_std = j.at("target_std").get<double>();
            return {AnyModel(std::move(m)), meta};
        }
        throw SchemaError("unknown model family '" + family + "'");
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("malformed model document: ") + e.what());
    }
}

/// Serialize the rank-plane classifier with its fit diagnostics.
inline nlohmann::ordered_json lda_to_json(const LdaModel &m) {
    nlohmann::ordered_json j;
    j["format"] = "aglink-lda";
    j["format_version"] = 1;
    j["weights"] = {{"d", m.weights[0]}, {"azimuth", m.weights[1]}, {"elevation", m.weights[2]}};
    j["bias"] = m.bias;
    j["class_for_positive_side"] = m.class_for_positive_side;
    j["class_for_negative_side"] = m.class_for_negative_side;
    j["ridge_applied"] = m.ridge_applied;
    return j;
}

inline LdaModel lda_from_json(const nlohmann::json &j) {
    try {
        if (j.value("format", "") != "aglink-lda")
            throw SchemaError("not an aglink LDA document");
        LdaModel m;
        m.weights = {j.at("weights").at("d").get<double>(),
                     j.at("weights").at("azimuth").get<double>(),
                     j.at("weights").at("elevation").get<double>()};
        m.bias = j.at("bias").get<double>();
        m.class_for_positive_side = j.at("class_for_positive_side").get<int>();
        m.class_for_negative_side = j.at("class_for_negative_side").get<int>();
        m.ridge_applied = j.value("ridge_applied", false);
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaError(std::string("malformed LDA document: ") + e.what());
    }
}

} // namespace aglink::models
