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
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aglink/errors.hpp"
#include "aglink/models/features.hpp"
#include "aglink/models/trees.hpp" // detail::SplitMix64

namespace aglink::models {

enum class Activation { relu, tanh, logistic };

inline std::string to_string(Activation a) {
    switch (a) {
    case Activation::relu:
        return "relu";
    case Activation::tanh:
        return "tanh";
    default:
        return "logistic";
    }
}

inline Activation activation_from_string(const std::string &s) {
    if (s == "relu")
        return Activation::relu;
    if (s == "tanh")
        return Activation::tanh;
    if (s == "logistic")
        return Activation::logistic;
    throw BadSpec("unknown activation '" + s + "'");
}

struct MlpConfig {
    int hidden_layers = 1; // 1 or 2
    int neurons = 10;      // width of every hidden layer
    Activation activation = Activation::relu;
    double l2 = 1e-4;
    double learning_rate = 1e-3;
    int epochs = 500;
    DistanceTransform distance_transform = DistanceTransform::linear;

    void validate() const {
        if (hidden_layers != 1 && hidden_layers != 2)
            throw BadSpec("hidden_layers must be 1 or 2");
        if (neurons < 1)
            throw BadSpec("neurons must be >= 1");
        if (l2 < 0.0)
            throw BadSpec("l2 must be >= 0");
        if (!(learning_rate > 0.0))
            throw BadSpec("learning_rate must be > 0");
        if (epochs < 0)
            throw BadSpec("epochs must be >= 0");
    }
};

/// Fully-connected regressor over the 3 link-geometry features. Weights act
/// on z-scored inputs; the output layer is linear in z-scored target space.
struct MlpModel {
    MlpConfig config;
    std::vector<Eigen::MatrixXd> weights; // weights[l]: rows = out, cols = in
    std::vector<Eigen::VectorXd> biases;
    std::array<double, 3> feature_mean = {0, 0, 0};
    std::array<double, 3> feature_std = {1, 1, 1};
    double target_mean = 0.0;
    double target_std = 1.0;
    std::uint64_t seed = 0;
    std::vector<double> training_loss;
};

namespace detail {

inline double uniform01(SplitMix64 &rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

inline Eigen::MatrixXd apply_activation(const Eigen::MatrixXd &z, Activation a) {
    switch (a) {
    case Activation::relu:
        return z.cwiseMax(0.0);
    case Activation::tanh:
        return z.array().tanh().matrix();
    default:
        return (1.0 / (1.0 + (-z.array()).exp())).matrix();
    }
}

/// Derivative expressed through the activation value (cheaper and exact).
inline Eigen::MatrixXd activation_grad(const Eigen::MatrixXd &act_value, Activation a) {
    switch (a) {
    case Activation::relu:
        return (act_value.array() > 0.0).cast<double>().matrix();
    case Activation::tanh:
        return (1.0 - act_value.array().square()).matrix();
    default:
        return (act_value.array() * (1.0 - act_value.array())).matrix();
    }
}

} // namespace detail

struct MlpGradients {
    double loss = 0.0;
    std::vector<Eigen::MatrixXd> d_weights;
    std::vector<Eigen::VectorXd> d_biases;
};

/// Full-batch loss and analytic gradient in standardized space:
/// loss = mean(e^2)/2 + l2 * sum ||W||^2 / (2n). Exposed so gradient
/// correctness can be checked against finite differences.
inline MlpGradients mlp_loss_and_grad(const MlpModel &m, const Eigen::MatrixXd &x_std,
                                      const Eigen::VectorXd &y_std) {
    const auto n_layers = m.weights.size();
    const double n = static_cast<double>(x_std.rows());

    std::vector<Eigen::MatrixXd> activations; // activations[0] = input
    activations.push_back(x_std);
    for (std::size_t l = 0; l + 1 < n_layers; ++l) {
        Eigen::MatrixXd z = activations.back() * m.weights[l].transpose();
        z.rowwise() += m.biases[l].transpose();
        activations.push_back(detail::apply_activation(z, m.config.activation));
    }
    Eigen::VectorXd out =
        activations.back() * m.weights.back().transpose() + Eigen::VectorXd::Constant(
            x_std.rows(), m.biases.back()(0));

    const Eigen::VectorXd err = out - y_std;
    double penalty = 0.0;
    for (const auto &w : m.weights)
        penalty += w.squaredNorm();
    MlpGradients g;
    g.loss = 0.5 * err.squaredNorm() / n + 0.5 * m.config.l2 * penalty / n;

    g.d_weights.resize(n_layers);
    g.d_biases.resize(n_layers);
    Eigen::MatrixXd delta = err / n; // n x 1
    for (std::size_t l = n_layers; l-- > 0;) {
        g.d_weights[l] = delta.transpose() * activations[l] + (m.config.l2 / n) * m.weights[l];
        g.d_biases[l] = delta.colwise().sum().transpose();
        if (l > 0) {
            Eigen::MatrixXd back = delta * m.weights[l];
            delta = back.cwiseProduct(detail::activation_grad(activations[l],
                                                              m.config.activation));
        }
    }
    return g;
}

/// Glorot-uniform initialized network; deterministic in the seed.
inline MlpModel init_mlp(const MlpConfig &config, std::uint64_t seed) {
    config.validate();
    MlpModel m;
    m.config = config;
    m.seed = seed;
    detail::SplitMix64 rng(seed);

    std::vector<int> shape = {3};
    for (int l = 0; l < config.hidden_layers; ++l)
        shape.push_back(config.neurons);
    shape.push_back(1);

    for (std::size_t l = 0; l + 1 < shape.size(); ++l) {
        const int fan_in = shape[l], fan_out = shape[l + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        Eigen::MatrixXd w(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c)
                w(r, c) = (2.0 * detail::uniform01(rng) - 1.0) * limit;
        m.weights.push_back(std::move(w));
        m.biases.push_back(Eigen::VectorXd::Zero(fan_out));
    }
    return m;
}

/// Train with the Adam optimizer, full batch, fixed epoch budget. Features
/// and target are z-scored internally; constant columns get std 1 so the
/// transform stays invertible.
inline MlpModel fit_mlp(const Dataset &data, const MlpConfig &config, std::uint64_t seed) {
    config.validate();
    if (data.empty())
        throw DomainError("fit_mlp requires a nonempty dataset");

    MlpModel m = init_mlp(config, seed);

    const std::size_t n = data.size();
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FeatureVector f = make_features(data[i], config.distance_transform);
        x(i, 0) = f.distance_feature;
        x(i, 1) = f.elevation_deg;
        x(i, 2) = f.azimuth_deg;
        y(i) = data[i].rsrp_dbm;
    }
    for (int c = 0; c < 3; ++c) {
        m.feature_mean[c] = x.col(c).mean();
        const double var = (x.col(c).array() - m.feature_mean[c]).square().sum() /
                           static_cast<double>(n);
        m.feature_std[c] = var > 0.0 ? std::sqrt(var) : 1.0;
        x.col(c) = (x.col(c).array() - m.feature_mean[c]) / m.feature_std[c];
    }
    m.target_mean = y.mean();
    {
        const double var = (y.array() - m.target_mean).square().sum() / static_cast<double>(n);
        m.target_std = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    y = (y.array() - m.target_mean) / m.target_std;

    // Adam state
    std::vector<Eigen::MatrixXd> mw, vw;
    std::vector<Eigen::VectorXd> mb, vb;
    for (const auto &w : m.weights) {
        mw.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
        vw.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    }
    for (const auto &b : m.biases) {
        mb.push_back(Eigen::VectorXd::Zero(b.size()));
        vb.push_back(Eigen::VectorXd::Zero(b.size()));
    }
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

    m.training_loss.reserve(config.epochs);
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        MlpGradients g = mlp_loss_and_grad(m, x, y);
        if (!std::isfinite(g.loss))
            throw NonFinite("MLP training loss diverged at epoch " + std::to_string(epoch));
        m.training_loss.push_back(g.loss);

        const double bc1 = 1.0 - std::pow(beta1, epoch);
        const double bc2 = 1.0 - std::pow(beta2, epoch);
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            mw[l] = beta1 * mw[l] + (1.0 - beta1) * g.d_weights[l];
            vw[l] = beta2 * vw[l] + (1.0 - beta2) * g.d_weights[l].cwiseProduct(g.d_weights[l]);
            m.weights[l] -= (config.learning_rate * (mw[l] / bc1).array() /
                             ((vw[l] / bc2).array().sqrt() + eps))
                                .matrix();
            mb[l] = beta1 * mb[l] + (1.0 - beta1) * g.d_biases[l];
            vb[l] = beta2 * vb[l] + (1.0 - beta2) * g.d_biases[l].cwiseProduct(g.d_biases[l]);
            m.biases[l] -= (config.learning_rate * (mb[l] / bc1).array() /
                            ((vb[l] / bc2).array().sqrt() + eps))
                               .matrix();
        }
    }
    return m;
}

/// Evaluate the network on one feature vector (de-standardized output).
inline double predict_mlp(const MlpModel &m, const FeatureVector &f) {
    Eigen::RowVector3d x((f.distance_feature - m.feature_mean[0]) / m.feature_std[0],
                         (f.elevation_deg - m.feature_mean[1]) / m.feature_std[1],
                         (f.azimuth_deg - m.feature_mean[2]) / m.feature_std[2]);
    Eigen::MatrixXd a = x;
    for (std::size_t l = 0; l + 1 < m.weights.size(); ++l) {
        Eigen::MatrixXd z = a * m.weights[l].transpose();
        z.rowwise() += m.biases[l].transpose();
        a = detail::apply_activation(z, m.config.activation);
    }
    const double out = (a * m.weights.back().transpose())(0, 0) + m.biases.back()(0);
    return out * m.target_std + m.target_mean;
}

inline double predict_mlp(const MlpModel &m, double d_uav_m, double elevation_deg,
                          double azimuth_deg) {
    return predict_mlp(m, make_features(d_uav_m, elevation_deg, azimuth_deg,
                                        m.config.distance_transform));
}

} // namespace aglink::models
