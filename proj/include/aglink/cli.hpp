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

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aglink/antenna.hpp"
#include "aglink/errors.hpp"
#include "aglink/eval.hpp"
#include "aglink/flightlog.hpp"
#include "aglink/geo.hpp"
#include "aglink/linkbudget.hpp"
#include "aglink/models/grid.hpp"
#include "aglink/models/lda.hpp"
#include "aglink/models/serialize.hpp"
#include "aglink/synth.hpp"
#include "aglink/trajectory.hpp"
#include "aglink/version.hpp"

namespace aglink::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitBadInput = 2;

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write '" + path + "'");
    out << content;
}

inline nlohmann::json parse_json(const std::string &text, const std::string &what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("malformed JSON in " + what + ": " + e.what());
    }
}

inline std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Tracks a run's inputs/outputs and writes `<primary output>.manifest.json`.
struct ManifestBuilder {
    std::string command;
    std::vector<std::string> arguments;
    std::optional<std::uint64_t> seed;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    std::vector<std::string> outputs;

    void add_input(const std::string &path, const std::string &content) {
        inputs.push_back({{"path", path}, {"hash", models::fnv1a64_hex(content)}});
    }

    void write(const std::string &primary_output) const {
        nlohmann::ordered_json j;
        j["format"] = "aglink-manifest";
        j["tool_version"] = kVersion;
        j["command"] = command;
        j["arguments"] = arguments;
        if (seed)
            j["seed"] = *seed;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["created_utc"] = utc_now(); // only non-deterministic field
        write_file(primary_output + ".manifest.json", j.dump(2) + "\n");
    }
};

inline geo::BsSiteConfig load_site(const std::string &path, ManifestBuilder &manifest) {
    const std::string text = read_file(path);
    manifest.add_input(path, text);
    return models::site_from_json(parse_json(text, "site config '" + path + "'"));
}

inline antenna::AntennaPattern load_pattern_files(const std::string &az_path,
                                                  const std::string &el_path,
                                                  ManifestBuilder &manifest) {
    const std::string az = read_file(az_path);
    const std::string el = read_file(el_path);
    manifest.add_input(az_path, az);
    manifest.add_input(el_path, el);
    std::istringstream az_s(az), el_s(el);
    return antenna::load_pattern(az_s, el_s);
}

inline data::FlightLog load_flight(const std::string &path, ManifestBuilder &manifest,
                                   const std::string &column_map_path = "") {
    data::ColumnMap cmap;
    if (!column_map_path.empty()) {
        const std::string text = read_file(column_map_path);
        manifest.add_input(column_map_path, text);
        const auto j = parse_json(text, "column map '" + column_map_path + "'");
        for (auto it = j.begin(); it != j.end(); ++it)
            cmap[it.key()] = it.value().get<std::string>();
    }
    const std::string text = read_file(path);
    manifest.add_input(path, text);
    std::istringstream in(text);
    return data::load_flight_csv(in, cmap);
}

inline nlohmann::ordered_json report_to_json(const eval::EvalReport &r) {
    return {{"mae_db", r.mae_db},
            {"rmse_db", r.rmse_db},
            {"mape_pct", r.mape_pct}, // NaN dumps as null
            {"r2", r.r2},
            {"n", r.n}};
}

inline nlohmann::ordered_json leaderboard_to_json(const models::GridSearchResult &res) {
    nlohmann::ordered_json j;
    j["family"] = models::to_string(res.family);
    j["seed"] = res.seed;
    j["n_train"] = res.n_train;
    j["n_test"] = res.n_test;
    j["best_index"] = res.best_index;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto &e : res.leaderboard) {
        nlohmann::ordered_json row;
        row["config"] = e.config;
        row["ok"] = e.ok;
        if (e.ok) {
            row["train"] = report_to_json(e.train);
            row["test"] = report_to_json(e.test);
        } else {
            row["error"] = e.error;
        }
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

/// Pick the single device a fit/evaluate run operates on.
inline data::FlightLog select_device(const data::FlightLog &log, const std::string &requested) {
    auto parts = data::partition_by_device(log);
    if (parts.empty())
        throw SchemaError("flight log has no rows");
    if (!requested.empty()) {
        const auto it = parts.find(requested);
        if (it == parts.end())
            throw SchemaError("device '" + requested + "' not present in flight log");
        return it->second;
    }
    if (parts.size() > 1) {
        std::string names;
        for (const auto &[name, part] : parts)
            names += (names.empty() ? "" : ", ") + name;
        throw SchemaError("flight log contains multiple devices (" + names +
                          "); choose one with --device");
    }
    return parts.begin()->second;
}

} // namespace detail

/// Run the `aglink` command line. Returns the process exit code; all output
/// goes to the supplied streams so tests can run subcommands in-process.
inline int run(const std::vector<std::string> &args, std::ostream &out = std::cout,
               std::ostream &err = std::cerr) {
    CLI::App app{"air-to-ground cellular link modeling toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    detail::ManifestBuilder manifest;
    manifest.arguments = args;

    // ---- predict-fspl ----
    auto *cmd_predict = app.add_subcommand(
        "predict-fspl", "Predict free-space SS-RSRP along a flight and score it when "
                        "measurements are present");
    std::string p_site, p_az, p_el, p_flight, p_out, p_report, p_colmap;
    cmd_predict->add_option("--site", p_site, "site config JSON")->required();
    cmd_predict->add_option("--pattern-az", p_az, "azimuth pattern-cut CSV")->required();
    cmd_predict->add_option("--pattern-el", p_el, "elevation pattern-cut CSV")->required();
    cmd_predict->add_option("--flight", p_flight, "flight log CSV")->required();
    cmd_predict->add_option("--out", p_out, "predictions CSV path")->required();
    cmd_predict->add_option("--report", p_report,
                            "accuracy report JSON path (default: <out>.report.json)");
    cmd_predict->add_option("--column-map", p_colmap, "JSON mapping external column names");

    // ---- fit ----
    auto *cmd_fit = app.add_subcommand(
        "fit", "Grid-search one model family on a flight log and save the best model");
    std::string f_flight, f_family, f_site, f_grid, f_device, f_out, f_leaderboard, f_colmap;
    std::uint64_t f_seed = 0;
    cmd_fit->add_option("--flight", f_flight, "flight log CSV with measured RSRP")->required();
    cmd_fit->add_option("--family", f_family, "model family: poly|forest|gbt|mlp")->required();
    cmd_fit->add_option("--site", f_site, "site config JSON (defines link geometry)")->required();
    cmd_fit->add_option("--grid", f_grid, "hyper-parameter grid JSON (default: built-in grid)");
    cmd_fit->add_option("--seed", f_seed, "seed for the 70-30 split and stochastic fits");
    cmd_fit->add_option("--device", f_device, "device to train on when the log has several");
    cmd_fit->add_option("--out", f_out, "model JSON path")->required();
    cmd_fit->add_option("--leaderboard", f_leaderboard,
                        "leaderboard JSON path (default: <out>.leaderboard.json)");
    cmd_fit->add_option("--column-map", f_colmap, "JSON mapping external column names");

    // ---- evaluate ----
    auto *cmd_eval = app.add_subcommand("evaluate", "Score a saved model against a flight log");
    std::string e_model, e_flight, e_site, e_device, e_out, e_colmap;
    cmd_eval->add_option("--model", e_model, "model JSON from `fit`")->required();
    cmd_eval->add_option("--flight", e_flight, "flight log CSV with measured RSRP")->required();
    cmd_eval->add_option("--site", e_site,
                         "site config JSON (default: the site stored in the model)");
    cmd_eval->add_option("--device", e_device, "device to evaluate when the log has several");
    cmd_eval->add_option("--out", e_out, "report JSON path")->required();
    cmd_eval->add_option("--column-map", e_colmap, "JSON mapping external column names");

    // ---- synth ----
    auto *cmd_synth = app.add_subcommand(
        "synth", "Generate a synthetic flight and fill it with noisy free-space RSRP");
    std::string s_spec, s_site, s_az, s_el, s_out;
    double s_noise = 0.0;
    std::uint64_t s_seed = 0;
    std::vector<double> s_plane;
    cmd_synth->add_option("--spec", s_spec, "trajectory spec JSON")->required();
    cmd_synth->add_option("--site", s_site, "site config JSON")->required();
    cmd_synth->add_option("--pattern-az", s_az, "azimuth pattern-cut CSV (default: isotropic)");
    cmd_synth->add_option("--pattern-el", s_el, "elevation pattern-cut CSV (default: isotropic)");
    cmd_synth->add_option("--noise-std", s_noise, "Gaussian noise std in dB (default 0)");
    cmd_synth->add_option("--seed", s_seed, "noise seed");
    cmd_synth
        ->add_option("--rank-plane", s_plane,
                     "plant rank labels from plane c_d c_az c_el intercept")
        ->expected(4);
    cmd_synth->add_option("--out", s_out, "flight log CSV path")->required();

    // ---- rank-lda ----
    auto *cmd_lda = app.add_subcommand(
        "rank-lda", "Fit the two-class channel-rank decision plane and report its confusion");
    std::string l_flight, l_site, l_out, l_colmap;
    cmd_lda->add_option("--flight", l_flight, "flight log CSV with rank labels")->required();
    cmd_lda->add_option("--site", l_site, "site config JSON (defines link geometry)")->required();
    cmd_lda->add_option("--out", l_out, "plane + confusion JSON path")->required();
    cmd_lda->add_option("--column-map", l_colmap, "JSON mapping external column names");

    // ---- compare-altitudes ----
    auto *cmd_cmp = app.add_subcommand(
        "compare-altitudes", "Pair two flights of the same pattern and summarize KPI differences");
    std::string c_low, c_high, c_kpi = "rsrp_dbm", c_out, c_colmap;
    cmd_cmp->add_option("--low", c_low, "lower-altitude flight CSV")->required();
    cmd_cmp->add_option("--high", c_high, "higher-altitude flight CSV")->required();
    cmd_cmp->add_option("--kpi", c_kpi, "KPI column to compare (default rsrp_dbm)");
    cmd_cmp->add_option("--out", c_out, "comparison JSON path")->required();
    cmd_cmp->add_option("--column-map", c_colmap, "JSON mapping external column names");

    // ---- heatmap ----
    auto *cmd_heat = app.add_subcommand(
        "heatmap", "Bin a KPI onto a square ENU grid for external plotting");
    std::string h_flight, h_site, h_kpi = "rsrp_dbm", h_out, h_colmap;
    double h_bin = 10.0;
    cmd_heat->add_option("--flight", h_flight, "flight log CSV")->required();
    cmd_heat->add_option("--kpi", h_kpi, "KPI column to aggregate (default rsrp_dbm)");
    cmd_heat->add_option("--bin-m", h_bin, "square bin edge length in meters (default 10)");
    cmd_heat->add_option("--site", h_site,
                         "site config JSON; its position anchors the grid (default: first row)");
    cmd_heat->add_option("--out", h_out, "heatmap CSV path")->required();
    cmd_heat->add_option("--column-map", h_colmap, "JSON mapping external column names");

    try {
        std::vector<const char *> argv;
        argv.push_back("aglink");
        for (const auto &a : args)
            argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    try {
        if (cmd_predict->parsed()) {
            manifest.command = "predict-fspl";
            const auto site = detail::load_site(p_site, manifest);
            const auto pattern = detail::load_pattern_files(p_az, p_el, manifest);
            const auto log = detail::load_flight(p_flight, manifest, p_colmap);

            const auto traj = linkbudget::predict_trajectory(site, pattern, log);
            for (const auto &fail : traj.failures)
                err << "warning: row " << fail.row << " skipped: " << fail.message << '\n';

            std::ostringstream csv;
            csv << "timestamp,d_m,azimuth_deg,elevation_deg,rsrp_pred_dbm\n";
            for (const auto &p : traj.predictions)
                csv << data::detail::format_double(p.timestamp_s) << ','
                    << data::detail::format_double(p.geometry.d_uav_m) << ','
                    << data::detail::format_double(p.geometry.azimuth_deg) << ','
                    << data::detail::format_double(p.geometry.elevation_deg) << ','
                    << data::detail::format_double(p.rsrp_dbm) << '\n';
            detail::write_file(p_out, csv.str());
            manifest.outputs.push_back(p_out);

            // score against measurements when the log carries any
            std::set<std::size_t> failed;
            for (const auto &fail : traj.failures)
                failed.insert(fail.row);
            std::vector<double> measured, predicted;
            std::size_t pi = 0;
            for (std::size_t i = 0; i < log.records.size(); ++i) {
                if (failed.count(i))
                    continue;
                if (log.records[i].rsrp_dbm) {
                    measured.push_back(*log.records[i].rsrp_dbm);
                    predicted.push_back(traj.predictions[pi].rsrp_dbm);
                }
                ++pi;
            }
            if (!measured.empty()) {
                const auto report = eval::metrics(measured, predicted);
                const std::string report_path =
                    p_report.empty() ? p_out + ".report.json" : p_report;
                detail::write_file(report_path,
                                   detail::report_to_json(report).dump(2) + "\n");
                manifest.outputs.push_back(report_path);
                out << eval::render_metrics_table({{"fspl", report}});
            } else {
                out << "predicted " << traj.predictions.size()
                    << " rows (no measured RSRP to score against)\n";
            }
            manifest.write(p_out);
            return kExitOk;
        }

        if (cmd_fit->parsed()) {
            manifest.command = "fit";
            manifest.seed = f_seed;
            const auto family = models::family_from_string(f_family);
            const auto site = detail::load_site(f_site, manifest);
            const auto full_log = detail::load_flight(f_flight, manifest, f_colmap);
            const auto log = detail::select_device(full_log, f_device);

            models::HyperGrid grid;
            if (!f_grid.empty()) {
                const std::string text = detail::read_file(f_grid);
                manifest.add_input(f_grid, text);
                grid = models::hyper_grid_from_json(
                    detail::parse_json(text, "grid '" + f_grid + "'"));
            }

            const auto dataset = models::dataset_from_log(log, site);
            if (dataset.size() < 2)
                throw SchemaError("flight log yields " + std::to_string(dataset.size()) +
                                  " usable samples; need at least 2");
            auto result = models::grid_search(dataset, grid, family, f_seed);
            if (result.best_index < 0) {
                err << "error: every configuration in the grid failed to fit\n";
                return kExitInternal;
            }

            models::TrainingMetadata meta;
            meta.data_hash = models::fnv1a64_hex(detail::read_file(f_flight));
            meta.split_seed = f_seed;
            meta.device = log.metadata.device;
            meta.n_train = result.n_train;
            meta.n_test = result.n_test;
            meta.site = site;
            meta.has_site = true;

            nlohmann::ordered_json model_json = models::model_to_json(result.best_model, meta);
            model_json["hyper_parameters"] =
                result.leaderboard[static_cast<std::size_t>(result.best_index)].config;
            detail::write_file(f_out, model_json.dump(2) + "\n");
            manifest.outputs.push_back(f_out);

            const std::string lb_path =
                f_leaderboard.empty() ? f_out + ".leaderboard.json" : f_leaderboard;
            detail::write_file(lb_path, detail::leaderboard_to_json(result).dump(2) + "\n");
            manifest.outputs.push_back(lb_path);

            const auto &best = result.leaderboard[static_cast<std::size_t>(result.best_index)];
            out << "best " << models::to_string(family) << " config: " << best.config.dump()
                << '\n'
                << eval::render_metrics_table({{"train", best.train}, {"test", best.test}});
            manifest.write(f_out);
            return kExitOk;
        }

        if (cmd_eval->parsed()) {
            manifest.command = "evaluate";
            const std::string model_text = detail::read_file(e_model);
            manifest.add_input(e_model, model_text);
            auto [model, meta] =
                models::model_from_json(detail::parse_json(model_text, "model '" + e_model + "'"));

            geo::BsSiteConfig site;
            if (!e_site.empty())
                site = detail::load_site(e_site, manifest);
            else if (meta.has_site)
                site = meta.site;
            else
                throw SchemaError("model carries no site config; pass --site");

            const auto full_log = detail::load_flight(e_flight, manifest, e_colmap);
            const auto log = detail::select_device(full_log, e_device);
            const auto dataset = models::dataset_from_log(log, site);
            if (dataset.empty())
                throw SchemaError("flight log has no rows with measured RSRP");

            std::vector<double> measured, predicted;
            for (const auto &s : dataset) {
                measured.push_back(s.rsrp_dbm);
                predicted.push_back(
                    models::predict_any(model, s.d_uav_m, s.elevation_deg, s.azimuth_deg));
            }
            const auto report = eval::metrics(measured, predicted);

            nlohmann::ordered_json j = detail::report_to_json(report);
            j["model"] = e_model;
            j["device"] = log.metadata.device;
            detail::write_file(e_out, j.dump(2) + "\n");
            manifest.outputs.push_back(e_out);
            out << eval::render_metrics_table({{"model", report}});
            manifest.write(e_out);
            return kExitOk;
        }

        if (cmd_synth->parsed()) {
            manifest.command = "synth";
            manifest.seed = s_seed;
            const std::string spec_text = detail::read_file(s_spec);
            manifest.add_input(s_spec, spec_text);
            const auto spec = data::trajectory_spec_from_json(
                detail::parse_json(spec_text, "trajectory spec '" + s_spec + "'"));
            const auto site = detail::load_site(s_site, manifest);
            antenna::AntennaPattern pattern = antenna::isotropic_pattern();
            if (!s_az.empty() || !s_el.empty()) {
                if (s_az.empty() || s_el.empty())
                    throw SchemaError("--pattern-az and --pattern-el must be given together");
                pattern = detail::load_pattern_files(s_az, s_el, manifest);
            }

            data::SynthConfig cfg;
            cfg.noise_std_db = s_noise;
            cfg.seed = s_seed;
            if (!s_plane.empty())
                cfg.rank_plane = data::RankPlane{s_plane[0], s_plane[1], s_plane[2], s_plane[3]};

            const auto positions = data::generate_trajectory(spec, site);
            const auto flight = data::synthesize_measurements(positions, site, pattern, cfg);
            std::ostringstream csv;
            data::save_flight_csv(flight, csv);
            detail::write_file(s_out, csv.str());
            manifest.outputs.push_back(s_out);
            out << "synthesized " << flight.size() << " rows along a " << spec.pattern
                << " trajectory\n";
            manifest.write(s_out);
            return kExitOk;
        }

        if (cmd_lda->parsed()) {
            manifest.command = "rank-lda";
            const auto site = detail::load_site(l_site, manifest);
            const auto log = detail::load_flight(l_flight, manifest, l_colmap);

            std::vector<models::LdaPoint> points;
            for (const auto &rec : log.records) {
                if (!rec.rank)
                    continue;
                try {
                    const auto g = geo::relative_geometry(rec.position, site);
                    points.push_back({g.d_uav_m, g.azimuth_deg, g.elevation_deg, *rec.rank});
                } catch (const DegenerateGeometry &) {
                }
            }
            const auto model = models::fit_lda(points);

            std::size_t misclassified = 0;
            std::map<int, std::pair<std::size_t, std::size_t>> per_class; // rank → (n, miss)
            for (const auto &p : points) {
                auto &[n, miss] = per_class[p.rank];
                ++n;
                if (models::classify_rank(model, p) != p.rank)
                    ++miss, ++misclassified;
            }

            nlohmann::ordered_json j = models::lda_to_json(model);
            j["n_points"] = points.size();
            j["n_misclassified"] = misclassified;
            j["misclassified_pct"] =
                100.0 * static_cast<double>(misclassified) / static_cast<double>(points.size());
            nlohmann::ordered_json classes = nlohmann::ordered_json::array();
            for (const auto &[rank, counts] : per_class)
                classes.push_back({{"rank", rank},
                                   {"n", counts.first},
                                   {"n_misclassified", counts.second}});
            j["classes"] = std::move(classes);
            detail::write_file(l_out, j.dump(2) + "\n");
            manifest.outputs.push_back(l_out);
            out << "plane: " << j["weights"].dump() << " bias " << model.bias << "; "
                << misclassified << '/' << points.size() << " misclassified\n";
            manifest.write(l_out);
            return kExitOk;
        }

        if (cmd_cmp->parsed()) {
            manifest.command = "compare-altitudes";
            const auto low = detail::load_flight(c_low, manifest, c_colmap);
            const auto high = detail::load_flight(c_high, manifest, c_colmap);
            const auto cmp = eval::compare_altitudes(low, high, c_kpi);

            nlohmann::ordered_json j;
            j["kpi"] = cmp.kpi;
            j["mean_diff"] = cmp.mean_diff;
            j["std_diff"] = cmp.std_diff;
            j["pct_greater"] = cmp.pct_greater;
            if (cmp.pct_equal)
                j["pct_equal"] = *cmp.pct_equal;
            j["n_pairs"] = cmp.n_pairs;
            j["alignment"] = cmp.alignment;
            detail::write_file(c_out, j.dump(2) + "\n");
            manifest.outputs.push_back(c_out);
            out << eval::render_altitude_table({cmp});
            manifest.write(c_out);
            return kExitOk;
        }

        if (cmd_heat->parsed()) {
            manifest.command = "heatmap";
            const auto log = detail::load_flight(h_flight, manifest, h_colmap);
            std::optional<geo::GeoPosition> origin;
            if (!h_site.empty())
                origin = detail::load_site(h_site, manifest).position;

            const auto grid = origin ? eval::heatmap(log, h_kpi, h_bin, *origin)
                                     : eval::heatmap(log, h_kpi, h_bin);
            std::ostringstream csv;
            csv << "east_m,north_m,value\n";
            for (const auto &[key, cell] : grid.cells)
                csv << data::detail::format_double((key.first + 0.5) * grid.bin_m) << ','
                    << data::detail::format_double((key.second + 0.5) * grid.bin_m) << ','
                    << data::detail::format_double(cell.first) << '\n';
            detail::write_file(h_out, csv.str());
            manifest.outputs.push_back(h_out);
            out << "binned " << grid.total_samples << " samples into " << grid.cells.size()
                << " cells\n";
            manifest.write(h_out);
            return kExitOk;
        }

        err << "error: no subcommand selected\n";
        return kExitBadInput;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

inline int run(int argc, const char *const *argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args);
}

} // namespace aglink::cli
