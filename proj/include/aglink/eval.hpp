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
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aglink/errors.hpp"
#include "aglink/flightlog.hpp"
#include "aglink/geo.hpp"

namespace aglink::eval {

/// Prediction-accuracy summary. mape_pct and r2 are NaN when undefined
/// (a zero measured value and zero target variance, respectively).
struct EvalReport {
    double mae_db = 0.0;
    double rmse_db = 0.0;
    double mape_pct = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

/// MAE/RMSE/MAPE/R² of predictions against measurements. MAPE divides by
/// the magnitude of the measured value (dBm scale), so a zero measurement is
/// a domain error. R² of a constant target is reported as NaN rather than
/// inventing a convention.
inline EvalReport metrics(const std::vector<double> &measured,
                          const std::vector<double> &predicted) {
    if (measured.size() != predicted.size())
        throw LengthMismatch("measured has " + std::to_string(measured.size()) +
                             " entries, predicted has " + std::to_string(predicted.size()));
    if (measured.empty())
        throw LengthMismatch("metrics require at least one sample");

    const std::size_t n = measured.size();
    double sum_abs = 0.0, sum_sq = 0.0, sum_ape = 0.0, sum_meas = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (measured[i] == 0.0)
            throw DomainError("measured value of 0 makes MAPE undefined (sample " +
                              std::to_string(i) + ")");
        const double e = measured[i] - predicted[i];
        sum_abs += std::abs(e);
        sum_sq += e * e;
        sum_ape += std::abs(e) / std::abs(measured[i]);
        sum_meas += measured[i];
    }
    const double mean_meas = sum_meas / static_cast<double>(n);
    double sst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sst += (measured[i] - mean_meas) * (measured[i] - mean_meas);

    EvalReport r;
    r.n = n;
    r.mae_db = sum_abs / static_cast<double>(n);
    r.rmse_db = std::sqrt(sum_sq / static_cast<double>(n));
    r.mape_pct = 100.0 * sum_ape / static_cast<double>(n);
    r.r2 = sst > 0.0 ? 1.0 - sum_sq / sst : std::numeric_limits<double>::quiet_NaN();
    return r;
}

/// Histogram of prediction errors plus a moment-based Gaussian fit
/// (sample mean, sample std with the n−1 denominator).
struct ErrorHistogram {
    std::vector<double> bin_edges; // size counts.size() + 1
    std::vector<std::size_t> counts;
    double fitted_mean_db = 0.0;
    double fitted_std_db = 0.0;
};

inline ErrorHistogram error_histogram(const std::vector<double> &errors, double bin_width = 1.0) {
    if (errors.empty())
        throw DomainError("error_histogram requires at least one error");
    if (!(bin_width > 0.0))
        throw DomainError("bin_width must be positive");

    ErrorHistogram h;
    double sum = 0.0;
    for (double e : errors)
        sum += e;
    h.fitted_mean_db = sum / static_cast<double>(errors.size());
    double ss = 0.0;
    for (double e : errors)
        ss += (e - h.fitted_mean_db) * (e - h.fitted_mean_db);
    h.fitted_std_db =
        errors.size() > 1 ? std::sqrt(ss / (static_cast<double>(errors.size()) - 1.0)) : 0.0;

    const double lo_val = *std::min_element(errors.begin(), errors.end());
    const double hi_val = *std::max_element(errors.begin(), errors.end());
    // bins anchored at integer multiples of the width so edges are stable
    const long lo = static_cast<long>(std::floor(lo_val / bin_width));
    const long hi = static_cast<long>(std::floor(hi_val / bin_width));
    const std::size_t n_bins = static_cast<std::size_t>(hi - lo + 1);
    h.counts.assign(n_bins, 0);
    h.bin_edges.resize(n_bins + 1);
    for (std::size_t b = 0; b <= n_bins; ++b)
        h.bin_edges[b] = (lo + static_cast<long>(b)) * bin_width;
    for (double e : errors) {
        long b = static_cast<long>(std::floor(e / bin_width)) - lo;
        if (b < 0)
            b = 0;
        if (b >= static_cast<long>(n_bins))
            b = static_cast<long>(n_bins) - 1;
        ++h.counts[static_cast<std::size_t>(b)];
    }
    return h;
}

/// Paired low-vs-high altitude statistics for one KPI.
struct AltitudeComparison {
    std::string kpi;
    double mean_diff = 0.0; // mean(low − high)
    double std_diff = 0.0;  // sample std of (low − high)
    double pct_greater = 0.0;
    std::optional<double> pct_equal; // integer-valued KPIs only
    std::size_t n_pairs = 0;
    std::string alignment; // "position" or "time"
};

namespace detail {

inline std::optional<double> kpi_value(const data::KpiRecord &rec, const std::string &kpi) {
    if (kpi == "rsrp_dbm")
        return rec.rsrp_dbm;
    if (kpi == "rsrq_db")
        return rec.rsrq_db;
    if (kpi == "sinr_db")
        return rec.sinr_db;
    if (kpi == "throughput_mbps")
        return rec.throughput_mbps;
    if (kpi == "cqi")
        return rec.cqi ? std::optional<double>(*rec.cqi) : std::nullopt;
    if (kpi == "rank")
        return rec.rank ? std::optional<double>(*rec.rank) : std::nullopt;
    if (kpi == "pci")
        return rec.pci ? std::optional<double>(*rec.pci) : std::nullopt;
    throw UnknownKpi("unknown KPI '" + kpi + "'");
}

inline bool kpi_is_integer(const std::string &kpi) {
    return kpi == "cqi" || kpi == "rank" || kpi == "pci";
}

} // namespace detail

inline constexpr double kAltitudeGateM = 15.0;

/// Pair each low-altitude sample with a high-altitude sample and summarize
/// the per-pair KPI differences. Primary alignment is nearest horizontal
/// position within a 15 m gate; if that pairs less than half of the
/// low-altitude rows, alignment falls back to normalized elapsed time.
inline AltitudeComparison compare_altitudes(const data::FlightLog &log_low,
                                            const data::FlightLog &log_high,
                                            const std::string &kpi) {
    detail::kpi_value(data::KpiRecord{}, kpi); // validates the KPI name
    if (log_low.empty() || log_high.empty())
        throw NoOverlap("both flight logs must be nonempty");

    const geo::GeoPosition origin = log_low.records.front().position;
    std::vector<std::pair<double, double>> high_en;
    high_en.reserve(log_high.size());
    for (const auto &rec : log_high.records) {
        const geo::Enu e = geo::geodetic_to_enu(rec.position, origin);
        high_en.emplace_back(e.east_m, e.north_m);
    }

    std::vector<std::pair<double, double>> pairs; // (low value, high value)
    auto collect_position_pairs = [&]() {
        pairs.clear();
        std::size_t with_kpi = 0;
        for (const auto &rec : log_low.records) {
            const auto v_low = detail::kpi_value(rec, kpi);
            if (!v_low)
                continue;
            ++with_kpi;
            const geo::Enu e = geo::geodetic_to_enu(rec.position, origin);
            double best_d2 = kAltitudeGateM * kAltitudeGateM;
            std::optional<double> best_val;
            for (std::size_t j = 0; j < high_en.size(); ++j) {
                const double de = high_en[j].first - e.east_m;
                const double dn = high_en[j].second - e.north_m;
                const double d2 = de * de + dn * dn;
                if (d2 <= best_d2) {
                    const auto v_high = detail::kpi_value(log_high.records[j], kpi);
                    if (v_high) {
                        best_d2 = d2;
                        best_val = *v_high;
                    }
                }
            }
            if (best_val)
                pairs.emplace_back(*v_low, *best_val);
        }
        return with_kpi;
    };
    auto collect_time_pairs = [&]() {
        pairs.clear();
        const double t0l = log_low.records.front().timestamp_s;
        const double t1l = log_low.records.back().timestamp_s;
        const double t0h = log_high.records.front().timestamp_s;
        const double t1h = log_high.records.back().timestamp_s;
        const double span_l = t1l > t0l ? t1l - t0l : 1.0;
        const double span_h = t1h > t0h ? t1h - t0h : 1.0;
        for (const auto &rec : log_low.records) {
            const auto v_low = detail::kpi_value(rec, kpi);
            if (!v_low)
                continue;
            const double u = (rec.timestamp_s - t0l) / span_l; // 0..1
            const double target = t0h + u * span_h;
            double best_dt = std::numeric_limits<double>::infinity();
            std::optional<double> best_val;
            for (const auto &hrec : log_high.records) {
                const auto v_high = detail::kpi_value(hrec, kpi);
                if (!v_high)
                    continue;
                const double dt = std::abs(hrec.timestamp_s - target);
                if (dt < best_dt) {
                    best_dt = dt;
                    best_val = *v_high;
                }
            }
            if (best_val)
                pairs.emplace_back(*v_low, *best_val);
        }
    };

    AltitudeComparison cmp;
    cmp.kpi = kpi;
    const std::size_t with_kpi = collect_position_pairs();
    if (with_kpi > 0 && pairs.size() * 2 >= with_kpi) {
        cmp.alignment = "position";
    } else {
        collect_time_pairs();
        cmp.alignment = "time";
    }
    if (pairs.size() < 10)
        throw NoOverlap("alignment paired only " + std::to_string(pairs.size()) +
                        " samples (need 10)");

    const double n = static_cast<double>(pairs.size());
    double sum = 0.0;
    std::size_t greater = 0, equal = 0;
    for (const auto &[lo, hi] : pairs) {
        sum += lo - hi;
        if (lo > hi)
            ++greater;
        if (lo == hi)
            ++equal;
    }
    cmp.mean_diff = sum / n;
    double ss = 0.0;
    for (const auto &[lo, hi] : pairs)
        ss += (lo - hi - cmp.mean_diff) * (lo - hi - cmp.mean_diff);
    cmp.std_diff = pairs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    cmp.pct_greater = 100.0 * static_cast<double>(greater) / n;
    if (detail::kpi_is_integer(kpi))
        cmp.pct_equal = 100.0 * static_cast<double>(equal) / n;
    cmp.n_pairs = pairs.size();
    return cmp;
}

/// Square-binned spatial aggregate of one KPI in the site's ENU frame.
struct HeatmapGrid {
    double bin_m = 0.0;
    // key = (east index, north index); value = (mean, count)
    std::map<std::pair<long, long>, std::pair<double, std::size_t>> cells;
    std::size_t total_samples = 0;
};

/// Bin a flight log onto a square ENU grid anchored at `origin` and average
/// the KPI per cell. Rows missing the KPI are not counted.
inline HeatmapGrid heatmap(const data::FlightLog &log, const std::string &kpi, double bin_m,
                           const geo::GeoPosition &origin) {
    detail::kpi_value(data::KpiRecord{}, kpi); // validates the KPI name
    if (log.empty())
        throw DomainError("heatmap requires a nonempty log");
    if (!(bin_m > 0.0))
        throw DomainError("bin size must be positive");

    HeatmapGrid grid;
    grid.bin_m = bin_m;
    std::map<std::pair<long, long>, std::pair<double, std::size_t>> sums;
    for (const auto &rec : log.records) {
        const auto v = detail::kpi_value(rec, kpi);
        if (!v)
            continue;
        const geo::Enu e = geo::geodetic_to_enu(rec.position, origin);
        const std::pair<long, long> key = {static_cast<long>(std::floor(e.east_m / bin_m)),
                                           static_cast<long>(std::floor(e.north_m / bin_m))};
        auto &[sum, count] = sums[key];
        sum += *v;
        ++count;
    }
    for (const auto &[key, sc] : sums) {
        grid.cells[key] = {sc.first / static_cast<double>(sc.second), sc.second};
        grid.total_samples += sc.second;
    }
    return grid;
}

inline HeatmapGrid heatmap(const data::FlightLog &log, const std::string &kpi, double bin_m) {
    if (log.empty())
        throw DomainError("heatmap requires a nonempty log");
    return heatmap(log, kpi, bin_m, log.records.front().position);
}

/// Flag each row whose RSRQ sits in the poor region (strictly below −15 dB).
inline std::vector<std::pair<double, bool>> rsrq_poor_flags(const data::FlightLog &log) {
    bool any = false;
    for (const auto &rec : log.records)
        if (rec.rsrq_db) {
            any = true;
            break;
        }
    if (!any)
        throw MissingColumn("flight log carries no RSRQ values");
    std::vector<std::pair<double, bool>> out;
    out.reserve(log.size());
    for (const auto &rec : log.records)
        if (rec.rsrq_db)
            out.emplace_back(rec.timestamp_s, *rec.rsrq_db < -15.0);
    return out;
}

namespace detail {

inline std::string fixed(double v, int prec) {
    if (std::isnan(v))
        return "n/a";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << v;
    return os.str();
}

} // namespace detail

/// Aligned-column text rendering of one or more named reports.
inline std::string render_metrics_table(
    const std::vector<std::pair<std::string, EvalReport>> &rows) {
    std::size_t label_w = 5;
    for (const auto &[name, r] : rows)
        label_w = std::max(label_w, name.size());
    std::ostringstream os;
    os << std::string(label_w, ' ') << "  MAE [dB]  RMSE [dB]  MAPE [%]        R2       n\n";
    for (const auto &[name, r] : rows) {
        os << name << std::string(label_w - name.size(), ' ');
        auto cell = [&](const std::string &s, std::size_t w) {
            os << std::string(w > s.size() ? w - s.size() : 1, ' ') << s;
        };
        cell(detail::fixed(r.mae_db, 2), 10);
        cell(detail::fixed(r.rmse_db, 2), 11);
        cell(detail::fixed(r.mape_pct, 2), 10);
        cell(detail::fixed(r.r2, 4), 10);
        cell(std::to_string(r.n), 8);
        os << '\n';
    }
    return os.str();
}

inline std::string render_altitude_table(const std::vector<AltitudeComparison> &rows) {
    std::size_t label_w = 3;
    for (const auto &c : rows)
        label_w = std::max(label_w, c.kpi.size());
    std::ostringstream os;
    os << std::string(label_w, ' ')
       << "  mean(lo-hi)  std(lo-hi)  pct lo>hi  pct equal   pairs  alignment\n";
    for (const auto &c : rows) {
        os << c.kpi << std::string(label_w - c.kpi.size(), ' ');
        auto cell = [&](const std::string &s, std::size_t w) {
            os << std::string(w > s.size() ? w - s.size() : 1, ' ') << s;
        };
        cell(detail::fixed(c.mean_diff, 2), 13);
        cell(detail::fixed(c.std_diff, 2), 12);
        cell(detail::fixed(c.pct_greater, 2), 11);
        cell(c.pct_equal ? detail::fixed(*c.pct_equal, 2) : "n/a", 11);
        cell(std::to_string(c.n_pairs), 8);
        os << "  " << c.alignment << '\n';
    }
    return os.str();
}

} // namespace aglink::eval
