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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "aglink/errors.hpp"
#include "aglink/geo.hpp"

namespace aglink::data {

/// One timestamped measurement row. KPI fields are nullable: an empty CSV
/// cell stays missing and never contaminates statistics downstream.
struct KpiRecord {
    double timestamp_s = 0.0;
    geo::GeoPosition position;
    std::string device;
    std::optional<int> pci;
    std::optional<double> rsrp_dbm;
    std::optional<double> rsrq_db;
    std::optional<double> sinr_db;
    std::optional<int> cqi;  // 0..15
    std::optional<int> rank; // >= 1
    std::optional<double> throughput_mbps;
    std::map<std::string, std::string> extras; // unrecognized columns, verbatim
};

struct FlightLogMetadata {
    std::string device;
    std::string altitude_label;
    std::string trajectory_label;
};

/// Time-sorted sequence of KPI records plus campaign labels.
struct FlightLog {
    std::vector<KpiRecord> records;
    FlightLogMetadata metadata;
    std::size_t out_of_order_rows = 0; // rows re-sorted during load

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

/// Maps external column names onto the canonical schema, e.g.
/// {"Latitude": "lat"}. Unmapped names pass through unchanged.
using ColumnMap = std::map<std::string, std::string>;

namespace detail {

inline const std::vector<std::string> &canonical_columns() {
    static const std::vector<std::string> cols = {
        "timestamp", "lat",  "lon",  "alt_m", "device",          "pci",
        "rsrp_dbm",  "rsrq_db", "sinr_db", "cqi",  "rank", "throughput_mbps"};
    return cols;
}

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string &cell, const char *col, long row) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (cell.find_first_not_of(" \t", pos) != std::string::npos)
            throw std::invalid_argument("trailing garbage");
        return v;
    } catch (const std::exception &) {
        throw ParseError(std::string("column '") + col + "': bad value '" + cell + "'", row);
    }
}

inline int parse_int(const std::string &cell, const char *col, long row) {
    const double v = parse_double(cell, col, row);
    const double r = std::nearbyint(v);
    if (std::abs(v - r) > 1e-9)
        throw ParseError(std::string("column '") + col + "': expected integer, got '" + cell + "'",
                         row);
    return static_cast<int>(r);
}

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Load a flight log from CSV. Required columns: timestamp, lat, lon, alt_m,
/// device; KPI columns optional, empty cell = missing. Unknown columns are
/// preserved verbatim in each record's extras. Rows are sorted by timestamp;
/// the count of out-of-order rows is reported on the log.
inline FlightLog load_flight_csv(std::istream &in, const ColumnMap &column_map = {}) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty flight log");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();

    std::vector<std::string> header = detail::split_csv_line(line);
    for (auto &name : header) {
        name = detail::trim(name);
        if (auto it = column_map.find(name); it != column_map.end())
            name = it->second;
    }

    std::map<std::string, std::size_t> col_index;
    for (std::size_t i = 0; i < header.size(); ++i)
        col_index[header[i]] = i;

    std::vector<std::string> missing;
    for (const char *required : {"timestamp", "lat", "lon", "alt_m", "device"})
        if (!col_index.count(required))
            missing.push_back(required);
    if (!missing.empty()) {
        std::string msg = "missing required column(s):";
        for (const auto &m : missing)
            msg += " " + m;
        throw SchemaError(msg);
    }

    const std::set<std::string> known(detail::canonical_columns().begin(),
                                      detail::canonical_columns().end());

    FlightLog log;
    long row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " cells, got " +
                                 std::to_string(cells.size()),
                             row_no);

        auto cell = [&](const char *name) -> std::string {
            const auto it = col_index.find(name);
            return it == col_index.end() ? std::string() : detail::trim(cells[it->second]);
        };
        auto opt_double = [&](const char *name) -> std::optional<double> {
            const std::string c = cell(name);
            if (c.empty())
                return std::nullopt;
            return detail::parse_double(c, name, row_no);
        };
        auto opt_int = [&](const char *name) -> std::optional<int> {
            const std::string c = cell(name);
            if (c.empty())
                return std::nullopt;
            return detail::parse_int(c, name, row_no);
        };

        KpiRecord rec;
        rec.timestamp_s = detail::parse_double(cell("timestamp"), "timestamp", row_no);
        rec.position.latitude_deg = detail::parse_double(cell("lat"), "lat", row_no);
        rec.position.longitude_deg = detail::parse_double(cell("lon"), "lon", row_no);
        rec.position.altitude_m = detail::parse_double(cell("alt_m"), "alt_m", row_no);
        rec.device = cell("device");
        rec.pci = opt_int("pci");
        rec.rsrp_dbm = opt_double("rsrp_dbm");
        rec.rsrq_db = opt_double("rsrq_db");
        rec.sinr_db = opt_double("sinr_db");
        rec.cqi = opt_int("cqi");
        rec.rank = opt_int("rank");
        rec.throughput_mbps = opt_double("throughput_mbps");
        for (std::size_t i = 0; i < header.size(); ++i)
            if (!known.count(header[i]))
                rec.extras[header[i]] = cells[i];

        if (!std::isfinite(rec.timestamp_s))
            throw ParseError("non-finite timestamp", row_no);
        try {
            rec.position.validate();
        } catch (const DomainError &e) {
            throw ParseError(e.what(), row_no);
        }
        if (rec.cqi && (*rec.cqi < 0 || *rec.cqi > 15))
            throw ParseError("cqi outside [0, 15]", row_no);
        if (rec.rank && *rec.rank < 1)
            throw ParseError("rank must be >= 1", row_no);

        log.records.push_back(std::move(rec));
    }

    for (std::size_t i = 1, newest = 0; i < log.records.size(); ++i) {
        if (log.records[i].timestamp_s < log.records[newest].timestamp_s)
            ++log.out_of_order_rows; // must move ahead of an earlier row
        else
            newest = i;
    }
    std::stable_sort(log.records.begin(), log.records.end(),
                     [](const KpiRecord &a, const KpiRecord &b) {
                         return a.timestamp_s < b.timestamp_s;
                     });

    // single-device logs carry the device label in metadata
    if (!log.records.empty()) {
        const std::string &d0 = log.records.front().device;
        const bool uniform = std::all_of(log.records.begin(), log.records.end(),
                                         [&](const KpiRecord &r) { return r.device == d0; });
        if (uniform)
            log.metadata.device = d0;
    }
    return log;
}

/// Write a flight log as canonical CSV. Extras columns (if any) follow the
/// canonical ones, sorted by name; loading the output reproduces every
/// recognized field exactly.
inline void save_flight_csv(const FlightLog &log, std::ostream &out) {
    std::set<std::string> extra_cols;
    for (const auto &rec : log.records)
        for (const auto &[k, v] : rec.extras)
            extra_cols.insert(k);

    out << "timestamp,lat,lon,alt_m,device,pci,rsrp_dbm,rsrq_db,sinr_db,cqi,rank,throughput_mbps";
    for (const auto &c : extra_cols)
        out << ',' << c;
    out << '\n';

    auto put_opt_d = [&](const std::optional<double> &v) {
        out << ',';
        if (v)
            out << detail::format_double(*v);
    };
    auto put_opt_i = [&](const std::optional<int> &v) {
        out << ',';
        if (v)
            out << *v;
    };

    for (const auto &rec : log.records) {
        out << detail::format_double(rec.timestamp_s) << ','
            << detail::format_double(rec.position.latitude_deg) << ','
            << detail::format_double(rec.position.longitude_deg) << ','
            << detail::format_double(rec.position.altitude_m) << ',' << rec.device;
        put_opt_i(rec.pci);
        put_opt_d(rec.rsrp_dbm);
        put_opt_d(rec.rsrq_db);
        put_opt_d(rec.sinr_db);
        put_opt_i(rec.cqi);
        put_opt_i(rec.rank);
        put_opt_d(rec.throughput_mbps);
        for (const auto &c : extra_cols) {
            out << ',';
            if (auto it = rec.extras.find(c); it != rec.extras.end())
                out << it->second;
        }
        out << '\n';
    }
}

/// Split a log by device identifier. Order within each sub-log is preserved
/// and the union of the parts is the input.
inline std::map<std::string, FlightLog> partition_by_device(const FlightLog &log) {
    std::map<std::string, FlightLog> parts;
    for (const auto &rec : log.records) {
        FlightLog &part = parts[rec.device];
        if (part.records.empty()) {
            part.metadata = log.metadata;
            part.metadata.device = rec.device;
        }
        part.records.push_back(rec);
    }
    return parts;
}

} // namespace aglink::data
