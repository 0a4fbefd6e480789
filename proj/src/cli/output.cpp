// wbansim - coexistence simulator for wireless body area networks
// Copyright (C) 2026 The wbansim Authors
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
// ------------------------------------------------------------------------

#include "wbansim/cli.hpp"
#include "wbansim/errors.hpp"
#include "wbansim/numeric.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wbansim::cli
{

namespace
{

constexpr std::string_view series_header = "t_s,sinr_db";
constexpr std::string_view curve_header = "threshold_db,value";
constexpr std::string_view packet_header = "t_s,tx,rx,path,signal_dbm,interf_dbm,sinr_db";

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    while (true)
    {
        const auto comma = line.find(',');
        out.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos)
            return out;
        line.remove_prefix(comma + 1);
    }
}

// Shared reader for `# key=value` preambles followed by a fixed header and
// numeric rows of `width` fields.
struct Table
{
    std::map<std::string, std::string> meta;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;
};

Table read_table(std::istream &in, std::string_view header)
{
    Table table;
    bool seen_header = false;
    std::string raw;
    std::size_t line_no = 0;
    const std::size_t width = split_fields(header).size();
    while (std::getline(in, raw))
    {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty())
            continue;
        if (!seen_header)
        {
            if (line.front() == '#')
            {
                const auto body = trim(line.substr(1));
                const auto eq = body.find('=');
                if (eq == std::string_view::npos || eq == 0)
                    throw ParseError("metadata line must be '# key=value'", line_no);
                table.meta[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
                continue;
            }
            if (line != header)
                throw ParseError("expected header '" + std::string(header) + "'", line_no);
            seen_header = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != width)
            throw ParseError("expected " + std::to_string(width) + " fields", line_no);
        table.rows.emplace_back(fields.begin(), fields.end());
        table.lines.push_back(line_no);
    }
    if (!seen_header)
        throw ParseError("missing header '" + std::string(header) + "'", line_no);
    return table;
}

double field_number(const Table &t, std::size_t row, std::size_t col, bool allow_infinite = false)
{
    double v = 0.0;
    if (!parse_double(t.rows[row][col], v) || std::isnan(v) || (!allow_infinite && !std::isfinite(v)))
        throw ParseError("invalid number '" + t.rows[row][col] + "'", t.lines[row]);
    return v;
}

} // namespace

std::string hash_hex(std::uint64_t hash)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void write_provenance(std::ostream &out, const Settings &settings)
{
    out << "# seed=" << settings.seed << '\n';
    out << "# config_hash=" << hash_hex(settings.config_hash) << '\n';
}

void write_series_csv(std::ostream &out, const link::SinrSeries &series, const Settings &settings)
{
    write_provenance(out, settings);
    out << "# scheme=" << link::to_string(series.scheme) << '\n';
    out << "# stream=" << series.stream << '\n';
    out << "# dt_packet_s=" << format_double(series.dt_packet) << '\n';
    out << series_header << '\n';
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << format_double(series.times[i]) << ',' << format_double(series.values[i]) << '\n';
}

link::SinrSeries read_series_csv(std::istream &in)
{
    const auto t = read_table(in, series_header);
    if (t.rows.empty())
        throw ValidationError("series file has no samples");
    link::SinrSeries s;
    const auto scheme = t.meta.find("scheme");
    const auto dt = t.meta.find("dt_packet_s");
    if (scheme == t.meta.end() || dt == t.meta.end())
        throw ValidationError("series file lacks scheme or dt_packet_s metadata");
    s.scheme = link::parse_scheme(scheme->second);
    if (!parse_double(dt->second, s.dt_packet) || !(s.dt_packet > 0.0))
        throw ValidationError("invalid dt_packet_s '" + dt->second + "'");
    if (const auto stream = t.meta.find("stream"); stream != t.meta.end())
        s.stream = stream->second;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        s.times.push_back(field_number(t, i, 0));
        s.values.push_back(field_number(t, i, 1));
    }
    return s;
}

void write_curve_csv(std::ostream &out, const stats::ThresholdCurve &curve, const Settings &settings)
{
    write_provenance(out, settings);
    out << "# kind=" << stats::to_string(curve.kind) << '\n';
    out << curve_header << '\n';
    for (std::size_t i = 0; i < curve.values.size(); ++i)
        out << format_double(curve.thresholds_db[i]) << ',' << format_double(curve.values[i]) << '\n';
}

stats::ThresholdCurve read_curve_csv(std::istream &in, stats::CurveKind kind)
{
    const auto t = read_table(in, curve_header);
    stats::ThresholdCurve c;
    c.kind = kind;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        c.thresholds_db.push_back(field_number(t, i, 0));
        c.values.push_back(field_number(t, i, 1, true));
    }
    c.validate();
    return c;
}

PowerLog read_packet_log_csv(std::istream &in)
{
    const auto t = read_table(in, packet_header);
    PowerLog log;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        log.signal_dbm.push_back(field_number(t, i, 4));
        log.interference_dbm.push_back(field_number(t, i, 5, true));
    }
    return log;
}

void write_file(const fs::path &path, const std::function<void(std::ostream &)> &writer)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ValidationError("cannot write " + tmp.string());
        writer(out);
        out.flush();
        if (!out)
            throw ValidationError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

// --- Manifest ----------------------------------------------------------------------

Manifest::Manifest(fs::path dir, std::string command, std::string config_name, const Settings &settings)
    : dir_(std::move(dir)), command_(std::move(command)), config_name_(std::move(config_name)),
      seed_(settings.seed), config_hash_(settings.config_hash)
{
    flush(false);
}

void Manifest::complete_set(const std::string &name)
{
    std::lock_guard lock(mutex_);
    done_.push_back(name);
    std::sort(done_.begin(), done_.end());
    flush(false);
}

void Manifest::finish()
{
    std::lock_guard lock(mutex_);
    flush(true);
}

void Manifest::flush(bool complete)
{
    nlohmann::ordered_json j;
    j["format"] = "wbansim-manifest/1";
    j["command"] = command_;
    j["config"] = config_name_;
    j["output_dir"] = ".";
    j["seed"] = seed_;
    j["config_hash"] = hash_hex(config_hash_);
    j["status"] = complete ? "complete" : "incomplete";
    j["completed_sets"] = done_;
    write_file(dir_ / "manifest.json", [&](std::ostream &out) { out << j.dump(2) << '\n'; });
}

} // namespace wbansim::cli
