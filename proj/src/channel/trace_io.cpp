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

#include "wbansim/channel.hpp"
#include "wbansim/errors.hpp"
#include "wbansim/numeric.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace wbansim::channel
{

namespace
{

constexpr std::string_view header = "time_s,gain_db";
constexpr double step_tol = 1e-6;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

ChannelTrace read_trace(std::istream &in, const std::optional<LinkId> &link)
{
    Metadata meta;
    std::vector<double> times;
    std::vector<double> gains;
    std::vector<std::size_t> row_lines;
    bool seen_header = false;

    std::string raw;
    std::size_t line_no = 0;
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
                meta[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
                continue;
            }
            if (line != header)
                throw ParseError("expected header '" + std::string(header) + "'", line_no);
            seen_header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("expected two comma-separated fields", line_no);
        double t = 0.0;
        double g = 0.0;
        if (!parse_double(line.substr(0, comma), t) || !std::isfinite(t))
            throw ParseError("invalid time value", line_no);
        if (!parse_double(line.substr(comma + 1), g) || !std::isfinite(g))
            throw ParseError("invalid gain value", line_no);
        times.push_back(t);
        gains.push_back(g);
        row_lines.push_back(line_no);
    }
    if (!seen_header)
        throw ParseError("missing header '" + std::string(header) + "'", line_no);
    if (gains.empty())
        throw ParseError("trace has no samples", line_no);

    std::optional<double> declared_dt;
    if (auto it = meta.find("dt_s"); it != meta.end())
    {
        double v = 0.0;
        if (!parse_double(it->second, v) || !(v > 0.0))
            throw ParseError("metadata dt_s must be a positive number", 0);
        declared_dt = v;
    }

    double dt = 0.0;
    const std::size_t n = times.size();
    if (n >= 2)
    {
        dt = (times.back() - times.front()) / static_cast<double>(n - 1);
        if (!(dt > 0.0))
            throw ParseError("time column must be strictly increasing", row_lines[1]);
        for (std::size_t k = 1; k < n; ++k)
        {
            const double step = times[k] - times[k - 1];
            if (std::abs(step - dt) > step_tol * dt)
                throw ParseError("time step deviates from the constant sampling interval", row_lines[k]);
        }
        if (declared_dt)
        {
            if (std::abs(*declared_dt - dt) > step_tol * dt)
                throw ParseError("metadata dt_s disagrees with the time column", 0);
            dt = *declared_dt;
        }
    }
    else
    {
        if (!declared_dt)
            throw ParseError("single-sample trace needs a '# dt_s=' metadata line", 0);
        dt = *declared_dt;
    }

    LinkId id;
    if (link)
        id = *link;
    else
    {
        auto src = meta.find("source");
        auto dst = meta.find("destination");
        if (src == meta.end() || dst == meta.end())
            throw ParseError("trace metadata lacks 'source'/'destination' and no link id was given", 0);
        id = LinkId{src->second, dst->second};
    }
    meta.erase("source");
    meta.erase("destination");
    meta.erase("dt_s");

    return ChannelTrace(std::move(id), times.front(), dt, std::move(gains), std::move(meta));
}

ChannelTrace load_trace(const std::filesystem::path &path, const std::optional<LinkId> &link)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open trace file " + path.string(), 0);
    try
    {
        return read_trace(in, link);
    }
    catch (const ParseError &e)
    {
        throw ParseError(path.string(), e);
    }
}

void write_trace(std::ostream &out, const ChannelTrace &trace)
{
    out << "# source=" << trace.link().source << '\n';
    out << "# destination=" << trace.link().destination << '\n';
    out << "# dt_s=" << format_double(trace.dt()) << '\n';
    for (const auto &[key, value] : trace.metadata())
        out << "# " << key << '=' << value << '\n';
    out << header << '\n';
    const auto s = trace.samples();
    for (std::size_t k = 0; k < s.size(); ++k)
        out << format_double(trace.time_at(k)) << ',' << format_double(s[k]) << '\n';
}

void save_trace(const std::filesystem::path &path, const ChannelTrace &trace)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write trace file " + path.string());
    write_trace(out, trace);
    if (!out)
        throw ValidationError("write failed for " + path.string());
}

} // namespace wbansim::channel
