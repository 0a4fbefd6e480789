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

#include <fstream>
#include <sstream>

namespace wbansim::cli
{

namespace
{

constexpr std::array<link::Scheme, 3> schemes{link::Scheme::single_link, link::Scheme::opportunistic,
                                              link::Scheme::selection_combining};
constexpr std::array<std::string_view, 2> sources{"empirical", "theoretical"};

} // namespace

void cmd_report(const Settings &settings, const fs::path &out, const std::string &config_name)
{
    const fs::path stats_root = out / "stats";
    const fs::path root = out / "report";
    Manifest manifest(root, "report", config_name, settings);

    for (auto kind : {stats::CurveKind::outage, stats::CurveKind::lcr, stats::CurveKind::aod})
    {
        std::ostringstream table;
        write_provenance(table, settings);
        table << "variant,hub,shadowing,scheme,source,threshold_db,value\n";
        for (const auto &variant : settings.variants())
        {
            const auto dir = stats_root / variant.name() / "average";
            if (!fs::is_directory(dir))
                throw ValidationError("missing stats output " + dir.string() + "; run the 'stats' subcommand first");
            for (auto scheme : schemes)
                for (auto source : sources)
                {
                    const auto path = dir / ("curve_" + std::string(stats::to_string(kind)) + "_" +
                                             std::string(link::to_string(scheme)) + "_" + std::string(source) +
                                             ".csv");
                    if (!fs::exists(path))
                        continue;
                    std::ifstream in(path);
                    stats::ThresholdCurve curve;
                    try
                    {
                        curve = read_curve_csv(in, kind);
                    }
                    catch (const ParseError &e)
                    {
                        throw ParseError(path.string(), e);
                    }
                    for (std::size_t i = 0; i < curve.values.size(); ++i)
                        table << variant.name() << ',' << scenario::to_string(variant.hub) << ','
                              << channel::to_string(variant.shadowing) << ',' << link::to_string(scheme) << ','
                              << source << ',' << format_double(curve.thresholds_db[i]) << ','
                              << format_double(curve.values[i]) << '\n';
                }
        }
        write_file(root / ("fig_" + std::string(stats::to_string(kind)) + ".csv"),
                   [&](std::ostream &os) { os << table.str(); });
    }

    std::ostringstream thresholds;
    write_provenance(thresholds, settings);
    thresholds << "variant,hub,shadowing,scheme,probability,threshold_db,gain_over_single_link_db\n";
    for (const auto &variant : settings.variants())
    {
        const auto path = stats_root / variant.name() / "average" / "summary.json";
        std::ifstream in(path);
        if (!in)
            throw ValidationError("missing " + path.string());
        nlohmann::json summary;
        try
        {
            summary = nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ValidationError(path.string() + ": " + e.what());
        }
        const auto &by_scheme = summary.at("schemes");
        std::optional<double> baseline;
        if (by_scheme.contains("single_link"))
            baseline = by_scheme.at("single_link").at("outage_threshold_db").at("value").get<double>();
        for (auto scheme : schemes)
        {
            const std::string name(link::to_string(scheme));
            if (!by_scheme.contains(name))
                continue;
            const auto &t = by_scheme.at(name).at("outage_threshold_db");
            const double value = t.at("value").get<double>();
            thresholds << variant.name() << ',' << scenario::to_string(variant.hub) << ','
                       << channel::to_string(variant.shadowing) << ',' << name << ','
                       << format_double(t.at("probability").get<double>()) << ',' << format_double(value) << ','
                       << (baseline ? format_double(value - *baseline) : std::string()) << '\n';
        }
    }
    write_file(root / "outage_thresholds.csv", [&](std::ostream &os) { os << thresholds.str(); });
    manifest.finish();
}

} // namespace wbansim::cli
