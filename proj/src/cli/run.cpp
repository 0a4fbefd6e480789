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
#include "wbansim/mac.hpp"

#include <algorithm>

namespace wbansim::cli
{

namespace
{

// Traces written by `synth` for this set, if any.
std::optional<link::TraceSet> stored_traces(const fs::path &dir)
{
    if (!fs::is_directory(dir))
        return std::nullopt;
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    link::TraceSet traces;
    for (const auto &path : files)
    {
        auto trace = channel::load_trace(path);
        const auto id = trace.link();
        traces.emplace(id, std::move(trace));
    }
    return traces;
}

bool log_written(PacketLogs mode, link::Scheme scheme)
{
    return mode == PacketLogs::all || (mode == PacketLogs::single_link && scheme == link::Scheme::single_link);
}

} // namespace

void cmd_run(const Settings &settings, const fs::path &out, const std::string &config_name)
{
    const fs::path root = out / "run";
    Manifest manifest(root, "run", config_name, settings);
    const auto variants = settings.variants();
    const auto sets = settings.analysis_sets();

    parallel_for(
        variants.size() * sets.size(), settings.workers,
        [&](std::size_t task)
        {
            const auto &variant = variants[task / sets.size()];
            const auto &set = sets[task % sets.size()];
            link::TraceSet traces;
            if (settings.source == scenario::ChannelSource::traces)
                traces = load_measured_traces(settings, variant, set);
            else if (auto stored = stored_traces(out / "traces" / variant.name() / set_name(set)))
                traces = std::move(*stored);
            else
                traces = synthesize_traces(settings, variant, set);

            for (const auto &layout : settings.layouts(variant.hub))
            {
                const auto sc = make_scenario(settings, variant, layout, set, traces);
                const auto schedule = make_schedule(settings, sc, set, layout);
                const auto result = simulate_layout(settings, sc, traces, schedule);
                const auto dir = root / variant.name() / set_name(set) / layout.name;
                for (const auto &[scheme, streams] : result.series)
                {
                    for (const auto &series : streams)
                        write_file(dir / ("series_" + std::string(link::to_string(scheme)) + "_" + series.stream +
                                          ".csv"),
                                   [&](std::ostream &os) { write_series_csv(os, series, settings); });
                    if (log_written(settings.packet_logs, scheme))
                        write_file(dir / ("packets_" + std::string(link::to_string(scheme)) + ".csv"),
                                   [&](std::ostream &os)
                                   {
                                       write_provenance(os, settings);
                                       link::write_packet_log_csv(os, result.log.at(scheme));
                                   });
                }
                write_file(dir / "schedule.csv",
                           [&](std::ostream &os)
                           {
                               write_provenance(os, settings);
                               mac::write_schedule_csv(os, schedule);
                           });
            }
            manifest.complete_set(variant.name() + "/" + set_name(set));
        });
    manifest.finish();
}

} // namespace wbansim::cli
