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
#include "wbansim/mac.hpp"
#include "wbansim/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

namespace wbansim::cli
{

namespace
{

using channel::ChannelTrace;
using channel::LinkId;
using scenario::LinkKind;
using scenario::NodeId;

double trace_duration(const Settings &s) { return s.duration_s + 2.0 * s.sample_dt_s; }

// Links required by any layout of the set, with their kinds.
std::map<LinkId, scenario::RequiredLink> required_links(const Settings &s, const Variant &variant,
                                                        const scenario::AnalysisSet &set)
{
    std::map<LinkId, scenario::RequiredLink> out;
    for (const auto &layout : s.layouts(variant.hub))
    {
        const auto sc = scenario::build_scenario(s.networks(variant, layout, set), s.motion, variant.shadowing,
                                                 scenario::ChannelSource::synthetic);
        for (const auto &l : sc.links)
            out.emplace(l.id(), l);
    }
    return out;
}

bool overlaid_relay_link(const Settings &s, const scenario::RequiredLink &l)
{
    return s.overlay_relays && s.relay_mode == scenario::RelayMode::fixed_hips && l.kind == LinkKind::inter &&
           (l.rx.site == scenario::BodySite::left_hip || l.rx.site == scenario::BodySite::right_hip);
}

channel::Metadata provenance(const Settings &s, const Variant &variant, std::string kind)
{
    return {{"seed", std::to_string(s.seed)},
            {"config_hash", hash_hex(s.config_hash)},
            {"variant", variant.name()},
            {"kind", std::move(kind)}};
}

// Zero-mean slow component of an on-body trace.
ChannelTrace shadow_component(const ChannelTrace &onbody)
{
    std::vector<double> values;
    try
    {
        const auto large = channel::extract_large_scale(onbody);
        values.assign(large.samples().begin(), large.samples().end());
    }
    catch (const DegenerateInputError &)
    {
        values.assign(onbody.size(), 0.0);
    }
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(values.size());
    for (double &v : values)
        v -= mean;
    return ChannelTrace(onbody.link(), onbody.t0(), onbody.dt(), std::move(values));
}

ChannelTrace synth_onbody(const Settings &s, const NodeId &tx, const NodeId &rx)
{
    const auto id = scenario::link_between(tx, rx);
    const auto raw = channel::gen_onbody(scenario::onbody_mean_gain_db(tx.site, rx.site), s.onbody_shadow_std_db,
                                         s.onbody_coherence_s, s.onbody_fast_std_db, trace_duration(s), s.synth_dt_s,
                                         derive_seed(s.seed, "onbody:" + id.str()), id);
    return channel::resample(raw, s.sample_dt_s);
}

ChannelTrace synth_interbody(const Settings &s, const Variant &variant, const NodeId &tx, const NodeId &rx)
{
    const auto id = scenario::link_between(tx, rx);
    const auto distance = scenario::simulate_motion_periodic(s.motion, trace_duration(s), s.synth_dt_s);
    const auto raw = channel::gen_interbody(distance, s.fading, variant.shadowing, s.synth_dt_s,
                                            derive_seed(s.seed, "interbody:" + id.str()), id);
    return channel::resample(raw, s.sample_dt_s);
}

} // namespace

std::string set_name(const scenario::AnalysisSet &set)
{
    return "set_" + std::to_string(set.subject_of_interest) + "_" + std::to_string(set.interferer);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag)
{
    return fnv1a64(std::to_string(seed) + "/" + std::string(tag));
}

link::TraceSet synthesize_traces(const Settings &settings, const Variant &variant, const scenario::AnalysisSet &set)
{
    link::TraceSet out;
    const auto links = required_links(settings, variant, set);
    for (const auto &[id, l] : links)
    {
        if (l.kind == LinkKind::intra)
            out.emplace(id, synth_onbody(settings, l.tx, l.rx).with_metadata(provenance(settings, variant, "onbody")));
        else if (!overlaid_relay_link(settings, l))
            out.emplace(id, synth_interbody(settings, variant, l.tx, l.rx)
                                .with_metadata(provenance(settings, variant, "interbody")));
    }
    // Relay links of a fixed-relay WBAN: the interferer-to-hub channel plus the
    // slow component of the relay-to-hub on-body channel.
    for (const auto &[id, l] : links)
    {
        if (!overlaid_relay_link(settings, l))
            continue;
        const NodeId hub{l.rx.network, variant.hub};
        const auto base = synth_interbody(settings, variant, l.tx, hub);
        const auto shadow = shadow_component(synth_onbody(settings, l.rx, hub));
        out.emplace(id, channel::overlay(base, shadow).with_link(id).with_metadata(
                            provenance(settings, variant, "overlay")));
    }
    return out;
}

link::TraceSet load_measured_traces(const Settings &settings, const Variant &variant,
                                    const scenario::AnalysisSet &set)
{
    auto file_of = [&](const LinkId &id) { return settings.trace_dir / (id.source + "__" + id.destination + ".csv"); };
    auto load = [&](const LinkId &id, LinkKind kind) -> std::optional<ChannelTrace>
    {
        const auto path = file_of(id);
        if (!fs::exists(path))
            return std::nullopt;
        auto trace = channel::resample(channel::load_trace(path, id), settings.sample_dt_s);
        if (kind == LinkKind::inter)
            trace = channel::apply_shadowing(trace, variant.shadowing, settings.fading);
        return trace;
    };

    link::TraceSet out;
    for (const auto &[id, l] : required_links(settings, variant, set))
    {
        if (auto trace = load(id, l.kind))
        {
            out.emplace(id, std::move(*trace));
            continue;
        }
        if (!overlaid_relay_link(settings, l))
            continue; // reported by build_scenario
        const NodeId hub{l.rx.network, variant.hub};
        auto base = load(scenario::link_between(l.tx, hub), LinkKind::inter);
        auto onbody = load(scenario::link_between(l.rx, hub), LinkKind::intra);
        if (base && onbody)
            out.emplace(id, channel::overlay(*base, shadow_component(*onbody)).with_link(id));
    }
    return out;
}

scenario::ScenarioConfig make_scenario(const Settings &settings, const Variant &variant, const Layout &layout,
                                       const scenario::AnalysisSet &set, const link::TraceSet &traces)
{
    std::vector<LinkId> available;
    for (const auto &[id, trace] : traces)
        available.push_back(id);
    return scenario::build_scenario(settings.networks(variant, layout, set), settings.motion, variant.shadowing,
                                    settings.source, available);
}

mac::SuperframeSchedule make_schedule(const Settings &settings, const scenario::ScenarioConfig &scenario,
                                      const scenario::AnalysisSet &set, const Layout &layout)
{
    std::vector<mac::NetworkFrame> frames;
    for (const auto &net : scenario.networks)
        frames.push_back({net.network_id, mac::build_superframe(net, settings.slot_s)});
    return mac::schedule_networks(frames, settings.duration_s,
                                  derive_seed(settings.seed, "schedule:" + set_name(set) + "/" + layout.name));
}

link::ExperimentResult simulate_layout(const Settings &settings, const scenario::ScenarioConfig &scenario,
                                       const link::TraceSet &traces, const mac::SuperframeSchedule &schedule)
{
    link::ExperimentOptions options;
    options.decision_block = settings.decision_block;
    options.noise_dbm = settings.noise_dbm;
    return link::run_experiment(scenario, traces, schedule, options);
}

std::map<link::Scheme, std::vector<double>> pooled_variant_sinr(const Settings &settings, const Variant &variant)
{
    const auto sets = settings.analysis_sets();
    std::vector<std::map<link::Scheme, std::vector<double>>> parts(sets.size());
    parallel_for(sets.size(), settings.workers,
                 [&](std::size_t i)
                 {
                     const auto traces = settings.source == scenario::ChannelSource::traces
                                             ? load_measured_traces(settings, variant, sets[i])
                                             : synthesize_traces(settings, variant, sets[i]);
                     for (const auto &layout : settings.layouts(variant.hub))
                     {
                         const auto sc = make_scenario(settings, variant, layout, sets[i], traces);
                         const auto result =
                             simulate_layout(settings, sc, traces, make_schedule(settings, sc, sets[i], layout));
                         for (const auto &[scheme, series] : result.series)
                         {
                             const auto values = result.pooled(scheme);
                             auto &dst = parts[i][scheme];
                             dst.insert(dst.end(), values.begin(), values.end());
                         }
                     }
                 });
    std::map<link::Scheme, std::vector<double>> out;
    for (const auto &part : parts)
        for (const auto &[scheme, values] : part)
            out[scheme].insert(out[scheme].end(), values.begin(), values.end());
    return out;
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &task)
{
    const std::size_t threads = std::max<std::size_t>(1, std::min(workers, n));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]
    {
        while (!failed.load())
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                task(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed.store(true);
            }
        }
    };
    if (threads == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace wbansim::cli
