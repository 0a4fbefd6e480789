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

#include "wbansim/errors.hpp"
#include "wbansim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wbansim::scenario
{

std::string_view to_string(RelayMode mode)
{
    switch (mode)
    {
    case RelayMode::varying:
        return "varying";
    case RelayMode::fixed_hips:
        return "fixed_hips";
    case RelayMode::none:
        return "none";
    }
    return "none";
}

RelayMode parse_relay_mode(std::string_view text)
{
    if (text == "varying")
        return RelayMode::varying;
    if (text == "fixed_hips")
        return RelayMode::fixed_hips;
    if (text == "none")
        return RelayMode::none;
    throw ParameterError("unknown relay mode '" + std::string(text) + "'");
}

std::string_view to_string(ChannelSource source)
{
    return source == ChannelSource::synthetic ? "synthetic" : "traces";
}

ChannelSource parse_channel_source(std::string_view text)
{
    if (text == "synthetic")
        return ChannelSource::synthetic;
    if (text == "traces")
        return ChannelSource::traces;
    throw ParameterError("unknown channel source '" + std::string(text) + "'");
}

void WbanConfig::validate() const
{
    const std::string who = "network " + std::to_string(network_id);
    if (sensor_sites.empty())
        throw ValidationError(who + ": no sensors");
    std::set<BodySite> seen;
    for (auto s : sensor_sites)
    {
        if (s == hub_site)
            throw ValidationError(who + ": sensor placed at the hub site " + std::string(to_string(s)));
        if (!seen.insert(s).second)
            throw ValidationError(who + ": duplicate sensor site " + std::string(to_string(s)));
    }
    if (relay_mode == RelayMode::fixed_hips)
    {
        for (auto hip : {BodySite::left_hip, BodySite::right_hip})
            if (hub_site == hip || seen.count(hip))
                throw ValidationError(who + ": fixed_hips mode reserves " + std::string(to_string(hip)) +
                                      " for a relay");
    }
    if (relay_mode == RelayMode::varying && sensor_sites.size() < 3)
        throw ValidationError(who + ": varying relay mode needs at least 3 sensors");
    if (!std::isfinite(tx_power_dbm))
        throw ValidationError(who + ": tx power must be finite");
}

NodeId WbanConfig::sensor(std::size_t index) const { return {network_id, sensor_sites.at(index)}; }

std::vector<NodeId> WbanConfig::sensors() const
{
    std::vector<NodeId> out;
    for (auto s : sensor_sites)
        out.push_back({network_id, s});
    return out;
}

std::array<NodeId, 2> WbanConfig::relay_candidates(std::size_t index) const
{
    switch (relay_mode)
    {
    case RelayMode::fixed_hips:
        return {NodeId{network_id, BodySite::left_hip}, NodeId{network_id, BodySite::right_hip}};
    case RelayMode::varying:
    {
        const std::size_t n = sensor_sites.size();
        return {sensor((index + 1) % n), sensor((index + 2) % n)};
    }
    case RelayMode::none:
        break;
    }
    throw ParameterError("network " + std::to_string(network_id) + " has no relays");
}

NodeId WbanConfig::interfering_forwarder(std::size_t index) const { return relay_candidates(index)[0]; }

std::vector<NodeId> WbanConfig::relays() const
{
    switch (relay_mode)
    {
    case RelayMode::fixed_hips:
        return {NodeId{network_id, BodySite::left_hip}, NodeId{network_id, BodySite::right_hip}};
    case RelayMode::varying:
        return sensors();
    case RelayMode::none:
        break;
    }
    return {};
}

std::vector<NodeId> WbanConfig::receivers() const
{
    std::vector<NodeId> out{hub()};
    for (const auto &r : relays())
        out.push_back(r);
    return out;
}

std::vector<NodeId> WbanConfig::interfering_transmitters() const
{
    std::vector<NodeId> out = sensors();
    if (two_hop())
    {
        for (std::size_t i = 0; i < sensor_sites.size(); ++i)
        {
            const auto f = interfering_forwarder(i);
            if (std::find(out.begin(), out.end(), f) == out.end())
                out.push_back(f);
        }
    }
    return out;
}

std::vector<AnalysisSet> enumerate_analysis_sets(std::span<const int> subjects_of_interest,
                                                 std::span<const int> all_subjects)
{
    auto distinct = [](std::span<const int> ids)
    { return std::set<int>(ids.begin(), ids.end()).size() == ids.size(); };
    if (!distinct(subjects_of_interest) || !distinct(all_subjects))
        throw ParameterError("subject ids must be distinct");

    std::vector<AnalysisSet> out;
    for (int soi : subjects_of_interest)
        for (int other : all_subjects)
            if (other != soi)
                out.push_back({soi, other});
    return out;
}

const WbanConfig &ScenarioConfig::network(int id) const
{
    for (const auto &n : networks)
        if (n.network_id == id)
            return n;
    throw ParameterError("unknown network " + std::to_string(id));
}

bool ScenarioConfig::requires_link(const channel::LinkId &link) const
{
    return std::any_of(links.begin(), links.end(), [&](const RequiredLink &l) { return l.id() == link; });
}

ScenarioConfig build_scenario(std::vector<WbanConfig> configs, std::optional<MotionModel> motion,
                              channel::ShadowingLevel shadowing, ChannelSource source,
                              std::span<const channel::LinkId> available)
{
    if (configs.empty())
        throw ValidationError("scenario has no networks");
    std::set<int> ids;
    for (const auto &c : configs)
    {
        c.validate();
        if (!ids.insert(c.network_id).second)
            throw ValidationError("duplicate network_id " + std::to_string(c.network_id));
    }
    if (motion)
        motion->validate();

    ScenarioConfig sc;
    sc.networks = std::move(configs);
    sc.motion = motion;
    sc.shadowing = shadowing;
    sc.source = source;

    std::set<std::pair<NodeId, NodeId>> seen;
    auto add = [&](const NodeId &tx, const NodeId &rx, LinkKind kind)
    {
        if (seen.insert({tx, rx}).second)
            sc.links.push_back({tx, rx, kind});
    };

    const auto &w = sc.interest();
    for (std::size_t i = 0; i < w.sensor_sites.size(); ++i)
    {
        const auto s = w.sensor(i);
        add(s, w.hub(), LinkKind::intra);
        if (w.two_hop())
        {
            for (const auto &r : w.relay_candidates(i))
            {
                add(s, r, LinkKind::intra);
                add(r, w.hub(), LinkKind::intra);
            }
        }
    }

    const auto victims = w.receivers();
    for (std::size_t n = 1; n < sc.networks.size(); ++n)
        for (const auto &x : sc.networks[n].interfering_transmitters())
            for (const auto &v : victims)
                add(x, v, LinkKind::inter);

    if (source == ChannelSource::traces)
    {
        for (const auto &l : sc.links)
        {
            const auto id = l.id();
            if (std::find(available.begin(), available.end(), id) == available.end())
                throw ValidationError("missing trace for required link " + id.str());
        }
    }
    return sc;
}

} // namespace wbansim::scenario
