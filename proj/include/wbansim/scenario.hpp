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

#pragma once

#include "wbansim/channel.hpp"

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wbansim::scenario
{

/// Channel-sounder locations on the body.
enum class BodySite
{
    chest,
    left_hip,
    right_hip,
    left_ankle,
    right_ankle,
    left_wrist,
    right_wrist,
    left_upper_arm,
    head,
    back
};

std::string_view to_string(BodySite site);
BodySite parse_body_site(std::string_view text);
std::span<const BodySite> all_body_sites();

/// Mean on-body gain between two sites for the synthetic on-body generator.
/// Distance-based (exponent 3 re 10 cm) with a 15 dB penalty for front-to-back links.
double onbody_mean_gain_db(BodySite a, BodySite b);

enum class RelayMode
{
    varying,    ///< the idle sensors relay for the active one
    fixed_hips, ///< dedicated relays at the left and right hips
    none        ///< single-link star
};

std::string_view to_string(RelayMode mode);
RelayMode parse_relay_mode(std::string_view text);

/// A node is identified by its network and its body site; sites are unique per body.
struct NodeId
{
    int network = 0;
    BodySite site = BodySite::chest;

    auto operator<=>(const NodeId &) const = default;

    /// "<network>.<site>", e.g. "1.left_hip"
    std::string name() const;
};

channel::LinkId link_between(const NodeId &tx, const NodeId &rx);

struct WbanConfig
{
    int network_id = 0;
    BodySite hub_site = BodySite::chest;
    std::vector<BodySite> sensor_sites;
    RelayMode relay_mode = RelayMode::none;
    double tx_power_dbm = 0.0;

    void validate() const;

    bool two_hop() const noexcept { return relay_mode != RelayMode::none; }
    NodeId hub() const { return {network_id, hub_site}; }
    NodeId sensor(std::size_t index) const;
    std::vector<NodeId> sensors() const;

    /// The two candidate relays for the sensor transmitting in slot `index`.
    /// fixed_hips: {left_hip, right_hip}; varying: the next two sensors in slot order.
    std::array<NodeId, 2> relay_candidates(std::size_t index) const;

    /// Node that transmits in the forwarding sub-slot of sensor `index` when this
    /// network acts as an interferer (its own path choice is not simulated).
    NodeId interfering_forwarder(std::size_t index) const;

    /// Every node that can act as a relay (empty for single-link).
    std::vector<NodeId> relays() const;

    /// Nodes that decode packets of this network: the hub plus every relay.
    std::vector<NodeId> receivers() const;

    /// Nodes that transmit when this network interferes: sensors plus forwarders.
    std::vector<NodeId> interfering_transmitters() const;
};

struct MotionModel
{
    double corridor_length = 6.0; ///< m
    double corridor_width = 0.5;  ///< m, lateral offset when passing
    double walking_speed = 1.2;   ///< m/s, each subject
    double min_separation = 0.5;  ///< m

    void validate() const;

    /// Time for one approach-pass-separate sequence, corridor_length / walking_speed.
    double pass_duration() const { return corridor_length / walking_speed; }
};

struct AnalysisSet
{
    int subject_of_interest = 0;
    int interferer = 0;

    auto operator<=>(const AnalysisSet &) const = default;
};

/// Cross product of subjects-of-interest with all subjects, minus self pairs,
/// ordered by subject-of-interest then interferer (input order).
std::vector<AnalysisSet> enumerate_analysis_sets(std::span<const int> subjects_of_interest,
                                                 std::span<const int> all_subjects);

/// Inter-subject distance at time `t` of a single pass. Subjects start at the
/// two corridor ends, walk toward each other, pass and stop at the far ends.
double motion_distance(const MotionModel &model, double t);

/// One pass sampled every `dt` for `duration` (floor(duration/dt) samples).
std::vector<double> simulate_motion(const MotionModel &model, double duration, double dt);

/// Passes repeated back to back, for runs longer than one pass.
std::vector<double> simulate_motion_periodic(const MotionModel &model, double duration, double dt);

enum class ChannelSource
{
    synthetic,
    traces
};

std::string_view to_string(ChannelSource source);
ChannelSource parse_channel_source(std::string_view text);

enum class LinkKind
{
    intra, ///< within the WBAN-of-interest
    inter  ///< interfering transmitter to a victim receiver
};

struct RequiredLink
{
    NodeId tx;
    NodeId rx;
    LinkKind kind = LinkKind::intra;

    channel::LinkId id() const { return link_between(tx, rx); }
};

/// Validated scenario. networks.front() is the WBAN-of-interest.
struct ScenarioConfig
{
    std::vector<WbanConfig> networks;
    std::optional<MotionModel> motion;
    channel::ShadowingLevel shadowing = channel::ShadowingLevel::full;
    ChannelSource source = ChannelSource::synthetic;
    std::vector<RequiredLink> links;

    const WbanConfig &interest() const { return networks.front(); }
    const WbanConfig &network(int id) const;
    bool requires_link(const channel::LinkId &link) const;
};

/// Validates the networks and enumerates every link the experiment engine reads.
/// With `source == traces`, each required link must be listed in `available`.
ScenarioConfig build_scenario(std::vector<WbanConfig> configs, std::optional<MotionModel> motion,
                              channel::ShadowingLevel shadowing, ChannelSource source,
                              std::span<const channel::LinkId> available = {});

} // namespace wbansim::scenario
