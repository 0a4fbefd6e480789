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
#include "wbansim/mac.hpp"
#include "wbansim/scenario.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wbansim::link
{

/// Receiver noise power used throughout (receiver sensitivity at 2.4 GHz).
inline constexpr double default_noise_dbm = -95.0;

enum class Path
{
    direct,
    relay1,
    relay2
};

std::string_view to_string(Path path);

enum class Scheme
{
    single_link,
    opportunistic,
    selection_combining
};

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

/// Channel/interference state used for the relaying decision.
enum class DecisionBlock
{
    same,               ///< decide on the realized transmission states (ideal estimation)
    start_of_superframe ///< decide on the states at the superframe start
};

std::string_view to_string(DecisionBlock mode);
DecisionBlock parse_decision_block(std::string_view text);

/// Aggregate power of a set of sources in dBm; -inf for an empty set.
double sum_dbm(std::span<const double> powers_dbm);

/// signal / (noise + Σ interferers), all converted to mW; result in dB.
double compute_sinr(double signal_dbm, std::span<const double> interferer_powers_dbm,
                    double noise_dbm = default_noise_dbm);

/// Decode-and-forward path quality: the weaker hop.
double path_metric(double first_hop_db, double second_hop_db);

struct PathMetrics
{
    double direct_db = 0.0;
    double relay1_db = 0.0;
    double relay2_db = 0.0;

    double at(Path p) const;
};

/// Opportunistic relaying: argmax of the three path metrics. Ties go to
/// direct, then relay1.
Path select_path_or(const PathMetrics &metrics);

/// Selection combining over realized end-to-end copies, same tie rule.
Path select_path_sc(const PathMetrics &realized);

/// Transmissions spent on one packet: OR 1 (direct) or 2 (relay); SC always 3;
/// single-link 1.
int transmissions(Scheme scheme, Path chosen);

/// One reception: a single hop of a packet, as seen at its receiver.
struct PacketRecord
{
    double t = 0.0; ///< transmission instant, s
    std::string tx;
    std::string rx;
    double signal_power_dbm = 0.0;
    double interference_power_dbm = 0.0; ///< -inf when no interferer is active
    double noise_power_dbm = default_noise_dbm;
    double sinr_db = 0.0;
    Path chosen_path = Path::direct;
};

/// Time-ordered end-to-end packet SINR of one sensor stream under one scheme.
struct SinrSeries
{
    Scheme scheme = Scheme::single_link;
    std::string stream;       ///< sensor node name
    double dt_packet = 0.0;   ///< nominal packet cadence, s
    std::vector<double> times; ///< first-hop transmission instants, s
    std::vector<double> values; ///< dB
};

struct PacketOutcome
{
    double t_decision = 0.0;
    double t_transmit = 0.0;
    std::size_t sensor_index = 0;
    PathMetrics metrics;  ///< decision-time metrics
    PathMetrics realized; ///< realized end-to-end SINR of each path
    Path or_path = Path::direct;
    Path sc_path = Path::direct;
    double single_db = 0.0;
    double or_db = 0.0;
    double sc_db = 0.0;
};

struct ExperimentOptions
{
    DecisionBlock decision_block = DecisionBlock::start_of_superframe;
    double noise_dbm = default_noise_dbm;
};

using TraceSet = std::map<channel::LinkId, channel::ChannelTrace>;

struct ExperimentResult
{
    bool two_hop = false;
    std::vector<PacketOutcome> packets;
    std::map<Scheme, std::vector<SinrSeries>> series;
    std::map<Scheme, std::vector<PacketRecord>> log;

    /// All end-to-end values of a scheme in packet order.
    std::vector<double> pooled(Scheme scheme) const;
};

/// Packet-level simulation of the WBAN-of-interest (scenario.networks.front())
/// over every superframe in `schedule`.
///
/// Each hop is evaluated at the midpoint of its slot with block fading (the
/// trace sample containing that instant) and interference from every other
/// network's node transmitting at that instant. Relayed SINR is the minimum
/// over the two hops. The single-link series reuses the direct hop of the
/// same packet, so all schemes see identical channel and interference states.
ExperimentResult run_experiment(const scenario::ScenarioConfig &scenario, const TraceSet &traces,
                                const mac::SuperframeSchedule &schedule, const ExperimentOptions &options = {});

/// CSV `t_s,tx,rx,path,signal_dbm,interf_dbm,sinr_db`.
void write_packet_log_csv(std::ostream &out, std::span<const PacketRecord> records);

} // namespace wbansim::link
