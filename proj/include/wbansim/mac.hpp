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

#include "wbansim/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wbansim::mac
{

enum class Hop
{
    first,  ///< sensor transmission
    second  ///< forwarding sub-slot of the same sensor's packet
};

std::string_view to_string(Hop hop);

/// One transmission slot. `node_id` names the sensor whose packet occupies the
/// slot; in a forwarding sub-slot the actual transmitter is a relay chosen later.
struct SlotAssignment
{
    int network_id = 0;
    std::string node_id;
    std::size_t sensor_index = 0;
    double slot_start = 0.0; ///< s; relative in a superframe, absolute in a schedule
    double slot_len = 0.0;   ///< s
    Hop hop = Hop::first;

    double slot_end() const noexcept { return slot_start + slot_len; }
    bool contains(double t) const noexcept { return t >= slot_start && t < slot_end(); }
};

/// Intra-WBAN TDMA superframe with relative slot times starting at 0. Each
/// sensor sends one packet; two-hop modes add an equal-length forwarding
/// sub-slot right after each sensor slot. The beacon takes no time.
std::vector<SlotAssignment> build_superframe(const scenario::WbanConfig &config, double slot_len);

/// Length of a superframe (end of its last slot).
double superframe_length(std::span<const SlotAssignment> slots);

/// A network's superframe template for scheduling.
struct NetworkFrame
{
    int network_id = 0;
    std::vector<SlotAssignment> slots; ///< relative times
};

struct Cycle
{
    int network_id = 0;
    double window_start = 0.0; ///< s
    double cycle_start = 0.0;  ///< s
    std::vector<SlotAssignment> slots; ///< absolute times
};

struct Transmission
{
    int network_id = 0;
    std::string node_id;
    std::size_t sensor_index = 0;
    Hop hop = Hop::first;

    auto operator<=>(const Transmission &) const = default;
};

/// Non-coordinated inter-WBAN TDMA: every network repeats windows of length
/// Td + T_idle = Nc·Td and draws its cycle start uniformly in
/// [window_start, window_start + T_idle], independently per window.
class SuperframeSchedule
{
public:
    SuperframeSchedule(std::vector<Cycle> cycles, std::vector<int> network_ids, double td, double duration);

    const std::vector<Cycle> &cycles() const noexcept { return cycles_; }
    const std::vector<int> &network_ids() const noexcept { return network_ids_; }
    std::size_t network_count() const noexcept { return network_ids_.size(); }
    double td() const noexcept { return td_; }
    double t_idle() const noexcept { return t_idle_; }
    double period() const noexcept { return td_ + t_idle_; }
    double duration() const noexcept { return duration_; }

    /// Cycles of one network in time order.
    std::vector<const Cycle *> cycles_of(int network_id) const;

    /// Every slot whose span [start, start + len) contains `t`.
    std::vector<Transmission> transmitting_at(double t) const;

private:
    std::vector<Cycle> cycles_;
    std::vector<int> network_ids_;
    double td_;
    double t_idle_;
    double duration_;
    // Per network: indices into cycles_, ordered by cycle_start.
    std::vector<std::vector<std::size_t>> by_network_;
};

/// Schedules `nc` networks (ids 0..nc-1) without slot contents.
SuperframeSchedule schedule_cycles(std::size_t nc, double td, double duration, std::uint64_t seed);

/// Schedules the given networks; Td is the longest of their superframes.
SuperframeSchedule schedule_networks(std::span<const NetworkFrame> frames, double duration, std::uint64_t seed);

/// Free-function form of SuperframeSchedule::transmitting_at.
std::vector<Transmission> transmitting_at(const SuperframeSchedule &schedule, double t);

/// CSV `network_id,node_id,hop,slot_start_s,slot_len_s`, one row per slot.
void write_schedule_csv(std::ostream &out, const SuperframeSchedule &schedule);

} // namespace wbansim::mac
