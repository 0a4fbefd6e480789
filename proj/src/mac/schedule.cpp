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
#include "wbansim/mac.hpp"
#include "wbansim/numeric.hpp"

#include <algorithm>
#include <ostream>

namespace wbansim::mac
{

SuperframeSchedule::SuperframeSchedule(std::vector<Cycle> cycles, std::vector<int> network_ids, double td,
                                       double duration)
    : cycles_(std::move(cycles)), network_ids_(std::move(network_ids)), td_(td),
      t_idle_(static_cast<double>(network_ids_.size() - 1) * td), duration_(duration),
      by_network_(network_ids_.size())
{
    for (std::size_t c = 0; c < cycles_.size(); ++c)
    {
        const auto it = std::find(network_ids_.begin(), network_ids_.end(), cycles_[c].network_id);
        if (it == network_ids_.end())
            throw ParameterError("cycle references unknown network " + std::to_string(cycles_[c].network_id));
        by_network_[static_cast<std::size_t>(it - network_ids_.begin())].push_back(c);
    }
    for (auto &idx : by_network_)
        std::sort(idx.begin(), idx.end(),
                  [this](std::size_t a, std::size_t b) { return cycles_[a].cycle_start < cycles_[b].cycle_start; });
}

std::vector<const Cycle *> SuperframeSchedule::cycles_of(int network_id) const
{
    std::vector<const Cycle *> out;
    const auto it = std::find(network_ids_.begin(), network_ids_.end(), network_id);
    if (it == network_ids_.end())
        return out;
    for (auto c : by_network_[static_cast<std::size_t>(it - network_ids_.begin())])
        out.push_back(&cycles_[c]);
    return out;
}

std::vector<Transmission> SuperframeSchedule::transmitting_at(double t) const
{
    std::vector<Transmission> out;
    for (const auto &idx : by_network_)
    {
        // Cycles of one network are disjoint, so only the latest cycle starting at or before t can hold it.
        auto it = std::upper_bound(idx.begin(), idx.end(), t,
                                   [this](double v, std::size_t c) { return v < cycles_[c].cycle_start; });
        if (it == idx.begin())
            continue;
        const auto &cycle = cycles_[*std::prev(it)];
        for (const auto &s : cycle.slots)
            if (s.contains(t))
                out.push_back({s.network_id, s.node_id, s.sensor_index, s.hop});
    }
    return out;
}

namespace
{

std::vector<Cycle> draw_cycles(std::size_t index, int network_id, std::span<const SlotAssignment> slots,
                               std::size_t nc, double td, double duration, std::uint64_t seed)
{
    const double t_idle = static_cast<double>(nc - 1) * td;
    const double period = td + t_idle;
    auto rng = make_rng(seed, {0x5343484544ull, index});
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Cycle> out;
    for (std::size_t w = 0;; ++w)
    {
        const double ws = static_cast<double>(w) * period;
        if (ws + td > duration * (1.0 + 1e-12))
            break;
        const double hi = std::min(ws + t_idle, duration - td);
        const double start = ws + unit(rng) * std::max(hi - ws, 0.0);
        Cycle c{network_id, ws, start, {}};
        for (const auto &s : slots)
        {
            SlotAssignment a = s;
            a.slot_start += start;
            c.slots.push_back(std::move(a));
        }
        out.push_back(std::move(c));
    }
    return out;
}

void check_inputs(std::size_t nc, double td, double duration)
{
    if (nc == 0)
        throw ParameterError("at least one network is required");
    if (!(td > 0.0))
        throw ParameterError("superframe length Td must be positive");
    if (!(duration >= td))
        throw ParameterError("simulation duration shorter than one superframe");
}

} // namespace

SuperframeSchedule schedule_cycles(std::size_t nc, double td, double duration, std::uint64_t seed)
{
    check_inputs(nc, td, duration);
    std::vector<Cycle> cycles;
    std::vector<int> ids;
    for (std::size_t n = 0; n < nc; ++n)
    {
        ids.push_back(static_cast<int>(n));
        auto c = draw_cycles(n, static_cast<int>(n), {}, nc, td, duration, seed);
        cycles.insert(cycles.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    }
    return SuperframeSchedule(std::move(cycles), std::move(ids), td, duration);
}

SuperframeSchedule schedule_networks(std::span<const NetworkFrame> frames, double duration, std::uint64_t seed)
{
    double td = 0.0;
    for (const auto &f : frames)
        td = std::max(td, superframe_length(f.slots));
    check_inputs(frames.size(), td, duration);

    std::vector<Cycle> cycles;
    std::vector<int> ids;
    for (std::size_t n = 0; n < frames.size(); ++n)
    {
        if (std::find(ids.begin(), ids.end(), frames[n].network_id) != ids.end())
            throw ParameterError("duplicate network id " + std::to_string(frames[n].network_id));
        ids.push_back(frames[n].network_id);
        auto c = draw_cycles(n, frames[n].network_id, frames[n].slots, frames.size(), td, duration, seed);
        cycles.insert(cycles.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    }
    return SuperframeSchedule(std::move(cycles), std::move(ids), td, duration);
}

std::vector<Transmission> transmitting_at(const SuperframeSchedule &schedule, double t)
{
    return schedule.transmitting_at(t);
}

void write_schedule_csv(std::ostream &out, const SuperframeSchedule &schedule)
{
    out << "network_id,node_id,hop,slot_start_s,slot_len_s\n";
    for (const auto &c : schedule.cycles())
        for (const auto &s : c.slots)
            out << s.network_id << ',' << s.node_id << ',' << to_string(s.hop) << ',' << format_double(s.slot_start)
                << ',' << format_double(s.slot_len) << '\n';
}

} // namespace wbansim::mac
